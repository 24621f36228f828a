#include "qshelf/shelves.hpp"

#include <string>
#include <utility>

namespace qshelf {

namespace {

std::string index_str(const ShelfIndex& w) {
  return "(k=" + std::to_string(w.k) + ", j=" + std::to_string(w.j) +
         ", i=" + std::to_string(w.i) + ")";
}

void check_build_args(int k, int j_max, Exp N) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (j_max < 0) throw std::invalid_argument("j_max must be >= 0");
  if (N < 0) throw std::invalid_argument("order must be >= 0");
}

}  // namespace

RecursionFailedError::RecursionFailedError(ShelfIndex w, Exp e, Int c)
    : std::runtime_error("recursion failed at " + index_str(w) +
                         ": coefficient " + c.str() + " at q^" +
                         std::to_string(e) + " blocks the strict division"),
      where(w),
      exponent(e),
      coefficient(std::move(c)) {}

ShelfTable::ShelfTable(int k, int j_max, Exp order)
    : k_(k), j_max_(j_max), order_(order) {}

const Series& ShelfTable::official(long long r) const {
  auto it = officials_.find(r);
  if (it == officials_.end())
    throw std::out_of_range("official r=" + std::to_string(r) +
                            " not in table");
  return it->second;
}

const Series& ShelfTable::ghost(long long r) const {
  auto it = ghosts_.find(r);
  if (it == ghosts_.end())
    throw std::out_of_range("ghost r=" + std::to_string(r) + " not in table");
  return it->second;
}

Provenance ShelfTable::official_provenance(long long r) const {
  official(r);
  return official_prov_.at(r);
}

Provenance ShelfTable::ghost_provenance(long long r) const {
  ghost(r);
  return ghost_prov_.at(r);
}

void ShelfTable::set_official(long long r, Series s, Provenance p) {
  officials_.insert_or_assign(r, std::move(s));
  official_prov_.insert_or_assign(r, p);
}

void ShelfTable::set_ghost(long long r, Series s, Provenance p) {
  ghosts_.insert_or_assign(r, std::move(s));
  ghost_prov_.insert_or_assign(r, p);
}

ShelfTable build_by_recursion(int k, int j_max, Exp N, const Fault* fault) {
  check_build_args(k, j_max, N);
  // Each step to shelf j+1 divides by q^{(j+1)(i-1)} <= q^{(j+1)(k-1)}, so
  // the worst chain loses (k-1) j_max (j_max+1)/2 orders; build above N by
  // that much and truncate at the end.
  Exp M = N + static_cast<Exp>(k - 1) * j_max * (j_max + 1) / 2;

  ShelfTable table(k, j_max, N);
  for (int i = 1; i <= k; ++i)
    table.set_official(i, product_side(k, i, M), Provenance::product_side);

  for (int j = 0; j <= j_max; ++j) {
    const long long base = static_cast<long long>(k - 1) * j;
    for (int i = 2; i <= k; ++i) {
      Series num = i < k ? table.official(base + i - 1) +
                               table.official(base + i + 1).shifted(j + 1)
                         : table.official(base + k - 1);
      Series g = unit_div(num, binomial(1, j + 1, num.order()));
      if (fault && fault->stage == Fault::Stage::recursion_ghost &&
          fault->r == base + i)
        g = g + Series::monomial(fault->delta, fault->exponent, g.order());
      table.set_ghost(base + i, std::move(g), Provenance::recursion);
    }
    if (j == j_max) break;
    for (int i = 2; i <= k; ++i) {
      Series num =
          table.official(base + k - i + 1) - table.ghost(base + k - i + 2);
      Exp m = static_cast<Exp>(j + 1) * (i - 1);
      try {
        Series b = div_qpow(num, m, DivMode::strict);
        table.set_official(base + (k - 1) + i, std::move(b),
                           Provenance::recursion);
      } catch (const NotDivisibleError& e) {
        throw RecursionFailedError({k, j + 1, i}, e.exponent, e.coefficient);
      }
    }
  }

  const auto offs = table.officials();
  for (const auto& [r, s] : offs)
    table.set_official(r, s.truncated(N), table.official_provenance(r));
  const auto ghs = table.ghosts();
  for (const auto& [r, s] : ghs)
    table.set_ghost(r, s.truncated(N), table.ghost_provenance(r));
  return table;
}

Series closed_form_official(int k, int j, int i, Exp N) {
  if (k < 2 || j < 0 || i < 1 || i > k)
    throw std::invalid_argument("closed_form_official: bad (k, j, i)");
  Series num = Series::zero(N);
  for (long long n = 0;; ++n) {
    Exp lead = static_cast<Exp>(k) * n * n;
    if (lead > N) break;
    Exp e = lead + (static_cast<Exp>(k - 1) * j + i - 1) * n;
    Series term = Series::monomial(n % 2 == 0 ? 1 : -1, e, N);
    term = mul_binomial(term, -1, (2 * n + j + 1) * static_cast<Exp>(k - i + 1));
    for (int t = 1; t <= j; ++t) term = mul_binomial(term, -1, 2 * (n + t));
    num = num + term;
  }
  num = unit_div(num, euler_infty(N));
  for (int t = 1; t <= j; ++t) num = unit_div(num, binomial(1, t, N));
  return num;
}

Series closed_form_ghost(int k, int j, int i, Exp N) {
  if (k < 2 || j < 0 || i < 2 || i > k)
    throw std::invalid_argument("closed_form_ghost: bad (k, j, i)");
  Series num = Series::zero(N);
  for (long long n = 0;; ++n) {
    Exp lead = static_cast<Exp>(k) * n * n;
    if (lead > N) break;
    Exp e = lead + (static_cast<Exp>(k - 1) * j + i - 2) * n;
    Series term = Series::monomial(n % 2 == 0 ? 1 : -1, e, N);
    for (int t = 1; t <= j; ++t) term = mul_binomial(term, -1, 2 * (n + t));
    term = mul_binomial(term, 1, 2 * n + j + 1);
    term = mul_binomial(term, -1, (2 * n + j + 1) * static_cast<Exp>(k - i + 1));
    num = num + term;
  }
  num = unit_div(num, euler_infty(N));
  for (int t = 1; t <= j + 1; ++t) num = unit_div(num, binomial(1, t, N));
  return num;
}

bool edge_match_check(int k, int j, Exp N) {
  if (j < 1) throw std::invalid_argument("edge_match_check needs j >= 1");
  return closed_form_official(k, j - 1, k, N) ==
         closed_form_official(k, j, 1, N);
}

EHReport eh_check(const ShelfTable& table, int j, int i, EHStrength strength,
                  bool ghost) {
  const int k = table.k();
  const Exp N = table.order();
  if (N < j + 2) throw OrderTooLowError("eh_check needs order >= j+2");
  const long long r = static_cast<long long>(k - 1) * j + i;
  const Series& s = ghost ? table.ghost(r) : table.official(r);

  EHReport rep;
  rep.k = k;
  rep.j = j;
  rep.i = i;
  rep.ghost = ghost;
  rep.strength = strength;

  Series d = s - Series::one(N);
  rep.f = d.is_zero() ? N + 1 : d.valuation();
  const Exp threshold = i == k ? j + 2 : j + 1;
  switch (strength) {
    case EHStrength::weak:
      rep.leading = rep.f <= N ? d.coeff(rep.f) : Int(0);
      rep.pass = rep.f >= 1;
      break;
    case EHStrength::standard:
      rep.leading = s.coeff(threshold);
      rep.pass = rep.f >= threshold;
      break;
    case EHStrength::strong:
      rep.leading = s.coeff(threshold);
      rep.pass = rep.f >= threshold && rep.leading == 1;
      break;
  }
  return rep;
}

Series ghost_extension_b1(const ShelfTable& table) { return table.official(2); }

bool ghost_decomposition_check(int k, int J, int i, Exp N) {
  if (J < 0 || i < 2 || i > k)
    throw std::invalid_argument("ghost_decomposition_check: bad (k, J, i)");
  Series lhs = closed_form_ghost(k, J, i, N);
  if (i == k) return lhs == closed_form_official(k, J + 1, 2, N);
  Series rhs =
      closed_form_official(k, J + 1, k - i + 2, N)
          .shifted(static_cast<Exp>(J + 1) * (k - i)) +
      closed_form_official(k, J, i + 1, N);
  return lhs == rhs;
}

nlohmann::json table_to_json(const ShelfTable& table) {
  nlohmann::json j;
  j["k"] = table.k();
  j["order"] = table.order();
  nlohmann::json offs = nlohmann::json::object();
  for (const auto& [r, s] : table.officials())
    offs[std::to_string(r)] = series_to_json(s);
  nlohmann::json ghs = nlohmann::json::object();
  for (const auto& [r, s] : table.ghosts())
    ghs[std::to_string(r)] = series_to_json(s);
  j["officials"] = std::move(offs);
  j["ghosts"] = std::move(ghs);
  return j;
}

}  // namespace qshelf
