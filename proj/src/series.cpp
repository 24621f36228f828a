#include <qshelf/series.hpp>

#include <algorithm>
#include <sstream>

namespace qshelf {

namespace {

Exp effective_valuation(const Series& s) {
  return s.is_zero() ? s.order() + 1 : s.valuation();
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
  const Exp order = std::min(a.order(), b.order());
  const Exp lo = std::min(effective_valuation(a), effective_valuation(b));
  if (lo > order) return Series::zero(order);
  std::vector<Int> c(static_cast<size_t>(order - lo + 1));
  for (Exp e = lo; e <= order; ++e)
    c[static_cast<size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
  return Series(lo, std::move(c), order);
}

Series operator-(const Series& a) {
  Series s(a);
  for (Int& x : s.c_) x = -x;
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  const Exp va = effective_valuation(a);
  const Exp vb = effective_valuation(b);
  const Exp order = std::min(a.order() + vb, b.order() + va);
  if (a.is_zero() || b.is_zero() || va + vb > order) return Series::zero(order);
  std::vector<Int> c(static_cast<size_t>(order - va - vb + 1));
  const Exp ea_hi = std::min(a.order(), order - vb);
  for (Exp ea = va; ea <= ea_hi; ++ea) {
    const Int& ca = a.coeff(ea);
    if (ca == 0) continue;
    const Exp eb_hi = std::min(b.order(), order - ea);
    for (Exp eb = vb; eb <= eb_hi; ++eb) {
      const Int& cb = b.coeff(eb);
      if (cb == 0) continue;
      c[static_cast<size_t>(ea + eb - va - vb)] += ca * cb;
    }
  }
  return Series(va + vb, std::move(c), order);
}

Series unit_div(const Series& a, const Series& b) {
  if (b.is_zero()) throw NotAUnitError();
  const Exp vb = b.valuation();
  const Int& lead = b.coeff(vb);
  if (lead != 1 && lead != -1) throw NotAUnitError();
  const Exp va = effective_valuation(a);
  if (a.is_zero()) return Series::zero(a.order() - vb);
  // work with the unit u = b shifted to valuation 0 and alpha = a likewise
  const Exp steps = std::min(a.order() - va, b.order() - vb);
  if (steps < 0) return Series::zero(a.order() - vb);
  std::vector<Int> g(static_cast<size_t>(steps + 1));
  for (Exp t = 0; t <= steps; ++t) {
    Int acc = a.coeff(va + t);
    for (Exp s = 1; s <= t; ++s) {
      const Int& us = b.coeff(vb + s);
      if (us != 0) acc -= us * g[static_cast<size_t>(t - s)];
    }
    g[static_cast<size_t>(t)] = (lead == 1) ? acc : Int(-acc);
  }
  return Series(va - vb, std::move(g), va - vb + steps);
}

Series div_qpow(const Series& a, Exp m, DivMode mode) {
  if (m < 0) throw std::invalid_argument("div_qpow needs m >= 0");
  if (mode == DivMode::strict) {
    if (a.order() < m - 1)
      throw OrderTooLowError("order " + std::to_string(a.order()) +
                             " too low to verify divisibility by q^" + std::to_string(m));
    const Exp lo = effective_valuation(a);
    for (Exp e = lo; e < m && e <= a.order(); ++e)
      if (a.coeff(e) != 0) throw NotDivisibleError(e, a.coeff(e));
  }
  return a.shifted(-m);
}

Series mul_binomial(const Series& a, const Int& c, Exp e) {
  if (a.is_zero() || c == 0) return a;
  if (e < 0) throw std::invalid_argument("mul_binomial needs e >= 0");
  const Exp va = a.valuation();
  const Exp order = a.order();
  if (e == 0) {
    std::vector<Int> v(static_cast<size_t>(order - va + 1));
    for (Exp t = va; t <= order; ++t)
      v[static_cast<size_t>(t - va)] = a.coeff(t) + c * a.coeff(t);
    return Series(va, std::move(v), order);
  }
  if (va + e > order) return a;
  std::vector<Int> v(static_cast<size_t>(order - va + 1));
  for (Exp t = va; t <= order; ++t) v[static_cast<size_t>(t - va)] = a.coeff(t);
  for (Exp t = va + e; t <= order; ++t)
    v[static_cast<size_t>(t - va)] += c * a.coeff(t - e);
  return Series(va, std::move(v), order);
}

Series binomial(const Int& c, Exp e, Exp order) {
  return mul_binomial(Series::one(order), c, e);
}

std::optional<Exp> first_mismatch(const Series& a, const Series& b) {
  const Exp order = std::min(a.order(), b.order());
  const Exp lo = std::min(effective_valuation(a), effective_valuation(b));
  for (Exp e = lo; e <= order; ++e)
    if (a.coeff(e) != b.coeff(e)) return e;
  return std::nullopt;
}

bool operator==(const Series& a, const Series& b) { return !first_mismatch(a, b); }

Series pochhammer(Exp base, int sign, long long n, Exp order) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("pochhammer sign must be +-1");
  Series acc = Series::one(order);
  for (long long s = 0; s < n; ++s) {
    const Exp e = base + s;
    if (e > order) break;
    acc = mul_binomial(acc, Int(-sign), e);
  }
  return acc;
}

Series euler_infty(Exp order) { return pochhammer(1, +1, order, order); }

Series product_side(int k, int i, Exp order) {
  if (k < 2 || i < 1 || i > k) throw std::invalid_argument("product_side needs k >= 2, 1 <= i <= k");
  Series num = Series::one(order);
  for (Exp m = 1;; ++m) {
    const Exp e_even = 2 * k * m;
    const Exp e_hi = 2 * k * m - k + i - 1;
    const Exp e_lo = 2 * k * m - k - i + 1;
    if (e_lo > order) break;
    if (e_lo <= order) num = mul_binomial(num, -1, e_lo);
    if (e_hi <= order) num = mul_binomial(num, -1, e_hi);
    if (e_even <= order) num = mul_binomial(num, -1, e_even);
  }
  return unit_div(num, euler_infty(order));
}

Series theta_quotient(int k, int i, Exp order) {
  if (k < 2 || i < 1 || i > k) throw std::invalid_argument("theta_quotient needs k >= 2, 1 <= i <= k");
  std::vector<Int> c(static_cast<size_t>(order + 1));
  for (Exp n = 0; k * n * n <= order; ++n) {
    const int sign = (n % 2 == 0) ? 1 : -1;
    const Exp e1 = k * n * n + n * (i - 1);
    const Exp e2 = e1 + static_cast<Exp>(k - i + 1) * (2 * n + 1);
    if (e1 <= order) c[static_cast<size_t>(e1)] += sign;
    if (e2 <= order) c[static_cast<size_t>(e2)] -= sign;
  }
  Series num = Series::from_coeffs(0, std::move(c)).truncated(order);
  return unit_div(num, euler_infty(order));
}

nlohmann::json series_to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (Exp e = s.valuation(); e <= s.order(); ++e) coeffs.push_back(s.coeff(e).str());
  return nlohmann::json{{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", coeffs}};
}

Series series_from_json(const nlohmann::json& j) {
  const Exp valuation = j.at("valuation").get<Exp>();
  const Exp order = j.at("order").get<Exp>();
  std::vector<Int> c;
  for (const auto& item : j.at("coeffs")) c.emplace_back(item.get<std::string>());
  if (valuation + static_cast<Exp>(c.size()) - 1 > order)
    throw std::invalid_argument("series json has more coefficients than the order allows");
  if (c.empty()) return Series::zero(order);
  // trailing zeros up to the declared order are implicit in the json
  c.resize(static_cast<size_t>(order - valuation + 1));
  return Series::from_coeffs(valuation, std::move(c));
}

std::string to_pretty_string(const Series& s) {
  std::ostringstream out;
  if (s.is_zero()) {
    out << "0";
  } else {
    bool first = true;
    for (Exp e = s.valuation(); e <= s.order(); ++e) {
      const Int& c = s.coeff(e);
      if (c == 0) continue;
      Int mag = c < 0 ? Int(-c) : c;
      if (first) {
        if (c < 0) out << "-";
        first = false;
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (mag != 1 || e == 0) out << mag.str();
      if (e != 0) {
        if (mag != 1) out << " ";
        out << "q";
        if (e != 1) out << "^" << e;
      }
    }
  }
  out << " + O(q^" << (s.order() + 1) << ")";
  return out.str();
}

}  // namespace qshelf
