#include "qshelf/bivariate.hpp"

#include <map>
#include <utility>

namespace qshelf {

SupportError::SupportError(Exp a_, Exp b_)
    : std::logic_error("term x^" + std::to_string(a_) + " q^" +
                       std::to_string(b_) + " violates the support bound a <= b"),
      a(a_),
      b(b_) {}

BivariateSeries BivariateSeries::zero(Exp order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  BivariateSeries s;
  s.order_ = order;
  s.layers_.resize(static_cast<size_t>(order) + 1);
  for (Exp b = 0; b <= order; ++b)
    s.layers_[static_cast<size_t>(b)].assign(static_cast<size_t>(b) + 1,
                                             Int(0));
  return s;
}

BivariateSeries BivariateSeries::one(Exp order) {
  BivariateSeries s = zero(order);
  s.layers_[0][0] = 1;
  return s;
}

void BivariateSeries::add_term(Exp a, Exp b, const Int& v) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("term exponents must be nonnegative");
  if (a > b) throw SupportError(a, b);
  if (b > order_) return;
  layers_[static_cast<size_t>(b)][static_cast<size_t>(a)] += v;
}

BivariateSeries BivariateSeries::monomial(const Int& c, Exp a, Exp b,
                                          Exp order) {
  BivariateSeries s = zero(order);
  s.add_term(a, b, c);
  return s;
}

Int BivariateSeries::coeff(Exp a, Exp b) const {
  if (a < 0 || b < 0 || b > order_ || a > b) return 0;
  return layers_[static_cast<size_t>(b)][static_cast<size_t>(a)];
}

bool BivariateSeries::is_zero() const {
  for (const auto& layer : layers_)
    for (const auto& c : layer)
      if (c != 0) return false;
  return true;
}

BivariateSeries BivariateSeries::truncated(Exp new_order) const {
  if (new_order >= order_) return *this;
  BivariateSeries s = zero(new_order < 0 ? 0 : new_order);
  if (new_order < 0) return s;
  for (Exp b = 0; b <= new_order; ++b)
    s.layers_[static_cast<size_t>(b)] = layers_[static_cast<size_t>(b)];
  return s;
}

BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s = BivariateSeries::zero(std::min(a.order_, b.order_));
  for (Exp m = 0; m <= s.order_; ++m)
    for (Exp x = 0; x <= m; ++x)
      s.layers_[static_cast<size_t>(m)][static_cast<size_t>(x)] =
          a.layers_[static_cast<size_t>(m)][static_cast<size_t>(x)] +
          b.layers_[static_cast<size_t>(m)][static_cast<size_t>(x)];
  return s;
}

BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
  return a + (-b);
}

BivariateSeries operator-(const BivariateSeries& a) {
  BivariateSeries s = a;
  for (auto& layer : s.layers_)
    for (auto& c : layer) c = -c;
  return s;
}

BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateSeries s = BivariateSeries::zero(std::min(a.order_, b.order_));
  for (Exp m = 0; m <= s.order_; ++m) {
    auto& out = s.layers_[static_cast<size_t>(m)];
    for (Exp ba = 0; ba <= m; ++ba) {
      const auto& la = a.layers_[static_cast<size_t>(ba)];
      const auto& lb = b.layers_[static_cast<size_t>(m - ba)];
      for (size_t xa = 0; xa < la.size(); ++xa) {
        if (la[xa] == 0) continue;
        for (size_t xb = 0; xb < lb.size(); ++xb) {
          if (lb[xb] == 0) continue;
          out[xa + xb] += la[xa] * lb[xb];
        }
      }
    }
  }
  return s;
}

bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
  Exp order = std::min(a.order_, b.order_);
  for (Exp m = 0; m <= order; ++m)
    if (a.layers_[static_cast<size_t>(m)] != b.layers_[static_cast<size_t>(m)])
      return false;
  return true;
}

bool operator!=(const BivariateSeries& a, const BivariateSeries& b) {
  return !(a == b);
}

BivariateSeries xq_binomial(const Int& c, Exp a, Exp b, Exp order) {
  BivariateSeries s = BivariateSeries::one(order);
  s.add_term(a, b, c);
  return s;
}

BivariateSeries mul_xq_binomial(const BivariateSeries& s, const Int& c, Exp a,
                                Exp b) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("binomial exponents must be nonnegative");
  if (a > b) throw SupportError(a, b);
  BivariateSeries out = s;
  for (Exp m = b; m <= s.order_; ++m) {
    const auto& src = s.layers_[static_cast<size_t>(m - b)];
    auto& dst = out.layers_[static_cast<size_t>(m)];
    for (size_t x = 0; x < src.size(); ++x)
      if (src[x] != 0) dst[x + static_cast<size_t>(a)] += c * src[x];
  }
  return out;
}

BivariateSeries unit_div(const BivariateSeries& a, const BivariateSeries& b) {
  if (b.is_zero()) throw NotAUnitError();
  if (b.layers_[0][0] != 1) throw NotAUnitError();
  Exp order = std::min(a.order(), b.order());
  BivariateSeries c = BivariateSeries::zero(order);
  for (Exp m = 0; m <= order; ++m) {
    std::vector<Int> poly = a.layers_[static_cast<size_t>(m)];
    poly.resize(static_cast<size_t>(m) + 1, Int(0));
    for (Exp s = 1; s <= m; ++s) {
      const auto& lb = b.layers_[static_cast<size_t>(s)];
      const auto& lc = c.layers_[static_cast<size_t>(m - s)];
      for (size_t xb = 0; xb < lb.size(); ++xb) {
        if (lb[xb] == 0) continue;
        for (size_t xc = 0; xc < lc.size(); ++xc)
          if (lc[xc] != 0) poly[xb + xc] -= lb[xb] * lc[xc];
      }
    }
    c.layers_[static_cast<size_t>(m)] = std::move(poly);
  }
  return c;
}

BivariateSeries lift(const Series& s, Exp order) {
  if (!s.is_zero() && s.valuation() < 0)
    throw std::invalid_argument("cannot lift a series with negative valuation");
  BivariateSeries out = BivariateSeries::zero(std::min(order, s.order()));
  for (Exp e = 0; e <= out.order(); ++e) out.add_term(0, e, s.coeff(e));
  return out;
}

BivariateSeries substitute_x_to_xq(const BivariateSeries& s) {
  BivariateSeries out = BivariateSeries::zero(s.order_);
  for (Exp b = 0; b <= s.order_; ++b) {
    const auto& layer = s.layers_[static_cast<size_t>(b)];
    for (size_t a = 0; a < layer.size(); ++a)
      if (layer[a] != 0) out.add_term(static_cast<Exp>(a), b + static_cast<Exp>(a), layer[a]);
  }
  return out;
}

Series specialize(const BivariateSeries& s, int j, Exp target_order) {
  if (j < 0) throw std::invalid_argument("specialization exponent must be nonnegative");
  Exp order = std::min(target_order, s.order_);
  if (order < 0) return Series::zero(0);
  std::vector<Int> coeffs(static_cast<size_t>(order) + 1, Int(0));
  for (Exp b = 0; b <= s.order_; ++b) {
    const auto& layer = s.layers_[static_cast<size_t>(b)];
    for (size_t a = 0; a < layer.size(); ++a) {
      if (layer[a] == 0) continue;
      Exp e = static_cast<Exp>(a) * j + b;
      if (e <= order) coeffs[static_cast<size_t>(e)] += layer[a];
    }
  }
  return Series::from_coeffs(0, std::move(coeffs));
}

Series specialize(const BivariateSeries& s, int j) {
  return specialize(s, j, s.order());
}

namespace {

// prod_{s0 <= s <= order} (1 - x q^s); later factors sit above the order
BivariateSeries xq_pochhammer_inf(Exp s0, Exp order) {
  BivariateSeries p = BivariateSeries::one(order);
  for (Exp s = s0; s <= order; ++s) p = mul_xq_binomial(p, -1, 1, s);
  return p;
}

Series pure_q_factors(long long n, Exp order) {
  return pochhammer(1, -1, n, order) * pochhammer(1, 1, n, order);
}

void check_ki(int k, int i, int imax) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (i < 1 || i > imax) throw std::invalid_argument("i out of range");
}

}  // namespace

BivariateSeries jtilde(int k, int i, Exp order) {
  check_ki(k, i, k);
  BivariateSeries total = BivariateSeries::zero(order);
  for (long long n = 0; static_cast<Exp>(k) * n * n <= order; ++n) {
    Exp lead = static_cast<Exp>(k) * n * n + static_cast<Exp>(k - i) * n;
    BivariateSeries t = BivariateSeries::monomial(
        n % 2 == 0 ? 1 : -1, static_cast<Exp>(k - 1) * n, lead, order);
    t = mul_xq_binomial(t, -1, i, (2 * n + 1) * static_cast<Exp>(i));
    for (Exp m = 1; m <= n; ++m) t = mul_xq_binomial(t, 1, 1, m);
    t = unit_div(t, lift(pure_q_factors(n, order), order));
    t = unit_div(t, xq_pochhammer_inf(static_cast<Exp>(n) + 1, order));
    total = total + t;
  }
  return total;
}

namespace {

// Terms free of the support bound, for expressions that only satisfy it
// after the substitution x -> xq.  Keyed by (b, a); q-truncation stays safe
// because the substitution can only raise q-degrees.
using Raw = std::map<std::pair<Exp, Exp>, Int>;

Raw raw_mul_binomial(const Raw& r, const Int& c, Exp a, Exp b, Exp order) {
  Raw out = r;
  for (const auto& [key, v] : r) {
    Exp nb = key.first + b;
    if (nb <= order) out[{nb, key.second + a}] += c * v;
  }
  return out;
}

}  // namespace

BivariateSeries jtilde_via_substitution(int k, int i, Exp order) {
  check_ki(k, i, k);
  BivariateSeries total = BivariateSeries::zero(order);
  for (long long n = 0; static_cast<Exp>(k) * n * n <= order; ++n) {
    // numerator of the unspecialized summand: q^{kn^2+n-in} x^{(k-1)n}
    // (1 - x^i q^{2ni}) (-x)_n, violating a <= b until x -> xq
    Raw raw;
    raw[{static_cast<Exp>(k) * n * n + n - static_cast<Exp>(i) * n,
         static_cast<Exp>(k - 1) * n}] = n % 2 == 0 ? 1 : -1;
    raw = raw_mul_binomial(raw, -1, i, 2 * n * static_cast<Exp>(i), order);
    for (Exp m = 0; m < n; ++m) raw = raw_mul_binomial(raw, 1, 1, m, order);

    BivariateSeries t = BivariateSeries::zero(order);
    for (const auto& [key, v] : raw)
      if (key.first + key.second <= order)
        t = t + BivariateSeries::monomial(v, key.second,
                                          key.first + key.second, order);

    // the denominator substitutes structurally: (x q^n)_inf -> (x q^{n+1})_inf
    t = unit_div(t, lift(pure_q_factors(n, order), order));
    t = unit_div(t, xq_pochhammer_inf(static_cast<Exp>(n) + 1, order));
    total = total + t;
  }
  return total;
}

BivariateSeries jtildetilde(int k, int i, Exp order) {
  check_ki(k, i, k - 1);
  BivariateSeries total = BivariateSeries::zero(order);
  for (long long n = 0; static_cast<Exp>(k) * n * n <= order; ++n) {
    Exp lead = static_cast<Exp>(k) * n * n + static_cast<Exp>(k - i - 1) * n;
    BivariateSeries t = BivariateSeries::monomial(
        n % 2 == 0 ? 1 : -1, static_cast<Exp>(k - 1) * n, lead, order);
    t = mul_xq_binomial(t, -1, i, (2 * n + 1) * static_cast<Exp>(i));
    t = mul_xq_binomial(t, 1, 1, 2 * n + 1);
    for (Exp m = 1; m <= n; ++m) t = mul_xq_binomial(t, 1, 1, m);
    t = unit_div(t, lift(pure_q_factors(n, order), order));
    t = unit_div(t, xq_pochhammer_inf(static_cast<Exp>(n) + 1, order));
    total = total + t;
  }
  return unit_div(total, xq_binomial(1, 1, 1, order));
}

nlohmann::json bivariate_to_json(const BivariateSeries& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (Exp b = 0; b <= s.order_; ++b) {
    const auto& layer = s.layers_[static_cast<size_t>(b)];
    for (size_t a = 0; a < layer.size(); ++a)
      if (layer[a] != 0)
        arr.push_back(nlohmann::json{
            {"a", static_cast<Exp>(a)}, {"b", b}, {"c", layer[a].str()}});
  }
  return arr;
}

BivariateSeries bivariate_from_json(const nlohmann::json& js, Exp order) {
  BivariateSeries s = BivariateSeries::zero(order);
  for (const auto& item : js) {
    Int c(item.at("c").get<std::string>());
    s = s + BivariateSeries::monomial(c, item.at("a").get<Exp>(),
                                      item.at("b").get<Exp>(), order);
  }
  return s;
}

}  // namespace qshelf
