#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qshelf {

using Int = boost::multiprecision::cpp_int;
using Exp = long long;

struct NotAUnitError : std::runtime_error {
  NotAUnitError() : std::runtime_error("leading coefficient is not a unit") {}
};

struct NotDivisibleError : std::runtime_error {
  Exp exponent;
  Int coefficient;
  NotDivisibleError(Exp e, Int c)
      : std::runtime_error("series not divisible by q^m: nonzero coefficient " +
                           c.str() + " at exponent " + std::to_string(e)),
        exponent(e),
        coefficient(std::move(c)) {}
};

struct OrderTooLowError : std::runtime_error {
  explicit OrderTooLowError(const std::string& what) : std::runtime_error(what) {}
};

enum class DivMode { strict, laurent };

/// Truncated formal Laurent series in q with exact integer coefficients.
///
/// Coefficients are tracked for exponents valuation()..order(); everything
/// below valuation() is zero and everything above order() is unknown.
/// Operations propagate order by the usual min rules, so a coefficient is
/// never reported unless it is actually determined by the inputs.
/// The zero-to-order series is represented with an empty coefficient vector
/// and valuation() == order() + 1.
class Series {
 public:
  Series() : valuation_(1), order_(0) {}

  static Series zero(Exp order) {
    Series s;
    s.order_ = order;
    s.valuation_ = order + 1;
    return s;
  }

  static Series constant(Int c, Exp order) { return monomial(std::move(c), 0, order); }
  static Series one(Exp order) { return constant(1, order); }

  static Series monomial(Int c, Exp e, Exp order) {
    if (c == 0 || e > order) return zero(order);
    std::vector<Int> v(1);
    v[0] = std::move(c);
    return Series(e, std::move(v), order);
  }

  /// Coefficients for exponents valuation, valuation+1, ..; order is
  /// valuation + coeffs.size() - 1. Leading zeros are stripped.
  static Series from_coeffs(Exp valuation, std::vector<Int> coeffs) {
    Exp order = valuation + static_cast<Exp>(coeffs.size()) - 1;
    return Series(valuation, std::move(coeffs), order);
  }

  Exp valuation() const { return valuation_; }
  Exp order() const { return order_; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of q^e; throws for e > order().
  const Int& coeff(Exp e) const {
    if (e > order_)
      throw OrderTooLowError("coefficient at exponent " + std::to_string(e) +
                             " requested beyond order " + std::to_string(order_));
    if (e < valuation_) return zero_int();
    const size_t idx = static_cast<size_t>(e - valuation_);
    return idx < c_.size() ? c_[idx] : zero_int();
  }

  /// Restrict to a smaller order (truncation never invents coefficients).
  Series truncated(Exp new_order) const {
    if (new_order > order_)
      throw OrderTooLowError("cannot extend order " + std::to_string(order_) +
                             " to " + std::to_string(new_order));
    if (new_order == order_) return *this;
    if (new_order < valuation_) return zero(new_order);
    const size_t keep =
        std::min(c_.size(), static_cast<size_t>(new_order - valuation_ + 1));
    std::vector<Int> v(c_.begin(), c_.begin() + static_cast<long>(keep));
    return Series(valuation_, std::move(v), new_order);
  }

  /// Multiply by q^m exactly (m may be negative; see div_qpow for checked shifts).
  Series shifted(Exp m) const {
    Series s(*this);
    s.valuation_ += m;
    s.order_ += m;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator-(const Series& a);
  friend Series operator*(const Series& a, const Series& b);
  friend Series unit_div(const Series& a, const Series& b);
  friend Series div_qpow(const Series& a, Exp m, DivMode mode);
  friend Series mul_binomial(const Series& a, const Int& c, Exp e);

 private:
  Series(Exp valuation, std::vector<Int> coeffs, Exp order)
      : valuation_(valuation), order_(order), c_(std::move(coeffs)) {
    normalize();
  }

  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      valuation_ = order_ + 1;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      valuation_ += static_cast<Exp>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();  // implicit zeros up to order
  }

  static const Int& zero_int() {
    static const Int z = 0;
    return z;
  }

  Exp valuation_;
  Exp order_;
  std::vector<Int> c_;  // c_[t] is the coefficient of q^(valuation_+t)
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);

/// a / b where b has leading coefficient +1 or -1; throws NotAUnitError otherwise.
Series unit_div(const Series& a, const Series& b);

/// a / q^m for m >= 0. In strict mode every coefficient below exponent m must
/// vanish (NotDivisibleError reports the first offender) and the result keeps
/// valuation >= 0; laurent mode shifts unconditionally.
Series div_qpow(const Series& a, Exp m, DivMode mode = DivMode::strict);

/// a * (1 + c q^e), truncated to the order of a. The binomial factor is exact.
Series mul_binomial(const Series& a, const Int& c, Exp e);

/// The binomial 1 + c q^e as a standalone series at the given order.
Series binomial(const Int& c, Exp e, Exp order);

/// First exponent <= min(a.order, b.order) where the coefficients differ.
std::optional<Exp> first_mismatch(const Series& a, const Series& b);

/// Equality of all coefficients up to the smaller of the two orders.
bool operator==(const Series& a, const Series& b);
inline bool operator!=(const Series& a, const Series& b) { return !(a == b); }

/// prod_{s=0}^{n-1} (1 - sign q^{base+s}); sign is +1 or -1.
/// pochhammer(1, +1, n, N) is (q)_n, pochhammer(1, -1, n, N) is (-q)_n.
Series pochhammer(Exp base, int sign, long long n, Exp order);

/// (q)_infinity: prod_{s>=1} (1 - q^s).
Series euler_infty(Exp order);

/// Product side of the Andrews-Bressoud identity with modulus 2k:
/// prod_{m>=1} (1-q^{2km})(1-q^{2km-k+i-1})(1-q^{2km-k-i+1}) / (q)_infinity.
Series product_side(int k, int i, Exp order);

/// The same series written as a theta quotient:
/// sum_{n>=0} (-1)^n q^{kn^2+n(i-1)} (1 - q^{(k-i+1)(2n+1)}) / (q)_infinity.
Series theta_quotient(int k, int i, Exp order);

nlohmann::json series_to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

/// Human-readable rendering like "1 + q^2 + 2 q^6 + O(q^9)".
std::string to_pretty_string(const Series& s);

}  // namespace qshelf
