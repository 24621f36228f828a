#pragma once

#include <json.hpp>

#include <stdexcept>
#include <vector>

#include "qshelf/series.hpp"

namespace qshelf {

// Exact series in q truncated at a fixed q-order, with polynomial-in-x
// coefficients.  Every term x^a q^b satisfies a <= b, which makes q-degree
// truncation alone sufficient for exactness of the specialization x -> q^j
// with j >= 0: dropped terms can only land above the truncation order.

struct SupportError : std::logic_error {
  Exp a = 0;
  Exp b = 0;
  SupportError(Exp a_, Exp b_);
};

class BivariateSeries {
 public:
  BivariateSeries() = default;

  static BivariateSeries zero(Exp order);
  static BivariateSeries one(Exp order);
  // c x^a q^b; terms beyond the order vanish, unsupported ones throw
  static BivariateSeries monomial(const Int& c, Exp a, Exp b, Exp order);

  Exp order() const { return order_; }
  Int coeff(Exp a, Exp b) const;
  bool is_zero() const;
  BivariateSeries truncated(Exp new_order) const;

  friend BivariateSeries operator+(const BivariateSeries& a,
                                   const BivariateSeries& b);
  friend BivariateSeries operator-(const BivariateSeries& a,
                                   const BivariateSeries& b);
  friend BivariateSeries operator-(const BivariateSeries& a);
  friend BivariateSeries operator*(const BivariateSeries& a,
                                   const BivariateSeries& b);
  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b);
  friend bool operator!=(const BivariateSeries& a, const BivariateSeries& b);

  friend BivariateSeries xq_binomial(const Int& c, Exp a, Exp b, Exp order);
  friend BivariateSeries lift(const Series& s, Exp order);
  friend BivariateSeries mul_xq_binomial(const BivariateSeries& s,
                                         const Int& c, Exp a, Exp b);
  friend BivariateSeries unit_div(const BivariateSeries& a,
                                  const BivariateSeries& b);
  friend BivariateSeries substitute_x_to_xq(const BivariateSeries& s);
  friend Series specialize(const BivariateSeries& s, int j, Exp target_order);
  friend nlohmann::json bivariate_to_json(const BivariateSeries& s);

 private:
  void add_term(Exp a, Exp b, const Int& v);

  Exp order_ = 0;
  std::vector<std::vector<Int>> layers_;  // layers_[b][a] with a <= b
};

// 1 + c x^a q^b
BivariateSeries xq_binomial(const Int& c, Exp a, Exp b, Exp order);
// s (1 + c x^a q^b) without the full product loop
BivariateSeries mul_xq_binomial(const BivariateSeries& s, const Int& c, Exp a,
                                Exp b);
// Division by a series whose q-constant layer is exactly 1, by q-degree
// induction; throws NotAUnitError otherwise.
BivariateSeries unit_div(const BivariateSeries& a, const BivariateSeries& b);
// Embed a pure q series (nonnegative valuation) as the x^0 column.
BivariateSeries lift(const Series& s, Exp order);
// x^a q^b -> x^a q^(a+b)
BivariateSeries substitute_x_to_xq(const BivariateSeries& s);
// x^a q^b -> q^(aj+b); exact because a <= b
Series specialize(const BivariateSeries& s, int j, Exp target_order);
Series specialize(const BivariateSeries& s, int j);

// The two-variable official and ghost expressions, to q-order N.
BivariateSeries jtilde(int k, int i, Exp order);
// Same series built from the unspecialized expression via x -> xq.
BivariateSeries jtilde_via_substitution(int k, int i, Exp order);
BivariateSeries jtildetilde(int k, int i, Exp order);

// [{"a": int, "b": int, "c": decimal string}] sorted by (b, a)
nlohmann::json bivariate_to_json(const BivariateSeries& s);
BivariateSeries bivariate_from_json(const nlohmann::json& js, Exp order);

}  // namespace qshelf
