#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qshelf/bivariate.hpp>
#include <qshelf/shelves.hpp>

using namespace qshelf;

TEST_CASE("monomials, coefficients, and arithmetic") {
  BivariateSeries m = BivariateSeries::monomial(3, 2, 4, 10);
  CHECK(m.coeff(2, 4) == 3);
  CHECK(m.coeff(2, 5) == 0);
  CHECK(m.coeff(0, 0) == 0);
  CHECK(!m.is_zero());
  CHECK(BivariateSeries::zero(10).is_zero());
  CHECK(BivariateSeries::one(10).coeff(0, 0) == 1);

  BivariateSeries s = BivariateSeries::one(10) + m;
  CHECK(s.coeff(0, 0) == 1);
  CHECK(s.coeff(2, 4) == 3);
  CHECK((s - m) == BivariateSeries::one(10));
  CHECK(-m == BivariateSeries::monomial(-3, 2, 4, 10));

  BivariateSeries p = xq_binomial(1, 1, 1, 10) * xq_binomial(-1, 1, 2, 10);
  CHECK(p.coeff(0, 0) == 1);
  CHECK(p.coeff(1, 1) == 1);
  CHECK(p.coeff(1, 2) == -1);
  CHECK(p.coeff(2, 3) == -1);
  CHECK(p == mul_xq_binomial(xq_binomial(1, 1, 1, 10), -1, 1, 2));

  CHECK(m.truncated(3).is_zero());
  CHECK(s.truncated(4) == s);
}

TEST_CASE("support violations throw") {
  CHECK_THROWS_AS(BivariateSeries::monomial(1, 2, 1, 10), SupportError);
  CHECK_THROWS_AS(BivariateSeries::monomial(1, 1, 0, 10), SupportError);
  CHECK_THROWS_AS(xq_binomial(1, 3, 2, 10), SupportError);
  CHECK_THROWS_AS(mul_xq_binomial(BivariateSeries::one(10), 1, 2, 1),
                  SupportError);
  CHECK_NOTHROW(BivariateSeries::monomial(1, 3, 3, 10));
}

TEST_CASE("truncation drops high layers only") {
  BivariateSeries s = xq_binomial(2, 2, 5, 12);
  BivariateSeries t = s.truncated(5);
  CHECK(t.order() == 5);
  CHECK(t.coeff(2, 5) == 2);
  CHECK(s.truncated(4) == BivariateSeries::one(4));
  // monomials beyond the order vanish silently, like the univariate case
  CHECK(BivariateSeries::monomial(1, 2, 9, 5).is_zero());
}

TEST_CASE("unit division inverts products") {
  const Exp N = 16;
  BivariateSeries u = xq_binomial(1, 1, 1, N);
  u = mul_xq_binomial(u, -1, 1, 3);
  u = mul_xq_binomial(u, 1, 2, 2);
  BivariateSeries a = xq_binomial(-1, 1, 2, N);
  CHECK(unit_div(a * u, u) == a);
  CHECK(unit_div(u, u) == BivariateSeries::one(N));

  BivariateSeries inv = unit_div(BivariateSeries::one(N), u);
  CHECK(inv * u == BivariateSeries::one(N));

  // geometric series for 1/(1+xq)
  BivariateSeries g = unit_div(BivariateSeries::one(6), xq_binomial(1, 1, 1, 6));
  for (Exp m = 0; m <= 6; ++m)
    CHECK(g.coeff(m, m) == (m % 2 == 0 ? 1 : -1));

  CHECK_THROWS_AS(unit_div(a, BivariateSeries::zero(N)), NotAUnitError);
  CHECK_THROWS_AS(unit_div(a, a + BivariateSeries::one(N)), NotAUnitError);
  // constant layer must be exactly 1, not just invertible in spirit
  BivariateSeries two = BivariateSeries::one(N) + BivariateSeries::one(N);
  CHECK_THROWS_AS(unit_div(a, two), NotAUnitError);
}

TEST_CASE("lift embeds pure q series") {
  Series s = pochhammer(1, -1, 3, 12);
  BivariateSeries b = lift(s, 12);
  for (Exp e = 0; e <= 12; ++e) CHECK(b.coeff(0, e) == s.coeff(e));
  CHECK(b.coeff(1, 1) == 0);
  CHECK(specialize(b, 4) == s);
  CHECK_THROWS_AS(lift(Series::monomial(1, -2, 5), 5), std::invalid_argument);
}

TEST_CASE("substitution relabels x to xq") {
  BivariateSeries s = xq_binomial(5, 2, 3, 20);
  CHECK(substitute_x_to_xq(s) == xq_binomial(5, 2, 5, 20));

  BivariateSeries p = xq_binomial(1, 1, 1, 20) * xq_binomial(-2, 3, 4, 20);
  BivariateSeries q =
      xq_binomial(1, 1, 2, 20) * xq_binomial(-2, 3, 7, 20);
  CHECK(substitute_x_to_xq(p) == q);
}

TEST_CASE("specialization maps x^a q^b to q^(aj+b)") {
  BivariateSeries s = xq_binomial(3, 2, 4, 10);
  Series sp = specialize(s, 2);
  CHECK(sp.coeff(0) == 1);
  CHECK(sp.coeff(8) == 3);
  CHECK(sp == Series::one(10) + Series::monomial(3, 8, 10));

  // j = 0 collapses each q layer
  BivariateSeries t = xq_binomial(1, 1, 1, 10) * xq_binomial(1, 2, 2, 10);
  Series t0 = specialize(t, 0);
  CHECK(t0.coeff(0) == 1);
  CHECK(t0.coeff(1) == 1);
  CHECK(t0.coeff(2) == 1);
  CHECK(t0.coeff(3) == 1);

  CHECK(specialize(s, 2, 7) == Series::one(7));
  CHECK_THROWS_AS(specialize(s, -1), std::invalid_argument);
}

TEST_CASE("gap filling identity for the specialized denominator") {
  const Exp N = 40;
  for (int j = 0; j <= 4; ++j)
    for (long long n = 0; n <= 5; ++n) {
      Series lhs = pochhammer(j + 1, -1, n, N);
      Series den = pochhammer(1, -1, n, N) * pochhammer(1, 1, n, N) *
                   pochhammer(n + j + 1, 1, N, N);
      lhs = unit_div(lhs, den);

      Series num = Series::one(N);
      for (long long t = 1; t <= j; ++t)
        num = mul_binomial(num, -1, 2 * (n + t));
      Series rhs = unit_div(
          num, pochhammer(1, -1, j, N) * euler_infty(N));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("factorization identity behind the ghost expression") {
  const Exp N = 30;
  for (long long n = 0; n <= 3; ++n)
    for (Exp i = 1; i <= 5; ++i) {
      BivariateSeries lhs =
          xq_binomial(-1, i + 1, (2 * n + 1) * (i + 1), N) +
          BivariateSeries::monomial(1, 1, 2 * n + 1, N) *
              xq_binomial(-1, i - 1, (2 * n + 1) * (i - 1), N);
      BivariateSeries rhs = xq_binomial(-1, i, (2 * n + 1) * i, N) *
                            xq_binomial(1, 1, 2 * n + 1, N);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("dictionary series normalize to one") {
  for (int k : {2, 3, 5})
    for (int i = 1; i <= k; ++i) {
      BivariateSeries s = jtilde(k, i, 20);
      CHECK(s.coeff(0, 0) == 1);
      if (i <= k - 1) CHECK(jtildetilde(k, i, 20).coeff(0, 0) == 1);
    }
}

TEST_CASE("substitution route agrees with the direct route") {
  for (int k : {2, 3, 4})
    for (int i = 1; i <= k; ++i)
      CHECK(jtilde(k, i, 30) == jtilde_via_substitution(k, i, 30));
}

TEST_CASE("ghost construction identities") {
  const Exp N = 30;
  for (int k : {3, 4, 5}) {
    BivariateSeries xq = BivariateSeries::monomial(1, 1, 1, N);
    for (int i = 2; i <= k - 1; ++i) {
      BivariateSeries lhs =
          xq_binomial(1, 1, 1, N) * jtildetilde(k, i, N);
      BivariateSeries rhs = jtilde(k, i + 1, N) + xq * jtilde(k, i - 1, N);
      CHECK(lhs == rhs);
    }
    CHECK(xq_binomial(1, 1, 1, N) * jtildetilde(k, 1, N) == jtilde(k, 2, N));
  }
}

TEST_CASE("specializing at zero gives the product sides") {
  const Exp N = 30;
  for (int k : {2, 3, 4, 5})
    for (int i = 1; i <= k; ++i)
      CHECK(specialize(jtilde(k, k - i + 1, N), 0) == product_side(k, i, N));
}

TEST_CASE("dictionary against the closed forms") {
  const Exp N = 30;
  for (int k : {2, 3, 4})
    for (int j : {0, 1, 3})
      for (int i = 1; i <= k; ++i)
        CHECK(specialize(jtilde(k, k - i + 1, N), j) ==
              closed_form_official(k, j, i, N));
}

TEST_CASE("ghost dictionary against the closed forms") {
  const Exp N = 30;
  for (int k : {2, 3, 4})
    for (int j : {0, 1, 2})
      for (int i = 2; i <= k; ++i)
        CHECK(specialize(jtildetilde(k, k - i + 1, N), j) ==
              closed_form_ghost(k, j, i, N));
}

TEST_CASE("sparse json sorted by q then x degree") {
  BivariateSeries s = xq_binomial(1, 2, 3, 10) * xq_binomial(-2, 1, 3, 10);
  nlohmann::json js = bivariate_to_json(s);
  REQUIRE(js.is_array());
  REQUIRE(js.size() == 4);
  CHECK(js[0]["a"] == 0);
  CHECK(js[0]["b"] == 0);
  CHECK(js[0]["c"] == "1");
  CHECK(js[1]["a"] == 1);
  CHECK(js[1]["b"] == 3);
  CHECK(js[1]["c"] == "-2");
  CHECK(js[2]["a"] == 2);
  CHECK(js[2]["b"] == 3);
  CHECK(js[2]["c"] == "1");
  CHECK(js[3]["a"] == 3);
  CHECK(js[3]["b"] == 6);
  CHECK(js[3]["c"] == "-2");
  CHECK(bivariate_from_json(js, 10) == s);
}
