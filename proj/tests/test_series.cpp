#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "achcr/series.hpp"

using namespace achcr;

namespace {

InvariantTensor scalar_tensor(int n, const Scalar& v) {
  InvariantTensor t(n, {});
  t.set({}, v);
  return t;
}

}  // namespace

TEST_CASE("series bookkeeping") {
  const int n = 1;
  RhoSeries s(n, {}, 6);
  s.set_coeff(2, scalar_tensor(n, Scalar(3)));
  CHECK(s.order() == 2);
  CHECK(s.is_O(2));
  CHECK_FALSE(s.is_O(3));
  CHECK_THROWS_AS(s.is_O(7), TruncationError);
  CHECK_THROWS_AS(s.coeff(6), TruncationError);
  CHECK(s.coeff(5).is_zero());

  RhoSeries t = s.shifted(2);
  CHECK(t.trunc() == 8);
  CHECK(t.coeff(4).get({}) == Scalar(3));
  CHECK(t.shifted(-2).coeff(2).get({}) == Scalar(3));
  CHECK_THROWS_AS(t.shifted(-5), TruncationError);

  // setting past the truncation records nothing
  s.set_coeff(9, scalar_tensor(n, Scalar(1)));
  CHECK(s.coeffs().count(9) == 0);
}

TEST_CASE("trunc propagation is the minimum") {
  const int n = 1;
  RhoSeries a(n, {}, 4), b(n, {}, 7);
  a.set_coeff(1, scalar_tensor(n, Scalar(1)));
  b.set_coeff(5, scalar_tensor(n, Scalar(2)));
  RhoSeries sum = a + b;
  CHECK(sum.trunc() == 4);
  CHECK(sum.coeffs().count(5) == 0);
  RhoSeries prod = series_contract(a, b, {});
  CHECK(prod.trunc() == 4);
}

TEST_CASE("euler operator scales each degree by p(d)") {
  const int n = 1;
  RhoSeries s(n, {}, 10);
  for (int d = 0; d < 10; ++d) s.set_coeff(d, scalar_tensor(n, Scalar(1)));
  Poly p{{Rational(-4), Rational(1)}};  // d - 4
  RhoSeries r = s.euler_applied(p);
  CHECK(r.coeff(0).get({}) == Scalar(-4));
  CHECK(r.coeff(4).is_zero());
  CHECK(r.coeff(9).get({}) == Scalar(5));
  CHECK(s.rho_d_rho().coeff(3).get({}) == Scalar(3));
}

TEST_CASE("cauchy product against the geometric series oracle") {
  // frozen oracle: (1 - rho)^{-1} = sum rho^d, so (1 - rho) * sum rho^d = 1
  const int n = 1;
  RhoSeries one_minus(n, {}, 12), geo(n, {}, 12);
  one_minus.set_coeff(0, scalar_tensor(n, Scalar(1)));
  one_minus.set_coeff(1, scalar_tensor(n, Scalar(-1)));
  for (int d = 0; d < 12; ++d) geo.set_coeff(d, scalar_tensor(n, Scalar(1)));
  RhoSeries prod = series_contract(one_minus, geo, {});
  CHECK(prod.coeff(0).get({}) == Scalar(1));
  for (int d = 1; d < 12; ++d) CHECK(prod.coeff(d).is_zero());
}

TEST_CASE("metric series inversion") {
  const int n = 1;
  const int L = alphabet_size(n);
  std::vector<Slot> ll{lo(K_ALL), lo(K_ALL)};
  RhoSeries g(n, ll, 9);
  InvariantTensor g0(n, ll), g1(n, ll);
  for (int i = 0; i < L; ++i) g0.set({i, i}, Scalar(i + 1));
  g1.set({0, 2}, Scalar(Rational(1), Rational(1)));
  g1.set({2, 0}, Scalar(Rational(1), Rational(1)));
  g1.set({1, 1}, Scalar(-3));
  g.set_coeff(0, g0);
  g.set_coeff(1, g1);

  RhoSeries ginv = invert_metric_series(g);
  CHECK(ginv.trunc() == 9);
  RhoSeries prod = series_contract(g, ginv, {{1, 0}});
  InvariantTensor id(n, {lo(K_ALL), up(K_ALL)});
  for (int i = 0; i < L; ++i) id.set({i, i}, Scalar(1));
  CHECK(prod.coeff(0) == id);
  for (int d = 1; d < 9; ++d) CHECK(prod.coeff(d).is_zero());

  // singular leading block
  RhoSeries bad(n, ll, 3);
  bad.set_coeff(1, g1);
  CHECK_THROWS_AS(invert_metric_series(bad), SingularLeadingBlock);
}
