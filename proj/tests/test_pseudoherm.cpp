#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "achcr/pseudoherm.hpp"
#include "helpers.hpp"

using namespace achcr;

TEST_CASE("heisenberg is flat") {
  for (int n : {1, 2}) {
    PseudohermitianData P = tw_connection(heisenberg(n));
    CHECK(P.Gamma.is_zero());
    CHECK(P.A_up.is_zero());
    CHECK(P.N_up.is_zero());
    CHECK(P.R4.is_zero());
    CHECK(P.Ricci.is_zero());
    CHECK(P.Rscalar.is_zero());
    CHECK(pseudohermitian_identity_failures(P).empty());
  }
}

TEST_CASE("su2 hand-derived values") {
  PseudohermitianData P = tw_connection(su2());
  // frozen oracle: omega_1^1 = -2i theta
  CHECK(P.Gamma.get({1, 2, 2}) == Scalar(Rational(0), Rational(-2)));
  CHECK(P.Gamma.get({2, 2, 2}).is_zero());
  CHECK(P.Gamma.get({3, 2, 2}).is_zero());
  CHECK(P.A_up.is_zero());
  CHECK(P.N_up.is_zero());
  // frozen oracle: R_{1 1bar 1 1bar} = 2, Ricci = 2, scalar = 2
  CHECK(P.R4.get({2, 3, 2, 3}) == Scalar(2));
  CHECK(P.Ricci.get({2, 3}) == Scalar(2));
  CHECK(P.Rscalar == Scalar(2));
  CHECK(P.W3h.is_zero());
  CHECK(P.W3a.is_zero());
  CHECK(P.V4hh.is_zero());
  CHECK(pseudohermitian_identity_failures(P).empty());
}

TEST_CASE("twisted heisenberg nijenhuis") {
  Scalar c(Rational(1, 2), Rational(1, 3));
  PseudohermitianData P = tw_connection(twisted_heisenberg(2, c));
  CHECK(P.N_up.get({2, 3, 4}) == c);
  CHECK(P.N_up.get({3, 2, 4}) == -c);
  CHECK(P.A_up.is_zero());
  CHECK(pseudohermitian_identity_failures(P).empty());
}

TEST_CASE("linear solve matches the closed-form extraction") {
  std::mt19937 rng(7);
  std::vector<CRFrameAlgebra> cases{heisenberg(1), heisenberg(2), su2(),
                                    twisted_heisenberg(2, Scalar(1))};
  for (int k = 0; k < 10; ++k) cases.push_back(testing::random_valid_algebra(1, rng));
  for (int k = 0; k < 6; ++k) cases.push_back(testing::random_valid_algebra(2, rng));
  for (const auto& A : cases) {
    REQUIRE(validate(A).ok);
    PseudohermitianData P = tw_connection(A);
    ConnectionParts parts = tw_connection_direct(A);
    CHECK(P.Gamma == parts.Gamma);
    CHECK(P.A_up == parts.A_up);
    CHECK(P.N_up == parts.N_up);
  }
}

TEST_CASE("metric compatibility: covariant derivative of h vanishes") {
  std::mt19937 rng(11);
  for (int k = 0; k < 6; ++k) {
    CRFrameAlgebra A = testing::random_valid_algebra(k % 2 + 1, rng);
    PseudohermitianData P = tw_connection(A);
    CHECK(covariant_derivative(P, P.h).is_zero());
    CHECK(covariant_derivative(P, P.hinv).is_zero());
  }
}

TEST_CASE("identity suite on randomized valid algebras") {
  std::mt19937 rng(23);
  for (int k = 0; k < 12; ++k) {
    CRFrameAlgebra A = testing::random_valid_algebra(k % 2 + 1, rng);
    PseudohermitianData P = tw_connection(A);
    auto bad = pseudohermitian_identity_failures(P);
    for (const auto& b : bad) MESSAGE(b);
    CHECK(bad.empty());
  }
}

TEST_CASE("nonzero pseudohermitian torsion appears and the suite still holds") {
  // [Z,Zb] = -iT, [T,Z] = k Zb gives A_{1bar}^1 = -conj(k)... nonzero A
  CRFrameAlgebra A = make_algebra(1, {{2, 3, 1, -Scalar::i()},
                                      {1, 2, 3, Scalar(Rational(1), Rational(2))}});
  REQUIRE(validate(A).ok);
  PseudohermitianData P = tw_connection(A);
  CHECK_FALSE(P.A_up.is_zero());
  CHECK_FALSE(P.A_lo.is_zero());
  auto bad = pseudohermitian_identity_failures(P);
  for (const auto& b : bad) MESSAGE(b);
  CHECK(bad.empty());
}

TEST_CASE("constant rescale") {
  PseudohermitianData P = tw_connection(su2());
  PseudohermitianData Q = constant_rescale(P, Rational(4));
  CHECK(Q.h.get({2, 3}) == Scalar(4));
  CHECK(Q.A_up.is_zero());
  // omega is unchanged as a form; the Reeb frame vector is T/lambda, so
  // the Reeb-direction coefficient scales by 1/lambda
  CHECK(Q.Gamma.get({1, 2, 2}) == P.Gamma.get({1, 2, 2}) * Scalar(Rational(1, 4)));
  CHECK(Q.Gamma.get({2, 2, 2}) == P.Gamma.get({2, 2, 2}));
  CHECK(Q.Gamma.get({3, 2, 2}) == P.Gamma.get({3, 2, 2}));
  CHECK(Q.Ricci == P.Ricci);
  CHECK(Q.Rscalar == Scalar(Rational(1, 2)));  // R-hat = R / lambda
  PseudohermitianData I = constant_rescale(P, Rational(1));
  CHECK(I.h == P.h);
  CHECK(I.Rscalar == P.Rscalar);
}

TEST_CASE("covariant derivative rejects transverse slots") {
  PseudohermitianData P = tw_connection(heisenberg(1));
  InvariantTensor t(1, {lo(K_ALL)});
  CHECK_THROWS_AS(covariant_derivative(P, t), KindMismatch);
}
