#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "achcr/ach.hpp"
#include "helpers.hpp"

using namespace achcr;

namespace {

bool series_equal(const RhoSeries& a, const RhoSeries& b) {
  if (!a.same_shape(b)) return false;
  RhoSeries d = a - b;
  return d.is_O(d.trunc());
}

}  // namespace

TEST_CASE("assembly of the model metric") {
  PseudohermitianData P = tw_connection(heisenberg(1));
  ACHMetric m = assemble(P, zero_phi(1, default_truncation(1)));
  InvariantTensor g0 = m.g.coeff(0);
  CHECK(g0.get({0, 0}) == Scalar(4));
  CHECK(g0.get({1, 1}) == Scalar(1));
  CHECK(g0.get({2, 3}) == Scalar(1));
  CHECK(g0.get({3, 2}) == Scalar(1));
  CHECK(g0.get({0, 1}).is_zero());
  CHECK(g0.get({2, 2}).is_zero());
  for (int d = 1; d < m.g.trunc(); ++d) CHECK(m.g.coeff(d).is_zero());

  // g . ginv = identity at every degree
  RhoSeries prod = series_contract(m.g, m.ginv, {{1, 1}});
  InvariantTensor p0 = prod.coeff(0);
  for (int i = 0; i < alphabet_size(1); ++i)
    for (int j = 0; j < alphabet_size(1); ++j)
      CHECK(p0.get({i, j}) == (i == j ? Scalar(1) : Scalar(0)));
  for (int d = 1; d < prod.trunc(); ++d) CHECK(prod.coeff(d).is_zero());
}

TEST_CASE("assembly with a perturbation") {
  PseudohermitianData P = tw_connection(su2());
  PhiExpansion phi = zero_phi(1, default_truncation(1));
  InvariantTensor t(1, {lo(K_M), lo(K_M)});
  t.set({2, 3}, Scalar(-1));
  t.set({3, 2}, Scalar(-1));
  phi.phi.set_coeff(2, t);
  ACHMetric m = assemble(P, phi);
  CHECK(m.g.coeff(0).get({2, 3}) == Scalar(1));
  CHECK(m.g.coeff(2).get({2, 3}) == Scalar(-1));

  // degree-0 entries violate the normal form
  PhiExpansion bad = zero_phi(1, 8);
  InvariantTensor b(1, {lo(K_M), lo(K_M)});
  b.set({1, 1}, Scalar(1));
  bad.phi.set_coeff(0, b);
  CHECK_THROWS_AS(assemble(P, bad), NormalFormViolation);

  PhiExpansion lop = zero_phi(1, 8);
  InvariantTensor u(1, {lo(K_M), lo(K_M)});
  u.set({2, 3}, Scalar::i());  // not hermitian-symmetric as a real tensor
  lop.phi.set_coeff(2, u);
  CHECK_THROWS_AS(assemble(P, lop), NormalFormViolation);
}

TEST_CASE("extended derivative weights") {
  PseudohermitianData P = tw_connection(heisenberg(2));
  ACHMetric m = assemble(P, zero_phi(2, default_truncation(2)));
  RhoSeries dg = extended_derivative(P, m.g);
  // (rho d/drho - 4) 1 = -4 on the Reeb-Reeb entry
  CHECK(dg.coeff(0).get({1, 1, 0}) == Scalar(-4));
  CHECK(dg.coeff(0).get({2, 4, 0}) == Scalar(-2));
  CHECK(dg.coeff(0).get({0, 0, 0}) == Scalar(-8));
  // flat structure: no Reeb or CR derivatives of an invariant tensor
  RhoSeries reeb = slice_series(dg, {-1, -1, 1}, {lo(K_ALL), lo(K_ALL)});
  CHECK(reeb.is_O(reeb.trunc()));
  for (int a = 2; a <= 5; ++a) {
    RhoSeries cr = slice_series(dg, {-1, -1, a}, {lo(K_ALL), lo(K_ALL)});
    CHECK(cr.is_O(cr.trunc()));
  }
}

TEST_CASE("christoffel of the model metric") {
  for (const CRFrameAlgebra& A : {heisenberg(1), su2()}) {
    PseudohermitianData P = tw_connection(A);
    ACHMetric m = assemble(P, zero_phi(1, default_truncation(1)));
    Christoffel C = christoffel(m, P);
    CHECK(C.Dlow.coeff(0).get({0, 0, 0}) == Scalar(-4));
    CHECK(C.Dlow.coeff(0).get({0, 1, 1}) == Scalar(-2));
    CHECK(C.Dlow.coeff(0).get({0, 3, 2}) == -P.h.get({2, 3}));
    // A = N = 0 for these structures
    CHECK(C.Dlow.coeff(1).get({2, 2, 2}).is_zero());
    CHECK(C.Dlow.coeff(2).get({1, 2, 2}).is_zero());
    // lowering Dup with g returns Dlow
    RhoSeries back = series_contract(m.g, C.Dup, {{1, 1}}).permuted({1, 0, 2});
    CHECK(series_equal(back, C.Dlow));
  }
}

TEST_CASE("christoffel reproduces the Nijenhuis tensor") {
  PseudohermitianData P = tw_connection(twisted_heisenberg(2, Scalar(1)));
  ACHMetric m = assemble(P, zero_phi(2, default_truncation(2)));
  Christoffel C = christoffel(m, P);
  for (int a = 2; a <= 3; ++a)
    for (int g = 2; g <= 3; ++g)
      for (int b = 2; b <= 3; ++b)
        CHECK(C.Dlow.coeff(1).get({a, g, b}) == -P.N_lo.get({a, g, b}));
}

TEST_CASE("christoffel equals the closed-form table") {
  std::mt19937 rng(41);
  for (int k = 0; k < 8; ++k) {
    CRFrameAlgebra A;
    switch (k % 4) {
      case 0: A = heisenberg(1); break;
      case 1: A = su2(); break;
      case 2: A = twisted_heisenberg(2, Scalar(Rational(1), Rational(1))); break;
      default: A = testing::random_valid_algebra(1, rng); break;
    }
    PseudohermitianData P = tw_connection(A);
    PhiExpansion phi = testing::random_phi(P, default_truncation(P.n), rng);
    ACHMetric m = assemble(P, phi);
    Christoffel C = christoffel(m, P);
    RhoSeries ref = christoffel_closed_form(P, phi);
    CHECK(series_equal(C.Dlow, ref));
  }
}

TEST_CASE("flat model is Einstein") {
  for (int n : {1, 2}) {
    PseudohermitianData P = tw_connection(heisenberg(n));
    ACHMetric m = assemble(P, zero_phi(n, default_truncation(n)));
    RhoSeries Ein = einstein(m, P);
    CHECK(Ein.is_O(Ein.trunc()));
  }
}

TEST_CASE("unperturbed curved structure: leading Einstein term") {
  PseudohermitianData P = tw_connection(su2());
  ACHMetric m = assemble(P, zero_phi(1, default_truncation(1)));
  RhoSeries Ein = einstein(m, P);
  CHECK(Ein.is_O(2));
  CHECK(Ein.coeff(2).get({2, 3}) == Scalar(2));  // rho^2 R_{1 1bar}
}

TEST_CASE("seeded su2 metric is Einstein to third order") {
  PseudohermitianData P = tw_connection(su2());
  PhiExpansion phi = zero_phi(1, default_truncation(1));
  InvariantTensor t(1, {lo(K_M), lo(K_M)});
  t.set({2, 3}, Scalar(-1));
  t.set({3, 2}, Scalar(-1));
  phi.phi.set_coeff(2, t);
  ACHMetric m = assemble(P, phi);
  RhoSeries Ein = einstein(m, P);
  CHECK(Ein.is_O(3));
  auto bad = bianchi_order_failures(m, P, phi, Ein, 1);
  for (const auto& s : bad) MESSAGE(s);
  CHECK(bad.empty());
}

TEST_CASE("Einstein tensor symmetry and exact Bianchi on perturbed metrics") {
  std::mt19937 rng(59);
  for (int k = 0; k < 4; ++k) {
    CRFrameAlgebra A = k % 2 ? testing::random_valid_algebra(1, rng)
                             : twisted_heisenberg(2, Scalar(Rational(1, 2)));
    PseudohermitianData P = tw_connection(A);
    // keep low truncation: the exact identities hold degree by degree
    PhiExpansion phi = testing::random_phi(P, 5, rng, 3);
    ACHMetric m = assemble(P, phi);
    RhoSeries Ein = einstein(m, P);
    RhoSeries sym = Ein - Ein.permuted({1, 0});
    CHECK(sym.is_O(sym.trunc()));
    RhoSeries herm = Ein - Ein.conj();
    CHECK(herm.is_O(herm.trunc()));
    RhoSeries B = bianchi_residual(m, P, Ein);
    CHECK(B.is_O(B.trunc()));
  }
}
