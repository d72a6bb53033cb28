#ifndef ACHCR_TEST_HELPERS_HPP
#define ACHCR_TEST_HELPERS_HPP

#include <random>

#include "achcr/ach.hpp"
#include "achcr/algebra.hpp"

namespace achcr::testing {

inline Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 4);
  return Rational(num(rng), den(rng));
}

inline Scalar random_scalar(std::mt19937& rng) {
  return Scalar(random_rational(rng), random_rational(rng));
}

// Valid algebras by construction: a base structure composed with a random
// constant symmetric deformation, a random holomorphic frame change, and a
// random positive rescaling. Every output passes validate().
inline CRFrameAlgebra random_valid_algebra(int n, std::mt19937& rng) {
  CRFrameAlgebra A;
  std::uniform_int_distribution<int> pick(0, 2);
  if (n == 1) {
    switch (pick(rng)) {
      case 0:
        A = heisenberg(1);
        break;
      case 1:
        A = su2();
        break;
      default: {
        // [Z,Zb] = -ihT, [T,Z] = il Z + k Zb: closes for real l, any k
        Rational hh = 0;
        while (hh == 0) hh = random_rational(rng);
        Scalar l(Rational(0), random_rational(rng));
        Scalar k = random_scalar(rng);
        std::vector<BracketTerm> terms{{2, 3, 1, Scalar(-hh) * Scalar::i()}};
        if (!l.is_zero()) terms.push_back({1, 2, 2, l});
        if (!k.is_zero()) terms.push_back({1, 2, 3, k});
        A = make_algebra(1, terms);
        break;
      }
    }
  } else {
    A = pick(rng) == 0 ? heisenberg(n)
                       : (n == 2 ? twisted_heisenberg(2, random_scalar(rng))
                                 : heisenberg(n));
  }

  // random constant symmetric deformation (retry on degeneracy)
  for (int attempt = 0; attempt < 5; ++attempt) {
    InvariantTensor h = levi_form(A);
    InvariantTensor hinv = levi_inverse(h);
    InvariantTensor mul(n, {lo(K_H), lo(K_H)});
    for (int a = 2; a <= n + 1; ++a)
      for (int b = a; b <= n + 1; ++b) {
        Scalar v = random_scalar(rng) * Scalar(Rational(1, 4));
        mul.set({a, b}, v);
        mul.set({b, a}, v);
      }
    // mu_a^{b-bar} = mu_{ag} h^{g b-bar}
    InvariantTensor mu = contract(mul, hinv, {{1, 0}});
    try {
      A = deform(A, mu);
      break;
    } catch (const DegenerateDeformation&) {
      continue;
    }
  }

  // random invertible holomorphic frame mixing: S = diag(1, B, conj(B))
  const int L = 2 * n + 1;
  Mat S(L, Vec(L));
  S[0][0] = Scalar(1);
  Mat B(n, Vec(n));
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        B[i][j] = (i == j ? Scalar(1) : Scalar(0)) + random_scalar(rng) * Scalar(Rational(1, 3));
  } while (determinant(B).is_zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S[1 + i][1 + j] = B[i][j];
      S[1 + n + i][1 + n + j] = B[i][j].conj();
    }
  A = change_frame(A, S);

  std::uniform_int_distribution<int> lam(1, 5);
  return rescale(A, Rational(lam(rng), lam(rng)));
}

// Random symmetric real perturbation with entries at degrees 1..trunc-1
// (or up to maxdeg when given).
inline PhiExpansion random_phi(const PseudohermitianData& P, int trunc,
                               std::mt19937& rng, int maxdeg = -1) {
  PhiExpansion phi = zero_phi(P.n, trunc);
  for (int d = 1; d < trunc; ++d) {
    if (maxdeg >= 0 && d > maxdeg) break;
    InvariantTensor t(P.n, {lo(K_M), lo(K_M)});
    t.for_each([&](const std::vector<int>& idx) { t.set(idx, random_scalar(rng)); });
    t = (t + t.permuted({1, 0})).scaled(Scalar(Rational(1, 2)));
    t = (t + t.conj()).scaled(Scalar(Rational(1, 2)));
    if (!t.is_zero()) phi.phi.set_coeff(d, t);
  }
  return phi;
}

}  // namespace achcr::testing

#endif
