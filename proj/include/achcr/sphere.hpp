#ifndef ACHCR_SPHERE_HPP
#define ACHCR_SPHERE_HPP

#include "achcr/pseudoherm.hpp"

namespace achcr {

struct DegreeBoundExceeded : std::domain_error {
  explicit DegreeBoundExceeded(const std::string& what) : std::domain_error(what) {}
};

// Leading coefficients of the first variation of the solved metric at the
// standard CR sphere: c_l multiplies the l-th sublaplacian power of the
// deformation tensor in the rho^{2l} metric coefficient, and a is the
// top-order coefficient in the variation of the obstruction tensor.
struct VariationCoefficients {
  int n = 0;
  std::vector<Rational> c;  // c[l-1] holds c_l, l = 1..n
  Rational a;
};

// c_1 = 2/n, c_l = -c_{l-1}/(l(n+1-l)), a = -c_n/2.
VariationCoefficients leading_recursion(int n);

// a == (-1)^n / (n!)^2, exactly.
std::vector<std::string> closed_form_check(int n);

enum class DeformedQuantity { Levi, Nijenhuis, Torsion, Ricci };

// Exact Taylor coefficients at t = 0 of the pseudohermitian invariants of
// deform(A, t mu). Every sampled entry times a power of det of the
// deformed Levi form is a polynomial in t; the oracle reconstructs that
// polynomial by interpolation at rational sample points (verified on spare
// samples) and divides back as a power series. Polynomial degrees above
// degree_bound raise DegreeBoundExceeded.
class DeformationOracle {
 public:
  // mu_lowered: mu_{ab}, slots (lo H, lo H), symmetric.
  DeformationOracle(const CRFrameAlgebra& A, const InvariantTensor& mu_lowered,
                    int degree_bound = 40);

  // k-th Taylor coefficient of the named invariant (k >= 0).
  InvariantTensor taylor(DeformedQuantity q, int k) const;

 private:
  int n_;
  int bound_;
  std::vector<Rational> ts_;
  std::vector<Scalar> det_;
  std::vector<InvariantTensor> h_, N_, A_, R_;
  std::vector<Scalar> dcoeffs_;  // det of the deformed Levi form, as a polynomial
};

// First variation at a flat structure (vanishing torsion, Nijenhuis and
// curvature): the oracle derivative of (h, N, A, Ricci) must equal
//   h' = 0,
//   N'_{abc} = grad_a mu_{bc} - grad_b mu_{ac},
//   A'_{ab} = -grad_0 mu_{ab},
//   R'_{ab-bar} = -grad_a grad^{s-bar} mu_{b-bar s-bar}
//                 - grad_{b-bar} grad^t mu_{at}.
// Returns mismatch descriptions (empty = all four match).
std::vector<std::string> variation_formula_check(const CRFrameAlgebra& A,
                                                 const InvariantTensor& mu_lowered,
                                                 int degree_bound = 40);

}  // namespace achcr

#endif
