#ifndef ACHCR_SOLVER_HPP
#define ACHCR_SOLVER_HPP

#include <array>

#include "achcr/ach.hpp"

namespace achcr {

struct SolverAssert : std::runtime_error {
  explicit SolverAssert(const std::string& what) : std::runtime_error(what) {}
};
// An indicial factor vanished before the obstructed order.
struct IndicialSingular : SolverAssert {
  explicit IndicialSingular(const std::string& what) : SolverAssert(what) {}
};
// A coefficient below the degree-3 floor failed to vanish on its own.
struct FloorAssertFailed : SolverAssert {
  explicit FloorAssertFailed(const std::string& what) : SolverAssert(what) {}
};
// A component that the contracted Bianchi identity should make vanish
// automatically did not.
struct BianchiAssertFailed : SolverAssert {
  explicit BianchiAssertFailed(const std::string& what) : SolverAssert(what) {}
};

// Order offsets a(I,J): the Einstein tensor of the solved metric is
// O(rho^{2n+1+a(I,J)}) componentwise. Symmetric and conjugation-invariant.
struct SolverTargets {
  int offset(int n, int i, int j) const;
};

// Lowest-order perturbation making the Einstein tensor O(rho^3):
// phi_{ab-bar} and phi_{ab} carry the rho^2 coefficients built from the
// Tanaka-Webster curvature, torsion and Nijenhuis invariants; phi_00 and
// phi_0a vanish through rho^2.
PhiExpansion seed(const PseudohermitianData& P);

// Eigenvalues of the linearized Einstein operator on a rho^d metric
// perturbation, by component; the 2x2 block acts on (psi_00, psi_a^a).
struct IndicialFactors {
  Rational p0a;  // psi_0a
  Rational pab;  // psi_ab
  Rational ptf;  // trace-free psi_{ab-bar}
  std::array<std::array<Rational, 2>, 2> M;
  Rational detM;
};
IndicialFactors indicial(int d, int n);

struct ObstructionResult {
  InvariantTensor O;  // O_{ab} = rho^{2n+2}-coefficient of Ein_{ab}  (lo H, lo H)
  InvariantTensor E;  // E_{IJ} = rho^{2n+1+a(I,J)}-coefficient       (lo ALL, lo ALL)
  Scalar u;
  Scalar v;
  std::vector<std::string> residuals;  // failed internal checks (empty = clean)
};

struct SolveOptions {
  bool checks = true;  // contracted-Bianchi and order-form verification per sub-step
};

struct SolveResult {
  PhiExpansion phi;  // solved metric perturbation
  RhoSeries Ein;     // Einstein tensor of the solved metric
  ObstructionResult obs;
};

// Order-by-order construction: for m = 1..2n+1 cancels, in order, the
// rho^{m+1}-coefficient of Ein_{0a} and the rho^m-coefficient of Ein_{ab},
// the trace-free rho^{m+2}-coefficient of Ein_{ab-bar}, and the
// rho^{m+2}-coefficients of Ein_00 and Ein_a^a jointly, recomputing the
// exact Einstein tensor between sub-steps. Components with a transverse
// index are asserted to vanish to the gained order, never corrected.
SolveResult solve(const PseudohermitianData& P, const PhiExpansion& seed_phi,
                  const SolverTargets& targets = {}, const SolveOptions& opt = {});

// The rho^{2n+3}-coefficient of Ein_{0a} is determined by the obstruction:
// it equals -i grad^b O_{ab} - i N_a^{b-bar c-bar} O_{b-bar c-bar}.
std::vector<std::string> second_obstruction_check(const PseudohermitianData& P,
                                                  const RhoSeries& Ein,
                                                  const InvariantTensor& O);

// D_t^{ab} S_{ab} with
// D_t^{ab} = grad^a grad^b - i A^{ab} - (1+tn) N^{gab} grad_g
//            - (1+t(n+1)) N^{gab}_{,g}.
Scalar double_divergence(const PseudohermitianData& P, const InvariantTensor& S,
                         const Scalar& t);

// D^{ab} O_{ab} - D^{a-bar b-bar} O_{a-bar b-bar} = 0, with D the t = 0
// member of the family above (also cross-checked against a directly
// assembled D).
std::vector<std::string> divergence_identity(const PseudohermitianData& P,
                                             const InvariantTensor& O);

// Full pipeline on A and on rescale(A, lambda): the obstruction scales by
// lambda^{-n}.
std::vector<std::string> scaling_law(const CRFrameAlgebra& A, const Rational& lambda);

// Scalar invariants of the E-tensor controlling the log terms at the next
// order; u is real for every valid input.
std::pair<Scalar, Scalar> compute_u_v(const PseudohermitianData& P,
                                      const InvariantTensor& E);

}  // namespace achcr

#endif
