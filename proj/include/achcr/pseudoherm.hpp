#ifndef ACHCR_PSEUDOHERM_HPP
#define ACHCR_PSEUDOHERM_HPP

#include "achcr/algebra.hpp"

namespace achcr {

struct InconsistentStructureEquation : std::domain_error {
  explicit InconsistentStructureEquation(const std::string& what)
      : std::domain_error(what) {}
};

// Tanaka-Webster data of an invariant pseudohermitian structure: the
// connection coefficients, torsion, Nijenhuis tensor, and curvature with
// its R/W/V decomposition.
struct PseudohermitianData {
  int n = 0;
  CRFrameAlgebra alg;
  InvariantTensor h;      // h_{ab-bar}        (lo H, lo A)
  InvariantTensor hinv;   // h^{ab-bar}        (up H, up A)
  InvariantTensor Gamma;  // Gamma_{b a}^c     (lo M, lo H, up H)
  InvariantTensor A_up;   // A_{b-bar}^c       (lo A, up H)
  InvariantTensor A_lo;   // A_{ab}            (lo H, lo H)
  InvariantTensor N_up;   // N_{ab}^{c-bar}    (lo H, lo H, up A)
  InvariantTensor N_lo;   // N_{abc}           (lo H, lo H, lo H)
  InvariantTensor R4;     // R_{a b-bar s t-bar}
  InvariantTensor W3h;    // W_{a b-bar c}
  InvariantTensor W3a;    // W_{a b-bar c-bar}
  InvariantTensor V4hh;   // V_{a b-bar s t}
  InvariantTensor V4aa;   // V_{a b-bar s-bar t-bar}
  InvariantTensor Ricci;  // R_{a b-bar}
  Scalar Rscalar;
};

// Full pipeline: exact Gaussian elimination of the structure equation
// plus metric compatibility, then curvature and its decomposition.
PseudohermitianData tw_connection(const CRFrameAlgebra& A);

// Independent closed-form extraction of (Gamma, A_up, N_up) used as a
// test oracle against the linear-solve path.
struct ConnectionParts {
  InvariantTensor Gamma, A_up, N_up;
};
ConnectionParts tw_connection_direct(const CRFrameAlgebra& A);

// Full torsion tensor Theta_{xy}^z of the connection over the boundary
// frame; used to re-verify the normalization conditions.
InvariantTensor tw_torsion(const PseudohermitianData& P);

// Invariant covariant derivative: appends one lower slot over {0, a, a-bar}
// at the end. Slots of S must not admit transverse indices.
InvariantTensor covariant_derivative(const PseudohermitianData& P,
                                     const InvariantTensor& S,
                                     bool allow_transverse_slots = false);

// Contracts `pairing` slot `pslot` against slot `s` of T and puts the
// remaining pairing slot back at position s (in-place raise/lower).
InvariantTensor apply_pairing_at(const InvariantTensor& pairing, int pslot,
                                 const InvariantTensor& T, int s);

// Index raising and lowering with the Levi form. The target kind names
// the resulting free slot; the summed values are of the opposite kind
// (X^a = h^{a b-bar} X_{b-bar}, X_a = h_{a b-bar} X^{b-bar}, and so on).
InvariantTensor raise_to_hol(const PseudohermitianData& P, const InvariantTensor& T, int s);
InvariantTensor raise_to_ahol(const PseudohermitianData& P, const InvariantTensor& T, int s);
InvariantTensor lower_to_hol(const PseudohermitianData& P, const InvariantTensor& T, int s);
InvariantTensor lower_to_ahol(const PseudohermitianData& P, const InvariantTensor& T, int s);

// Exact verification of the structural identities satisfied by every
// valid input: torsion symmetry, the two Nijenhuis symmetries, curvature
// conjugate symmetry, the curvature asymmetry relation, the W and V
// formulas, and the relation between the two Ricci contractions.
// Returns human-readable descriptions of any failures (empty = all hold).
std::vector<std::string> pseudohermitian_identity_failures(const PseudohermitianData& P);

// Recomputes the data from rescale(alg, lambda); theta -> lambda theta.
PseudohermitianData constant_rescale(const PseudohermitianData& P, const Rational& lambda);

}  // namespace achcr

#endif
