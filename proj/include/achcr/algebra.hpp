#ifndef ACHCR_ALGEBRA_HPP
#define ACHCR_ALGEBRA_HPP

#include <string>
#include <vector>

#include "achcr/linalg.hpp"
#include "achcr/tensor.hpp"

namespace achcr {

struct BadParameter : std::invalid_argument {
  explicit BadParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct BracketConflict : std::invalid_argument {
  explicit BracketConflict(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateLeviForm : std::domain_error {
  DegenerateLeviForm() : std::domain_error("degenerate Levi form") {}
};

struct AsymmetricMu : std::invalid_argument {
  AsymmetricMu() : std::invalid_argument("deformation tensor is not symmetric") {}
};

struct DegenerateDeformation : std::domain_error {
  DegenerateDeformation() : std::domain_error("deformed Levi form is degenerate") {}
};

// One input bracket [e_x, e_y] = c e_z over the boundary alphabet
// (indices 1..2n+1: 1 = T, 2..n+1 = Z_a, n+2..2n+1 = Zb_a).
struct BracketTerm {
  int x, y, z;
  Scalar c;
};

// Left-invariant partially integrable CR structure presented through
// the structure constants of an adapted frame {T, Z_a, Zb_a}.
struct CRFrameAlgebra {
  int n = 0;
  // c_{xy}^z with slots (lower M, lower M, upper M)
  InvariantTensor c;

  Scalar bracket(int x, int y, int z) const { return c.get({x, y, z}); }
};

// Builds the algebra from explicit brackets, closing under antisymmetry
// and reality. A bracket whose image under either closure was also given
// must agree exactly, otherwise BracketConflict.
CRFrameAlgebra make_algebra(int n, const std::vector<BracketTerm>& brackets);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string witness) {
    ok = false;
    violations.push_back(std::move(witness));
  }
};

// Checks antisymmetry, reality, Jacobi, partial integrability,
// adaptedness of T, and Levi nondegeneracy. Report-style: never throws.
ValidationReport validate(const CRFrameAlgebra& A);

// h_{ab-bar} extracted from dtheta(Z_a, Zb_b) = i h_{ab-bar} with
// dtheta(X,Y) = -theta([X,Y]); slots (lower hol, lower antihol).
InvariantTensor levi_form(const CRFrameAlgebra& A);

// Inverse Levi form h^{ab-bar} with slots (upper hol, upper antihol),
// normalized by h_{ab-bar} h^{gb-bar} = delta_a^g.
InvariantTensor levi_inverse(const InvariantTensor& h);

// New frame hat Z_a = Z_a + mu_a^{b-bar} Zb_b; mu has slots
// (lower hol, upper antihol) and must be symmetric once lowered by h.
CRFrameAlgebra deform(const CRFrameAlgebra& A, const InvariantTensor& mu);

// Change of frame e'_i = sum_j S[j][i] e_j over the boundary alphabet;
// S is (2n+1)x(2n+1) indexed by tensor index minus one.
CRFrameAlgebra change_frame(const CRFrameAlgebra& A, const Mat& S);

// "T", "Z1".."Zn", "Zb1".."Zbn" for tensor indices 1..2n+1.
std::string frame_label(int n, int idx);
int parse_frame_label(int n, const std::string& label);

CRFrameAlgebra heisenberg(int n);
CRFrameAlgebra su2();
CRFrameAlgebra twisted_heisenberg(int n, const Scalar& c);
// T -> T / lambda (theta -> lambda theta), lambda > 0.
CRFrameAlgebra rescale(const CRFrameAlgebra& A, const Rational& lambda);

}  // namespace achcr

#endif
