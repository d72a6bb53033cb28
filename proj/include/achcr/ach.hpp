#ifndef ACHCR_ACH_HPP
#define ACHCR_ACH_HPP

#include "achcr/pseudoherm.hpp"
#include "achcr/series.hpp"

namespace achcr {

struct NormalFormViolation : std::domain_error {
  explicit NormalFormViolation(const std::string& what) : std::domain_error(what) {}
};

// Perturbation phi_{ij} of the model metric, a symmetric real 2-tensor
// over the boundary frame {T, Z_a, Zb_a} with series coefficients,
// vanishing at rho = 0.
struct PhiExpansion {
  RhoSeries phi;  // slots (lo M, lo M)
};

int default_truncation(int n);  // 2n + 6
PhiExpansion zero_phi(int n, int trunc);
void check_phi(const PhiExpansion& phi);  // throws NormalFormViolation

struct ACHMetric {
  RhoSeries g;     // g_{IJ}, slots (lo ALL, lo ALL)
  RhoSeries ginv;  // g^{IJ}
};

// g_oo = 4, g_o0 = g_oa = 0, g_00 = 1 + phi_00, g_0a = phi_0a,
// g_{ab-bar} = h + phi_{ab-bar}, g_{ab} = phi_{ab}.
ACHMetric assemble(const PseudohermitianData& P, const PhiExpansion& phi);

// Covariant derivative along the extended connection; appends one lower
// slot over the full index range. Transverse direction acts on a degree-d
// coefficient as multiplication by (d - #slots), where a lower slot
// weighs +1 (+2 for Reeb) and an upper slot the negative; the Reeb and
// CR directions act as rho^2 nabla_0 and rho nabla_a.
RhoSeries extended_derivative(const PseudohermitianData& P, const RhoSeries& S);

// Torsion Theta_{IJ}^L of the extended connection: an exact polynomial
// with Theta_{a b-bar}^0 = i h, Theta_{0a}^{b-bar} = rho^2 A_a^{b-bar},
// Theta_{ab}^{c-bar} = -rho N_{ab}^{c-bar} plus conjugates/antisymmetry.
RhoSeries extended_torsion(const PseudohermitianData& P);

struct Christoffel {
  RhoSeries Dlow;  // D_{IKJ}
  RhoSeries Dup;   // D_I^K_J = g^{KL} D_{ILJ}
};

// Difference tensor between the Levi-Civita connection of g and the
// extended connection, from the Koszul-type formula.
Christoffel christoffel(const ACHMetric& m, const PseudohermitianData& P);

// Independent closed-form transcription of D_{IKJ} for a normal-form
// metric, assembled row by row; exists solely as an oracle against
// christoffel().
RhoSeries christoffel_closed_form(const PseudohermitianData& P, const PhiExpansion& phi);

// Ricci tensor of the extended connection (exact polynomial).
RhoSeries extended_ricci(const PseudohermitianData& P);

RhoSeries ricci(const ACHMetric& m, const PseudohermitianData& P);

// Ein = Ric + (n+2)/2 g.
RhoSeries einstein(const ACHMetric& m, const PseudohermitianData& P);

// g^{IJ} grad_K Ein_{IJ} - 2 g^{IJ} grad_I Ein_{JK} for the Levi-Civita
// connection of g; vanishes identically at every stored degree.
RhoSeries bianchi_residual(const ACHMetric& m, const PseudohermitianData& P,
                           const RhoSeries& Ein);

// Order-counting consequences of the contracted Bianchi identity: given
// that the Einstein tensor vanishes to the orders established after step
// m of the solve, three scalar/one-form combinations vanish one order
// beyond their naive one. Returns failure descriptions (empty = holds).
std::vector<std::string> bianchi_order_failures(const ACHMetric& m,
                                                const PseudohermitianData& P,
                                                const PhiExpansion& phi,
                                                const RhoSeries& Ein, int step);

// Series whose coefficients are slices of S at the pattern (-1 = free,
// running over the corresponding free slot).
RhoSeries slice_series(const RhoSeries& S, const std::vector<int>& pattern,
                       const std::vector<Slot>& free_slots);

// Tanaka-Webster covariant derivative applied coefficientwise (appends a
// lower boundary slot, no degree shift).
RhoSeries tw_derivative_series(const PseudohermitianData& P, const RhoSeries& S);

}  // namespace achcr

#endif
