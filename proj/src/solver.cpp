#include "achcr/solver.hpp"

#include <string>

namespace achcr {

namespace {

std::string deg_entry(int d, int i, int j) {
  return "rho^" + std::to_string(d) + " coefficient of Ein_{" + std::to_string(i) +
         "," + std::to_string(j) + "}";
}

// nabla^b S_{...b} over the trailing derivative slot of cd(S), for a
// rank-1 holomorphic tensor.
Scalar div_hol1(const PseudohermitianData& P, const InvariantTensor& X) {
  return pair_slots(P.hinv, covariant_derivative(P, X), 0, 1).get({});
}

// nabla^b S_{ab} for a rank-2 (lo H, lo H) tensor; result (lo H).
InvariantTensor div_hol2(const PseudohermitianData& P, const InvariantTensor& S) {
  return contract(P.hinv, covariant_derivative(P, S), {{0, 1}, {1, 2}});
}

InvariantTensor n_upper3(const PseudohermitianData& P) {
  return raise_to_hol(P, raise_to_hol(P, raise_to_hol(P, P.N_lo.conj(), 0), 1), 2);
}

// N^{gab}_{,g}  (up H, up H)
InvariantTensor n_upper_div(const PseudohermitianData& P) {
  return covariant_derivative(P, n_upper3(P)).traced(0, 3);
}

InvariantTensor herm_block(const InvariantTensor& c, int n) {
  InvariantTensor t(n, {lo(K_H), lo(K_A)});
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) t.set({a, b + n}, c.get({a, b + n}));
  return t;
}

InvariantTensor hol_block(const InvariantTensor& c, int n) {
  InvariantTensor t(n, {lo(K_H), lo(K_H)});
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) t.set({a, b}, c.get({a, b}));
  return t;
}

}  // namespace

int SolverTargets::offset(int n, int i, int j) const {
  IndexKind ki = kind_of(n, i), kj = kind_of(n, j);
  auto cr = [](IndexKind k) { return k == IndexKind::Hol || k == IndexKind::AntiHol; };
  if (!cr(ki) && !cr(kj)) return 3;  // (inf,inf), (inf,0), (0,0)
  if (!cr(ki) || !cr(kj)) return 2;  // (inf,a), (0,a) and conjugates
  return ki == kj ? 1 : 3;           // (a,b) vs (a,b-bar)
}

PhiExpansion seed(const PseudohermitianData& P) {
  int n = P.n;
  PhiExpansion phi = zero_phi(n, default_truncation(n));
  InvariantTensor t(n, {lo(K_M), lo(K_M)});

  // N_{as t} N_{b-bar}^{ts} and its trace
  InvariantTensor M = raise_to_hol(P, raise_to_hol(P, P.N_lo.conj(), 1), 2);
  InvariantTensor nn = contract(P.N_lo, M, {{1, 2}, {2, 1}});
  Scalar nnt = pair_slots(P.hinv, nn, 0, 1).get({});

  // nabla^g N_{g b a}
  InvariantTensor dN = covariant_derivative(P, P.N_lo);
  InvariantTensor divN = contract(P.hinv, dN, {{0, 0}, {1, 3}});  // (b, a)

  Scalar trace_part = (P.Rscalar - Scalar(2) * nnt) * Scalar(Rational(1, 2 * (n + 1)));
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar w = (P.Ricci.get({a, b + n}) - Scalar(2) * nn.get({a, b + n}) -
                  trace_part * P.h.get({a, b + n})) *
                 Scalar(Rational(-2, n + 2));
      t.set({a, b + n}, w);
      t.set({b + n, a}, w);
      Scalar v = Scalar(Rational(0), Rational(-2)) * P.A_lo.get({a, b}) -
                 Scalar(Rational(2, n)) * (divN.get({a, b}) + divN.get({b, a}));
      t.set({a, b}, v);
      t.set({a + n, b + n}, v.conj());
    }
  if (!t.is_zero()) phi.phi.set_coeff(2, t);
  check_phi(phi);
  return phi;
}

IndicialFactors indicial(int d, int n) {
  IndicialFactors f;
  f.p0a = Rational(-(d + 1) * (d - 2 * n - 3), 8);
  f.pab = Rational(-d * (d - 2 * n - 2), 8);
  f.ptf = Rational(-(d * d - (2 * n + 2) * d - 8), 8);
  f.M[0][0] = Rational(-(d * d - (2 * n + 4) * d - 4 * n), 8);
  f.M[0][1] = Rational(d - 2, 2);
  f.M[1][0] = Rational(n * (d - 4), 8);
  f.M[1][1] = Rational(-(d * d - (4 * n + 2) * d - 8), 8);
  f.detM = f.M[0][0] * f.M[1][1] - f.M[0][1] * f.M[1][0];
  return f;
}

SolveResult solve(const PseudohermitianData& P, const PhiExpansion& seed_phi,
                  const SolverTargets& targets, const SolveOptions& opt) {
  const int n = P.n;
  const int trunc = seed_phi.phi.trunc();

  SolveResult res;
  res.phi = seed_phi;

  ACHMetric met;
  RhoSeries Ein;
  auto recompute = [&] {
    met = assemble(P, res.phi);
    Ein = einstein(met, P);
  };
  auto record_bianchi = [&](const std::string& where) {
    if (!opt.checks) return;
    RhoSeries B = bianchi_residual(met, P, Ein);
    if (!B.is_O(B.trunc()))
      res.obs.residuals.push_back(where + ": contracted Bianchi residual nonzero");
  };
  auto entry_zero_below = [&](int i, int j, int upto) {
    int cap = std::min(upto, trunc);
    for (int k = 0; k < cap; ++k)
      if (!Ein.coeff(k).get({i, j}).is_zero()) return k;
    return -1;
  };

  recompute();
  if (!Ein.is_O(std::min(3, trunc)))
    throw FloorAssertFailed("seed metric is not Einstein to third order");
  record_bianchi("seed");

  for (int m = 1; m <= 2 * n + 1; ++m) {
    const std::string tag = "step " + std::to_string(m);

    // (a) Ein_{0a} at degree m+1 and Ein_{ab} at degree m
    {
      InvariantTensor t(n, {lo(K_M), lo(K_M)});
      InvariantTensor e1 = Ein.coeff(m + 1);
      if (m + 1 < 3) {
        for (int a = 2; a <= n + 1; ++a)
          if (!e1.get({1, a}).is_zero())
            throw FloorAssertFailed(tag + ": " + deg_entry(m + 1, 1, a) +
                                    " nonzero below the degree floor");
      } else {
        Rational p = indicial(m + 1, n).p0a;
        if (p == 0) throw IndicialSingular(tag + ": p_0a vanished at degree " +
                                           std::to_string(m + 1));
        for (int a = 2; a <= n + 1; ++a) {
          Scalar ps = -e1.get({1, a}) / Scalar(p);
          t.set({1, a}, ps);
          t.set({a, 1}, ps);
          t.set({1, a + n}, ps.conj());
          t.set({a + n, 1}, ps.conj());
        }
        if (!t.is_zero()) res.phi.phi.add_coeff(m + 1, t);
      }

      InvariantTensor e2 = Ein.coeff(m);
      if (m < 3) {
        for (int a = 2; a <= n + 1; ++a)
          for (int b = 2; b <= n + 1; ++b)
            if (!e2.get({a, b}).is_zero())
              throw FloorAssertFailed(tag + ": " + deg_entry(m, a, b) +
                                      " nonzero below the degree floor");
      } else {
        Rational p = indicial(m, n).pab;
        if (p == 0)
          throw IndicialSingular(tag + ": p_ab vanished at degree " + std::to_string(m));
        InvariantTensor s(n, {lo(K_M), lo(K_M)});
        for (int a = 2; a <= n + 1; ++a)
          for (int b = 2; b <= n + 1; ++b) {
            Scalar ps = -e2.get({a, b}) / Scalar(p);
            s.set({a, b}, ps);
            s.set({a + n, b + n}, ps.conj());
          }
        if (!s.is_zero()) res.phi.phi.add_coeff(m, s);
      }

      recompute();
      record_bianchi(tag + "a");
      for (int a = 2; a <= n + 1; ++a) {
        if (m + 1 < trunc && !Ein.coeff(m + 1).get({1, a}).is_zero())
          throw SolverAssert(tag + "a: correction failed to cancel " +
                             deg_entry(m + 1, 1, a));
        for (int b = 2; b <= n + 1; ++b)
          if (m < trunc && !Ein.coeff(m).get({a, b}).is_zero())
            throw SolverAssert(tag + "a: correction failed to cancel " +
                               deg_entry(m, a, b));
      }
    }

    // (b) trace-free part of Ein_{ab-bar} at degree m+2
    {
      int d = m + 2;
      InvariantTensor e = herm_block(Ein.coeff(d), n);
      Scalar tr = pair_slots(P.hinv, e, 0, 1).get({});
      InvariantTensor tf = e - P.h.scaled(tr * Scalar(Rational(1, n)));
      if (!tf.is_zero()) {
        Rational p = indicial(d, n).ptf;
        if (p == 0)
          throw IndicialSingular(tag + ": p_tf vanished at degree " + std::to_string(d));
        InvariantTensor t(n, {lo(K_M), lo(K_M)});
        for (int a = 2; a <= n + 1; ++a)
          for (int b = 2; b <= n + 1; ++b) {
            Scalar ps = -tf.get({a, b + n}) / Scalar(p);
            t.set({a, b + n}, ps);
            t.set({b + n, a}, ps);
          }
        res.phi.phi.add_coeff(d, t);
        recompute();
        record_bianchi(tag + "b");
        InvariantTensor e2 = herm_block(Ein.coeff(d), n);
        Scalar tr2 = pair_slots(P.hinv, e2, 0, 1).get({});
        if (!(e2 - P.h.scaled(tr2 * Scalar(Rational(1, n)))).is_zero())
          throw SolverAssert(tag + "b: correction failed to cancel the trace-free part at degree " +
                             std::to_string(d));
      }
    }

    // (c) Ein_00 and Ein_a^a at degree m+2, jointly
    {
      int d = m + 2;
      Scalar e00 = Ein.coeff(d).get({1, 1});
      Scalar etr = pair_slots(P.hinv, herm_block(Ein.coeff(d), n), 0, 1).get({});
      IndicialFactors f = indicial(d, n);
      if (f.detM == 0)
        throw IndicialSingular(tag + ": trace system singular at degree " +
                               std::to_string(d));
      Scalar det(f.detM);
      Scalar psi00 = (Scalar(f.M[1][1]) * (-e00) - Scalar(f.M[0][1]) * (-etr)) / det;
      Scalar psitr = (Scalar(f.M[0][0]) * (-etr) - Scalar(f.M[1][0]) * (-e00)) / det;
      InvariantTensor t(n, {lo(K_M), lo(K_M)});
      t.set({1, 1}, psi00);
      Scalar per = psitr * Scalar(Rational(1, n));
      for (int a = 2; a <= n + 1; ++a)
        for (int b = 2; b <= n + 1; ++b) {
          Scalar v = per * P.h.get({a, b + n});
          t.set({a, b + n}, v);
          t.set({b + n, a}, v);
        }
      if (!t.is_zero()) res.phi.phi.add_coeff(d, t);
      recompute();
      record_bianchi(tag + "c");
      if (!Ein.coeff(d).get({1, 1}).is_zero())
        throw SolverAssert(tag + "c: correction failed to cancel " + deg_entry(d, 1, 1));
      if (!pair_slots(P.hinv, herm_block(Ein.coeff(d), n), 0, 1).get({}).is_zero())
        throw SolverAssert(tag + "c: correction failed to cancel the trace at degree " +
                           std::to_string(d));
    }

    // (d) components with a transverse index vanish automatically
    {
      if (int k = entry_zero_below(0, 0, m + 3); k >= 0)
        throw BianchiAssertFailed(tag + "d: " + deg_entry(k, 0, 0) + " nonzero");
      if (int k = entry_zero_below(0, 1, m + 3); k >= 0)
        throw BianchiAssertFailed(tag + "d: " + deg_entry(k, 0, 1) + " nonzero");
      for (int a = 2; a <= 2 * n + 1; ++a)
        if (int k = entry_zero_below(0, a, m + 2); k >= 0)
          throw BianchiAssertFailed(tag + "d: " + deg_entry(k, 0, a) + " nonzero");
      if (opt.checks) {
        for (const std::string& s : bianchi_order_failures(met, P, res.phi, Ein, m))
          res.obs.residuals.push_back(tag + "d: " + s);
      }
    }
  }

  // final orders and extraction
  res.obs.E = InvariantTensor(n, {lo(K_ALL), lo(K_ALL)});
  for (int i = 0; i < alphabet_size(n); ++i)
    for (int j = 0; j < alphabet_size(n); ++j) {
      int target = 2 * n + 1 + targets.offset(n, i, j);
      if (int k = entry_zero_below(i, j, target); k >= 0)
        throw BianchiAssertFailed("final: " + deg_entry(k, i, j) + " nonzero");
      res.obs.E.set({i, j}, Ein.coeff(target).get({i, j}));
    }
  res.obs.O = hol_block(Ein.coeff(2 * n + 2), n);
  res.Ein = Ein;

  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b)
      if (res.obs.O.get({a, b}) != res.obs.O.get({b, a}))
        res.obs.residuals.push_back("obstruction tensor is not symmetric");
  for (int i = 0; i < alphabet_size(n); ++i)
    for (int j = 0; j < alphabet_size(n); ++j)
      if (res.obs.E.get({conj_index(n, i), conj_index(n, j)}) !=
          res.obs.E.get({i, j}).conj())
        res.obs.residuals.push_back("E tensor is not hermitian at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");

  auto uv = compute_u_v(P, res.obs.E);
  res.obs.u = uv.first;
  res.obs.v = uv.second;
  if (!res.obs.u.is_real()) res.obs.residuals.push_back("u is not real");
  return res;
}

std::vector<std::string> second_obstruction_check(const PseudohermitianData& P,
                                                  const RhoSeries& Ein,
                                                  const InvariantTensor& O) {
  int n = P.n;
  std::vector<std::string> out;
  InvariantTensor c = Ein.coeff(2 * n + 3);
  InvariantTensor divO = div_hol2(P, O);
  InvariantTensor Nupup = raise_to_ahol(P, raise_to_ahol(P, P.N_lo, 1), 2);
  InvariantTensor NO = contract(Nupup, O.conj(), {{1, 0}, {2, 1}});
  for (int a = 2; a <= n + 1; ++a) {
    Scalar lhs = c.get({1, a});
    Scalar rhs = -Scalar::i() * (divO.get({a}) + NO.get({a}));
    if (lhs != rhs)
      out.push_back("rho^" + std::to_string(2 * n + 3) +
                    " coefficient of Ein_{0," + std::to_string(a) +
                    "} differs from the obstruction divergence: " + to_string(lhs) +
                    " vs " + to_string(rhs));
  }
  return out;
}

Scalar double_divergence(const PseudohermitianData& P, const InvariantTensor& S,
                         const Scalar& t) {
  int n = P.n;
  InvariantTensor dS = covariant_derivative(P, S);
  Scalar dd = div_hol1(P, contract(P.hinv, dS, {{0, 1}, {1, 2}}));
  InvariantTensor Aup = raise_to_hol(P, raise_to_hol(P, P.A_lo.conj(), 0), 1);
  Scalar aterm = contract(Aup, S, {{0, 0}, {1, 1}}).get({});
  Scalar ngrad = contract(n_upper3(P), dS, {{0, 2}, {1, 0}, {2, 1}}).get({});
  Scalar ndiv = contract(n_upper_div(P), S, {{0, 0}, {1, 1}}).get({});
  return dd - Scalar::i() * aterm - (Scalar(1) + t * Scalar(n)) * ngrad -
         (Scalar(1) + t * Scalar(n + 1)) * ndiv;
}

std::vector<std::string> divergence_identity(const PseudohermitianData& P,
                                             const InvariantTensor& O) {
  std::vector<std::string> out;
  Scalar s = double_divergence(P, O, Scalar(0));

  // independent assembly of D^{ab} O_{ab}: raise O and the derivative
  // indices instead of the coefficient tensors
  InvariantTensor Oup = raise_to_ahol(P, raise_to_ahol(P, O, 0), 1);  // O^{a-bar b-bar}
  InvariantTensor cdcd = covariant_derivative(P, covariant_derivative(P, O));
  Scalar dd = pair_slots(P.hinv, pair_slots(P.hinv, cdcd, 1, 2), 0, 1).get({});
  Scalar aterm = contract(P.A_lo.conj(), Oup, {{0, 0}, {1, 1}}).get({});
  InvariantTensor dO = covariant_derivative(P, O);
  Scalar ngrad = contract(P.N_lo.conj(),
                          raise_to_ahol(P, raise_to_ahol(P, raise_to_ahol(P, dO, 0), 1), 2),
                          {{0, 2}, {1, 0}, {2, 1}})
                     .get({});
  InvariantTensor dNc = covariant_derivative(P, P.N_lo.conj());
  InvariantTensor divNlow = contract(P.hinv, dNc, {{1, 0}, {0, 3}});  // (a-bar, b-bar)
  Scalar ndiv = contract(divNlow, Oup, {{0, 0}, {1, 1}}).get({});
  Scalar direct = dd - Scalar::i() * aterm - ngrad - ndiv;

  if (s != direct)
    out.push_back("t = 0 member of the divergence family differs from the direct assembly: " +
                  to_string(s) + " vs " + to_string(direct));
  if (!s.is_real())
    out.push_back("double divergence of the obstruction has nonzero imaginary part: " +
                  to_string(s));
  return out;
}

std::vector<std::string> scaling_law(const CRFrameAlgebra& A, const Rational& lambda) {
  std::vector<std::string> out;
  auto run = [](const CRFrameAlgebra& B) {
    PseudohermitianData P = tw_connection(B);
    SolveOptions opt;
    opt.checks = false;
    return solve(P, seed(P), {}, opt);
  };
  SolveResult base = run(A);
  SolveResult scaled = run(rescale(A, lambda));
  int n = base.obs.O.n();
  Scalar f(rational_pow(lambda, -n));
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b)
      if (scaled.obs.O.get({a, b}) != f * base.obs.O.get({a, b}))
        out.push_back("obstruction at (" + std::to_string(a) + "," + std::to_string(b) +
                      ") scales as " + to_string(scaled.obs.O.get({a, b})) +
                      " instead of " + to_string(f * base.obs.O.get({a, b})));
  return out;
}

std::pair<Scalar, Scalar> compute_u_v(const PseudohermitianData& P,
                                      const InvariantTensor& E) {
  int n = P.n;
  InvariantTensor Einfa(n, {lo(K_H)}), Einfab(n, {lo(K_A)});
  InvariantTensor E0a(n, {lo(K_H)}), E0ab(n, {lo(K_A)});
  InvariantTensor Ehh(n, {lo(K_H), lo(K_H)}), Eaa(n, {lo(K_A), lo(K_A)});
  InvariantTensor Ehb(n, {lo(K_H), lo(K_A)});
  for (int a = 2; a <= n + 1; ++a) {
    Einfa.set({a}, E.get({0, a}));
    Einfab.set({a + n}, E.get({0, a + n}));
    E0a.set({a}, E.get({1, a}));
    E0ab.set({a + n}, E.get({1, a + n}));
    for (int b = 2; b <= n + 1; ++b) {
      Ehh.set({a, b}, E.get({a, b}));
      Eaa.set({a + n, b + n}, E.get({a + n, b + n}));
      Ehb.set({a, b + n}, E.get({a, b + n}));
    }
  }

  Scalar sInf = div_hol1(P, Einfa);
  Scalar sInfBar = div_hol1(P, Einfab.conj()).conj();
  Scalar u = Scalar(Rational(-1, n + 1)) *
             (E.get({0, 1}) - Scalar::i() * sInf + Scalar::i() * sInfBar);

  Scalar s0 = div_hol1(P, E0a);
  Scalar s0Bar = div_hol1(P, E0ab.conj()).conj();
  Scalar Etr = pair_slots(P.hinv, Ehb, 0, 1).get({});

  InvariantTensor Nup3 = n_upper3(P);
  InvariantTensor Ndiv = n_upper_div(P);
  auto second_order = [&](const InvariantTensor& T) {
    InvariantTensor dT = covariant_derivative(P, T);
    Scalar dd = div_hol1(P, contract(P.hinv, dT, {{0, 1}, {1, 2}}));
    Scalar ngrad = contract(Nup3, dT, {{0, 2}, {1, 0}, {2, 1}}).get({});
    Scalar ndiv = contract(Ndiv, T, {{0, 0}, {1, 1}}).get({});
    return dd + ngrad + ndiv;
  };
  Scalar hol = second_order(Ehh);
  Scalar anti = second_order(Eaa.conj()).conj();

  Scalar v = -E.get({1, 1}) + Scalar(Rational(2, n)) * Etr -
             Scalar(Rational(1, n)) * (sInf + sInfBar) +
             Scalar(Rational(2, n * (n + 2))) * Scalar::i() * (s0 - s0Bar) -
             Scalar(Rational(2, n * (n + 1))) * (hol + anti);
  return {u, v};
}

}  // namespace achcr
