#include "achcr/pseudoherm.hpp"

namespace achcr {

namespace {

// Real-linear system over complex unknowns: each complex unknown splits
// into (re, im) columns, each complex equation into two rows, so that
// conjugated occurrences stay linear.
class RealSystem {
 public:
  RealSystem(int unknowns, int equations)
      : a_(2 * equations, Vec(2 * unknowns)), b_(2 * equations), cols_(2 * unknowns) {}

  void add(int eq, int unk, const Scalar& coeff, bool conjugated) {
    Rational cr = coeff.re, ci = coeff.im;
    Rational sgn = conjugated ? -1 : 1;
    a_[2 * eq][2 * unk] += Scalar(cr);
    a_[2 * eq][2 * unk + 1] += Scalar(-ci * sgn);
    a_[2 * eq + 1][2 * unk] += Scalar(ci);
    a_[2 * eq + 1][2 * unk + 1] += Scalar(cr * sgn);
  }

  void rhs(int eq, const Scalar& v) {
    b_[2 * eq] += Scalar(v.re);
    b_[2 * eq + 1] += Scalar(v.im);
  }

  std::optional<std::vector<Scalar>> solve() {
    auto x = solve_unique(std::move(a_), std::move(b_));
    if (!x) return std::nullopt;
    std::vector<Scalar> out(cols_ / 2);
    for (size_t k = 0; k < out.size(); ++k)
      out[k] = Scalar((*x)[2 * k].re, (*x)[2 * k + 1].re);
    return out;
  }

 private:
  Mat a_;
  Vec b_;
  int cols_;
};

}  // namespace

ConnectionParts tw_connection_direct(const CRFrameAlgebra& alg) {
  const int n = alg.n;
  InvariantTensor h = levi_form(alg);
  InvariantTensor hinv = levi_inverse(h);
  ConnectionParts out{InvariantTensor(n, {lo(K_M), lo(K_H), up(K_H)}),
                      InvariantTensor(n, {lo(K_A), up(K_H)}),
                      InvariantTensor(n, {lo(K_H), lo(K_H), up(K_A)})};
  for (int a = 2; a <= n + 1; ++a)
    for (int g = 2; g <= n + 1; ++g) {
      out.Gamma.set({1, a, g}, alg.bracket(1, a, g));
      for (int s = n + 2; s <= 2 * n + 1; ++s)
        out.Gamma.set({s, a, g}, -alg.bracket(a, s, g));
      out.A_up.set({n + a, g}, -alg.bracket(1, n + a, g));
      for (int b = 2; b <= n + 1; ++b)
        out.N_up.set({a, b, n + g}, alg.bracket(a, b, n + g));
    }
  // Gamma_{sa}^g from metric compatibility against the antiholomorphic rows
  for (int s = 2; s <= n + 1; ++s)
    for (int a = 2; a <= n + 1; ++a)
      for (int g = 2; g <= n + 1; ++g) {
        Scalar acc;
        for (int b = 2; b <= n + 1; ++b)
          for (int d = 2; d <= n + 1; ++d)
            acc += alg.bracket(b, conj_index(n, s), d).conj() *
                   h.get({a, conj_index(n, d)}) * hinv.get({g, conj_index(n, b)});
        out.Gamma.set({s, a, g}, acc);
      }
  // residual consistency: the purely holomorphic structure equation and
  // metric compatibility in the Reeb direction were not used above
  for (int s = 2; s <= n + 1; ++s)
    for (int b = 2; b <= n + 1; ++b)
      for (int g = 2; g <= n + 1; ++g) {
        Scalar lhs = out.Gamma.get({s, b, g}) - out.Gamma.get({b, s, g});
        if (lhs != -alg.bracket(b, s, g))
          throw InconsistentStructureEquation("holomorphic torsion normalization");
      }
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar acc;
      for (int g = 2; g <= n + 1; ++g)
        acc += out.Gamma.get({1, a, g}) * h.get({g, conj_index(n, b)}) +
               out.Gamma.get({1, b, g}).conj() * h.get({a, conj_index(n, g)});
      if (!acc.is_zero())
        throw InconsistentStructureEquation("Reeb-direction metric compatibility");
    }
  return out;
}

InvariantTensor apply_pairing_at(const InvariantTensor& pairing, int pslot,
                                 const InvariantTensor& T, int s) {
  InvariantTensor half = contract(pairing, T, {{pslot, s}});
  std::vector<int> perm(half.rank());
  for (int d = 0; d < half.rank(); ++d) perm[d] = d < s ? d + 1 : (d == s ? 0 : d);
  return half.permuted(perm);
}

InvariantTensor raise_to_hol(const PseudohermitianData& P, const InvariantTensor& T, int s) {
  return apply_pairing_at(P.hinv, 1, T, s);
}
InvariantTensor raise_to_ahol(const PseudohermitianData& P, const InvariantTensor& T, int s) {
  return apply_pairing_at(P.hinv, 0, T, s);
}
InvariantTensor lower_to_hol(const PseudohermitianData& P, const InvariantTensor& T, int s) {
  return apply_pairing_at(P.h, 1, T, s);
}
InvariantTensor lower_to_ahol(const PseudohermitianData& P, const InvariantTensor& T, int s) {
  return apply_pairing_at(P.h, 0, T, s);
}

PseudohermitianData tw_connection(const CRFrameAlgebra& alg) {
  const int n = alg.n;
  const int L = alphabet_size(n);
  PseudohermitianData P;
  P.n = n;
  P.alg = alg;
  P.h = levi_form(alg);
  P.hinv = levi_inverse(P.h);

  // unknown layout: Gamma_{b a}^g, then A_{s-bar}^g, then N_{s-bar t-bar}^g (s<t)
  const int gammaCount = (2 * n + 1) * n * n;
  const int aCount = n * n;
  auto idxGamma = [&](int b, int a, int g) {
    return ((b - 1) * n + (a - 2)) * n + (g - 2);
  };
  auto idxA = [&](int s, int g) { return gammaCount + (s - n - 2) * n + (g - 2); };
  std::vector<std::vector<int>> pairId(L, std::vector<int>(L, -1));
  int nPairs = 0;
  for (int s = n + 2; s < L; ++s)
    for (int t = s + 1; t < L; ++t) pairId[s][t] = nPairs++;
  auto idxN = [&](int s, int t, int g) {
    return gammaCount + aCount + pairId[s][t] * n + (g - 2);
  };
  const int unknowns = gammaCount + aCount + nPairs * n;

  const int eqStructure = (2 * n + 1) * n * n;  // d(theta^g) on all frame pairs
  int eqCount = 0;
  {
    int pairs = 0;
    for (int x = 1; x < L; ++x)
      for (int y = x + 1; y < L; ++y) ++pairs;
    eqCount = pairs * n + eqStructure;
  }
  RealSystem sys(unknowns, eqCount);
  int eq = 0;

  auto is_hol = [&](int i) { return kind_of(n, i) == IndexKind::Hol; };
  auto is_ahol = [&](int i) { return kind_of(n, i) == IndexKind::AntiHol; };

  // structure equation d(theta^g)(e_x, e_y) = -c_{xy}^g
  for (int x = 1; x < L; ++x)
    for (int y = x + 1; y < L; ++y)
      for (int g = 2; g <= n + 1; ++g) {
        if (is_hol(x)) sys.add(eq, idxGamma(y, x, g), Scalar(1), false);
        if (is_hol(y)) sys.add(eq, idxGamma(x, y, g), Scalar(-1), false);
        if (x == 1 && is_ahol(y)) sys.add(eq, idxA(y, g), Scalar(1), false);
        if (is_ahol(x) && is_ahol(y)) sys.add(eq, idxN(x, y, g), Scalar(-1), false);
        sys.rhs(eq, -alg.bracket(x, y, g));
        ++eq;
      }

  // metric compatibility omega_{a b-bar} + omega_{b-bar a} = 0 in every direction
  for (int b = 1; b < L; ++b)
    for (int a = 2; a <= n + 1; ++a)
      for (int bb = 2; bb <= n + 1; ++bb) {
        for (int g = 2; g <= n + 1; ++g) {
          sys.add(eq, idxGamma(b, a, g), P.h.get({g, conj_index(n, bb)}), false);
          sys.add(eq, idxGamma(conj_index(n, b), bb, g),
                  P.h.get({a, conj_index(n, g)}), true);
        }
        ++eq;
      }

  auto sol = sys.solve();
  if (!sol)
    throw InconsistentStructureEquation(
        "connection system has no unique solution");

  P.Gamma = InvariantTensor(n, {lo(K_M), lo(K_H), up(K_H)});
  P.A_up = InvariantTensor(n, {lo(K_A), up(K_H)});
  P.N_up = InvariantTensor(n, {lo(K_H), lo(K_H), up(K_A)});
  for (int b = 1; b < L; ++b)
    for (int a = 2; a <= n + 1; ++a)
      for (int g = 2; g <= n + 1; ++g)
        P.Gamma.set({b, a, g}, (*sol)[idxGamma(b, a, g)]);
  for (int s = n + 2; s < L; ++s)
    for (int g = 2; g <= n + 1; ++g) P.A_up.set({s, g}, (*sol)[idxA(s, g)]);
  for (int s = n + 2; s < L; ++s)
    for (int t = n + 2; t < L; ++t)
      for (int g = 2; g <= n + 1; ++g) {
        if (s == t) continue;
        Scalar v = s < t ? (*sol)[idxN(s, t, g)] : -(*sol)[idxN(t, s, g)];
        // stored as N_{ab}^{g-bar} = conj(N_{a-bar b-bar}^g)
        P.N_up.set({conj_index(n, s), conj_index(n, t), conj_index(n, g)}, v.conj());
      }

  // lowered torsion and Nijenhuis tensors
  P.A_lo = contract(P.A_up, P.h, {{1, 0}}).conj();
  P.N_lo = contract(P.N_up, P.h, {{2, 1}});

  // curvature 2-form Pi_a^b(X,Y) on frame pairs
  InvariantTensor PiU(n, {lo(K_H), up(K_H), lo(K_M), lo(K_M)});
  PiU.for_each([&](const std::vector<int>& idx) {
    int a = idx[0], b = idx[1], X = idx[2], Y = idx[3];
    Scalar v;
    for (int z = 1; z < L; ++z) {
      const Scalar& c = alg.bracket(X, Y, z);
      if (!c.is_zero()) v -= c * P.Gamma.get({z, a, b});
    }
    for (int g = 2; g <= n + 1; ++g)
      v -= P.Gamma.get({X, a, g}) * P.Gamma.get({Y, g, b}) -
           P.Gamma.get({Y, a, g}) * P.Gamma.get({X, g, b});
    PiU.set(idx, v);
  });
  InvariantTensor Pi = lower_to_ahol(P, PiU, 1);

  P.R4 = InvariantTensor(n, {lo(K_H), lo(K_A), lo(K_H), lo(K_A)});
  P.W3h = InvariantTensor(n, {lo(K_H), lo(K_A), lo(K_H)});
  P.W3a = InvariantTensor(n, {lo(K_H), lo(K_A), lo(K_A)});
  P.V4hh = InvariantTensor(n, {lo(K_H), lo(K_A), lo(K_H), lo(K_H)});
  P.V4aa = InvariantTensor(n, {lo(K_H), lo(K_A), lo(K_A), lo(K_A)});
  Scalar half(Rational(1, 2));
  for (int a = 2; a <= n + 1; ++a)
    for (int bb = n + 2; bb < L; ++bb) {
      for (int s = 2; s <= n + 1; ++s) {
        for (int t = n + 2; t < L; ++t)
          P.R4.set({a, bb, s, t}, Pi.get({a, bb, s, t}));
        P.W3h.set({a, bb, s}, Pi.get({a, bb, s, 1}));
        for (int t = 2; t <= n + 1; ++t)
          P.V4hh.set({a, bb, s, t}, half * Pi.get({a, bb, s, t}));
      }
      for (int s = n + 2; s < L; ++s) {
        P.W3a.set({a, bb, s}, Pi.get({a, bb, s, 1}));
        for (int t = n + 2; t < L; ++t)
          P.V4aa.set({a, bb, s, t}, half * Pi.get({a, bb, s, t}));
      }
    }

  P.Ricci = pair_slots(P.hinv, P.R4, 0, 1);
  P.Rscalar = pair_slots(P.hinv, P.Ricci, 0, 1).get({});
  return P;
}

InvariantTensor tw_torsion(const PseudohermitianData& P) {
  const int n = P.n;
  const int L = alphabet_size(n);
  InvariantTensor Th(n, {lo(K_M), lo(K_M), up(K_M)});
  auto nabla = [&](int x, int y, int z) -> Scalar {
    // z-component of the derivative of frame vector e_y along e_x
    IndexKind ky = kind_of(n, y);
    if (ky == IndexKind::Reeb) return Scalar(0);
    if (ky == IndexKind::Hol)
      return kind_of(n, z) == IndexKind::Hol ? P.Gamma.get({x, y, z}) : Scalar(0);
    if (kind_of(n, z) != IndexKind::AntiHol) return Scalar(0);
    return P.Gamma.get({conj_index(n, x), conj_index(n, y), conj_index(n, z)}).conj();
  };
  Th.for_each([&](const std::vector<int>& idx) {
    int x = idx[0], y = idx[1], z = idx[2];
    Th.set(idx, nabla(x, y, z) - nabla(y, x, z) - P.alg.bracket(x, y, z));
  });
  return Th;
}

InvariantTensor covariant_derivative(const PseudohermitianData& P,
                                     const InvariantTensor& S,
                                     bool allow_transverse_slots) {
  const int n = P.n;
  if (!allow_transverse_slots)
    for (const Slot& s : S.slots())
      if (s.mask & K_INF)
        throw KindMismatch("covariant derivative over a transverse slot");
  std::vector<Slot> rs = S.slots();
  rs.push_back(lo(K_M));
  InvariantTensor out(n, rs);
  const int rank = S.rank();
  std::vector<int> tmp;
  out.for_each([&](const std::vector<int>& idx) {
    int b = idx[rank];
    Scalar v;
    tmp.assign(idx.begin(), idx.end() - 1);
    for (int s = 0; s < rank; ++s) {
      int i = idx[s];
      IndexKind k = kind_of(n, i);
      if (k == IndexKind::Reeb || k == IndexKind::Transverse) continue;
      bool upper = S.slots()[s].upper;
      if (k == IndexKind::Hol) {
        for (int g = 2; g <= n + 1; ++g) {
          int save = tmp[s];
          tmp[s] = g;
          const Scalar& sv = S.get(tmp);
          tmp[s] = save;
          if (sv.is_zero()) continue;
          if (upper)
            v += P.Gamma.get({b, g, i}) * sv;
          else
            v -= P.Gamma.get({b, i, g}) * sv;
        }
      } else {
        int bb = conj_index(n, b), ib = conj_index(n, i);
        for (int g = n + 2; g <= 2 * n + 1; ++g) {
          int save = tmp[s];
          tmp[s] = g;
          const Scalar& sv = S.get(tmp);
          tmp[s] = save;
          if (sv.is_zero()) continue;
          int gb = conj_index(n, g);
          if (upper)
            v += P.Gamma.get({bb, gb, ib}).conj() * sv;
          else
            v -= P.Gamma.get({bb, ib, gb}).conj() * sv;
        }
      }
    }
    out.set(idx, v);
  });
  return out;
}

PseudohermitianData constant_rescale(const PseudohermitianData& P, const Rational& lambda) {
  return tw_connection(rescale(P.alg, lambda));
}

std::vector<std::string> pseudohermitian_identity_failures(const PseudohermitianData& P) {
  std::vector<std::string> bad;
  const int n = P.n;
  const int L = alphabet_size(n);
  auto cj = [&](int i) { return conj_index(n, i); };

  if (!(P.A_lo == P.A_lo.permuted({1, 0}))) bad.push_back("torsion symmetry A_{ab} = A_{ba}");

  InvariantTensor nsum = P.N_lo + P.N_lo.permuted({1, 0, 2});
  if (!nsum.is_zero()) bad.push_back("Nijenhuis antisymmetry N_{abc} + N_{bac} = 0");
  InvariantTensor ncyc = P.N_lo + P.N_lo.permuted({2, 0, 1}) + P.N_lo.permuted({1, 2, 0});
  if (!ncyc.is_zero()) bad.push_back("Nijenhuis cyclic identity");

  bool sym_ok = true, wsym_ok = true, vsym_ok = true;
  P.R4.for_each([&](const std::vector<int>& i) {
    if (P.R4.get(i) != P.R4.get({cj(i[1]), cj(i[0]), cj(i[3]), cj(i[2])}).conj())
      sym_ok = false;
  });
  if (!sym_ok) bad.push_back("curvature conjugate symmetry");
  P.W3a.for_each([&](const std::vector<int>& i) {
    if (P.W3a.get(i) != -P.W3h.get({cj(i[1]), cj(i[0]), cj(i[2])}).conj())
      wsym_ok = false;
  });
  if (!wsym_ok) bad.push_back("W conjugate antisymmetry");
  P.V4hh.for_each([&](const std::vector<int>& i) {
    if (P.V4hh.get(i) != -P.V4aa.get({cj(i[1]), cj(i[0]), cj(i[2]), cj(i[3])}).conj())
      vsym_ok = false;
  });
  if (!vsym_ok) bad.push_back("V conjugate antisymmetry");

  // R_{a b-bar s t-bar} - R_{s b-bar a t-bar} = -N_{as}^{g-bar} N_{t-bar g-bar b-bar}
  bool asym_ok = true;
  P.R4.for_each([&](const std::vector<int>& i) {
    Scalar lhs = P.R4.get(i) - P.R4.get({i[2], i[1], i[0], i[3]});
    Scalar rhs;
    for (int g = n + 2; g < L; ++g)
      rhs -= P.N_up.get({i[0], i[2], g}) *
             P.N_lo.get({cj(i[3]), cj(g), cj(i[1])}).conj();
    if (lhs != rhs) asym_ok = false;
  });
  if (!asym_ok) bad.push_back("curvature asymmetry relation");

  InvariantTensor dA = covariant_derivative(P, P.A_lo);
  bool w_ok = true;
  P.W3h.for_each([&](const std::vector<int>& i) {
    Scalar rhs = dA.get({i[0], i[2], i[1]});
    for (int s = 2; s <= n + 1; ++s)
      rhs -= P.N_lo.get({i[2], s, i[0]}) * P.A_up.get({i[1], s});
    if (P.W3h.get(i) != rhs) w_ok = false;
  });
  if (!w_ok) bad.push_back("W formula through torsion derivatives");

  InvariantTensor dN = covariant_derivative(P, P.N_lo);
  Scalar ihalf = Scalar::i() * Scalar(Rational(1, 2));
  Scalar half(Rational(1, 2));
  bool v_ok = true;
  P.V4hh.for_each([&](const std::vector<int>& i) {
    Scalar rhs = ihalf * (P.h.get({i[2], i[1]}) * P.A_lo.get({i[0], i[3]}) -
                          P.h.get({i[3], i[1]}) * P.A_lo.get({i[0], i[2]})) +
                 half * dN.get({i[2], i[3], i[0], i[1]});
    if (P.V4hh.get(i) != rhs) v_ok = false;
  });
  if (!v_ok) bad.push_back("V formula through torsion and Nijenhuis derivatives");

  // second Ricci contraction anomaly
  InvariantTensor lhs2 = pair_slots(P.hinv, P.R4, 2, 1);
  InvariantTensor Nbar = P.N_lo.conj();
  InvariantTensor Nraised = raise_to_hol(P, raise_to_hol(P, Nbar, 1), 2);
  InvariantTensor nn = contract(P.N_lo, Nraised, {{1, 2}, {2, 1}});
  if (!(lhs2 == P.Ricci - nn)) bad.push_back("Ricci contraction anomaly");

  // torsion reproduction against the normalized form
  InvariantTensor Th = tw_torsion(P);
  InvariantTensor expect(n, {lo(K_M), lo(K_M), up(K_M)});
  Scalar iu = Scalar::i();
  for (int a = 2; a <= n + 1; ++a)
    for (int b = n + 2; b < L; ++b) {
      Scalar v = iu * P.h.get({a, b});
      expect.set({a, b, 1}, v);
      expect.set({b, a, 1}, -v);
    }
  for (int b = n + 2; b < L; ++b)
    for (int g = 2; g <= n + 1; ++g) {
      Scalar v = P.A_up.get({b, g});
      expect.set({1, b, g}, v);
      expect.set({b, 1, g}, -v);
      expect.set({1, cj(b), cj(g)}, v.conj());
      expect.set({cj(b), 1, cj(g)}, -v.conj());
    }
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b)
      for (int g = n + 2; g < L; ++g) {
        Scalar v = -P.N_up.get({a, b, g});
        expect.set({a, b, g}, v);
        expect.set({cj(a), cj(b), cj(g)}, v.conj());
      }
  if (!(Th == expect)) bad.push_back("torsion reproduction");

  return bad;
}

}  // namespace achcr
