#include "achcr/ach.hpp"

#include <algorithm>

namespace achcr {

int default_truncation(int n) { return 2 * n + 6; }

PhiExpansion zero_phi(int n, int trunc) {
  return PhiExpansion{RhoSeries(n, {lo(K_M), lo(K_M)}, trunc)};
}

void check_phi(const PhiExpansion& phi) {
  const RhoSeries& s = phi.phi;
  if (s.slots() != std::vector<Slot>{lo(K_M), lo(K_M)})
    throw NormalFormViolation("phi must be a rank-2 boundary tensor series");
  int n = s.n();
  for (const auto& [d, c] : s.coeffs()) {
    if (d == 0 && !c.is_zero())
      throw NormalFormViolation("phi must vanish at degree 0");
    c.for_each([&](const std::vector<int>& idx) {
      const Scalar& v = c.get(idx);
      if (v != c.get({idx[1], idx[0]}))
        throw NormalFormViolation("phi coefficient is not symmetric");
      std::vector<int> cj{conj_index(n, idx[0]), conj_index(n, idx[1])};
      if (c.get(cj) != v.conj())
        throw NormalFormViolation("phi coefficient is not real");
    });
  }
}

ACHMetric assemble(const PseudohermitianData& P, const PhiExpansion& phi) {
  check_phi(phi);
  if (phi.phi.n() != P.n) throw NormalFormViolation("dimension mismatch");
  int n = P.n;
  std::vector<Slot> sl{lo(K_ALL), lo(K_ALL)};
  RhoSeries g(n, sl, phi.phi.trunc());

  InvariantTensor g0(n, sl);
  g0.set({0, 0}, Scalar(4));
  g0.set({1, 1}, Scalar(1));
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      const Scalar& hv = P.h.get({a, b + n});
      g0.set({a, b + n}, hv);
      g0.set({b + n, a}, hv);
    }
  g.set_coeff(0, g0);

  for (const auto& [d, c] : phi.phi.coeffs()) {
    InvariantTensor t(n, sl);
    c.for_each([&](const std::vector<int>& idx) {
      const Scalar& v = c.get(idx);
      if (!v.is_zero()) t.set(idx, v);
    });
    if (!t.is_zero()) g.add_coeff(d, t);
  }

  return ACHMetric{g, invert_metric_series(g)};
}

RhoSeries extended_derivative(const PseudohermitianData& P, const RhoSeries& S) {
  int n = S.n();
  std::vector<Slot> oslots = S.slots();
  oslots.push_back(lo(K_ALL));
  RhoSeries out(n, oslots, S.trunc());

  for (const auto& [d, c] : S.coeffs()) {
    // transverse direction: Euler degree minus the variance-signed slot
    // weights (Reeb slots weigh 2, all others 1)
    InvariantTensor tinf(n, oslots);
    c.for_each([&](const std::vector<int>& idx) {
      const Scalar& v = c.get(idx);
      if (v.is_zero()) return;
      Rational w = d;
      for (int s = 0; s < c.rank(); ++s) {
        Rational sw = (idx[s] == 1) ? 2 : 1;
        w -= c.slots()[s].upper ? -sw : sw;
      }
      if (w != 0) {
        std::vector<int> oidx = idx;
        oidx.push_back(0);
        tinf.set(oidx, v * Scalar(w));
      }
    });
    if (!tinf.is_zero()) out.add_coeff(d, tinf);

    InvariantTensor cov = covariant_derivative(P, c, true);
    InvariantTensor tcr(n, oslots), treeb(n, oslots);
    cov.for_each([&](const std::vector<int>& idx) {
      const Scalar& v = cov.get(idx);
      if (v.is_zero()) return;
      (idx.back() == 1 ? treeb : tcr).set(idx, v);
    });
    if (d + 1 < out.trunc() && !tcr.is_zero()) out.add_coeff(d + 1, tcr);
    if (d + 2 < out.trunc() && !treeb.is_zero()) out.add_coeff(d + 2, treeb);
  }
  return out;
}

RhoSeries extended_torsion(const PseudohermitianData& P) {
  int n = P.n;
  std::vector<Slot> sl{lo(K_ALL), lo(K_ALL), up(K_ALL)};
  RhoSeries T(n, sl, RhoSeries::kExact);

  InvariantTensor t0(n, sl), t1(n, sl), t2(n, sl);
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar ih = Scalar::i() * P.h.get({a, b + n});
      if (ih.is_zero()) continue;
      t0.set({a, b + n, 1}, ih);
      t0.set({b + n, a, 1}, -ih);
    }
  P.N_up.for_each([&](const std::vector<int>& idx) {
    const Scalar& v = P.N_up.get(idx);
    if (v.is_zero()) return;
    t1.set(idx, -v);
    t1.set({conj_index(n, idx[0]), conj_index(n, idx[1]), conj_index(n, idx[2])},
           -v.conj());
  });
  InvariantTensor Ac = P.A_up.conj();  // A_a^{b-bar}
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      const Scalar& v = Ac.get({a, b + n});
      if (!v.is_zero()) {
        t2.set({1, a, b + n}, v);
        t2.set({a, 1, b + n}, -v);
        t2.set({1, a + n, b}, v.conj());
        t2.set({a + n, 1, b}, -v.conj());
      }
    }
  if (!t0.is_zero()) T.set_coeff(0, t0);
  if (!t1.is_zero()) T.set_coeff(1, t1);
  if (!t2.is_zero()) T.set_coeff(2, t2);
  return T;
}

Christoffel christoffel(const ACHMetric& m, const PseudohermitianData& P) {
  RhoSeries dg = extended_derivative(P, m.g);  // (J, K, dir)
  RhoSeries Tl = series_contract(extended_torsion(P), m.g, {{2, 1}});

  RhoSeries Dlow = (dg.permuted({2, 1, 0}) + dg - dg.permuted({0, 2, 1}) + Tl +
                    Tl.permuted({2, 1, 0}) + Tl.permuted({0, 2, 1}))
                       .scaled(Scalar(Rational(1, 2)));
  RhoSeries Dup = series_contract(m.ginv, Dlow, {{1, 1}}).permuted({1, 0, 2});
  return Christoffel{Dlow, Dup};
}

RhoSeries extended_ricci(const PseudohermitianData& P) {
  int n = P.n;
  std::vector<Slot> sl{lo(K_ALL), lo(K_ALL)};
  RhoSeries R(n, sl, RhoSeries::kExact);
  InvariantTensor t(n, sl);

  // N_{as t} N_{b-bar}^{ts}
  InvariantTensor M = raise_to_hol(P, raise_to_hol(P, P.N_lo.conj(), 1), 2);
  InvariantTensor nn = contract(P.N_lo, M, {{1, 2}, {2, 1}});

  // nabla^g N_{g b a}
  InvariantTensor dN = covariant_derivative(P, P.N_lo);
  InvariantTensor divN = contract(P.hinv, dN, {{0, 0}, {1, 3}});  // (b, a)

  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar w = P.Ricci.get({a, b + n}) - nn.get({a, b + n});
      t.set({a, b + n}, w);
      Scalar wc = P.Ricci.get({b, a + n}) - nn.get({b, a + n});
      t.set({b + n, a}, wc.conj());
      Scalar u = Scalar(Rational(0), Rational(n - 1)) * P.A_lo.get({a, b}) +
                 divN.get({b, a});
      t.set({a, b}, u);
      t.set({a + n, b + n}, u.conj());
    }
  if (!t.is_zero()) R.set_coeff(2, t);
  return R;
}

RhoSeries ricci(const ACHMetric& m, const PseudohermitianData& P) {
  Christoffel C = christoffel(m, P);
  RhoSeries dD = extended_derivative(P, C.Dup);  // (I, K, J, dir)
  RhoSeries t1 = dD.traced(1, 3);
  RhoSeries Dtr = C.Dup.traced(1, 2);  // D_L^K_K as a function of L
  RhoSeries t2 = extended_derivative(P, Dtr);
  RhoSeries t3 = series_contract(C.Dup, C.Dup, {{1, 2}, {2, 1}});
  RhoSeries t4 = series_contract(C.Dup, Dtr, {{1, 0}});
  return extended_ricci(P) + t1 - t2 - t3 + t4;
}

RhoSeries einstein(const ACHMetric& m, const PseudohermitianData& P) {
  return ricci(m, P) + m.g.scaled(Scalar(Rational(P.n + 2, 2)));
}

RhoSeries bianchi_residual(const ACHMetric& m, const PseudohermitianData& P,
                           const RhoSeries& Ein) {
  Christoffel C = christoffel(m, P);
  RhoSeries dE = extended_derivative(P, Ein);  // (I, J, dir)
  RhoSeries c1 = series_contract(C.Dup, Ein, {{1, 0}}).permuted({0, 2, 1});
  RhoSeries c2 = series_contract(C.Dup, Ein, {{1, 1}}).permuted({2, 0, 1});
  RhoSeries covE = dE - c1 - c2;  // grad_K Ein_{IJ} at (I, J, K)
  RhoSeries tr = series_contract(m.ginv, covE, {{0, 0}, {1, 1}});
  RhoSeries div = series_contract(m.ginv, covE, {{0, 2}, {1, 0}});
  return tr - div.scaled(Scalar(2));
}

RhoSeries slice_series(const RhoSeries& S, const std::vector<int>& pattern,
                       const std::vector<Slot>& free_slots) {
  RhoSeries out(S.n(), free_slots, S.trunc());
  for (const auto& [d, c] : S.coeffs()) {
    InvariantTensor t(S.n(), free_slots);
    std::vector<int> full(pattern.size());
    t.for_each([&](const std::vector<int>& fidx) {
      size_t k = 0;
      for (size_t p = 0; p < pattern.size(); ++p)
        full[p] = pattern[p] < 0 ? fidx[k++] : pattern[p];
      const Scalar& v = c.get(full);
      if (!v.is_zero()) t.set(fidx, v);
    });
    if (!t.is_zero()) out.set_coeff(d, t);
  }
  return out;
}

RhoSeries tw_derivative_series(const PseudohermitianData& P, const RhoSeries& S) {
  std::vector<Slot> oslots = S.slots();
  oslots.push_back(lo(K_M));
  RhoSeries out(S.n(), oslots, S.trunc());
  for (const auto& [d, c] : S.coeffs()) {
    InvariantTensor t = covariant_derivative(P, c);
    if (!t.is_zero()) out.set_coeff(d, t);
  }
  return out;
}

RhoSeries christoffel_closed_form(const PseudohermitianData& P,
                                  const PhiExpansion& phi) {
  check_phi(phi);
  const int n = P.n;
  const int N = alphabet_size(n);
  const int tr = phi.phi.trunc();
  std::vector<Slot> sl{lo(K_ALL), lo(K_ALL), lo(K_ALL)};

  std::map<int, InvariantTensor> acc;
  auto add = [&](int deg, int x, int y, int z, const Scalar& v) {
    if (deg >= tr || v.is_zero()) return;
    auto it = acc.find(deg);
    if (it == acc.end()) it = acc.emplace(deg, InvariantTensor(n, sl)).first;
    it->second.add_at({x, y, z}, v);
  };

  std::vector<char> mark(static_cast<size_t>(N) * N * N, 0);
  auto id3 = [&](int x, int y, int z) { return (x * N + y) * N + z; };
  auto markt = [&](int x, int y, int z) { mark[id3(x, y, z)] = 1; };

  // the directly tabulated row patterns (I in {transverse, Reeb, hol})
  markt(0, 0, 0);
  markt(0, 1, 0);
  markt(0, 0, 1);
  markt(0, 1, 1);
  markt(1, 0, 1);
  markt(1, 1, 1);
  for (int a = 2; a <= n + 1; ++a) {
    markt(0, a, 0);
    markt(0, a, 1);
    markt(0, 0, a);
    markt(0, 1, a);
    markt(1, a, 1);
    markt(1, 0, a);
    markt(1, 1, a);
    markt(a, 0, 1);
    markt(a, 1, 1);
    for (int b = 2; b <= n + 1; ++b) {
      markt(0, b + n, a);
      markt(0, b, a);
      markt(1, b + n, a);
      markt(1, b, a);
      markt(a, b + n, 1);
      markt(a, b, 1);
      markt(a, 0, b + n);
      markt(a, 1, b + n);
      markt(a, 0, b);
      markt(a, 1, b);
      for (int g = 2; g <= n + 1; ++g) {
        markt(a, g + n, b + n);
        markt(a, g, b + n);
        markt(a, g + n, b);
        markt(a, g, b);
      }
    }
  }

  const Scalar half(Rational(1, 2));
  const Scalar ihalf = Scalar::i() * half;
  InvariantTensor Ac = P.A_up.conj();   // A_a^{b-bar}
  InvariantTensor Ncl = P.N_up.conj();  // N_{a-bar b-bar}^c

  // constant rows
  add(0, 0, 0, 0, Scalar(-4));
  add(0, 0, 1, 1, Scalar(-2));
  add(0, 1, 0, 1, Scalar(2));
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      const Scalar& hv = P.h.get({a, b + n});
      add(0, 0, b + n, a, -hv);
      add(0, a, 0, b + n, hv);
      add(0, 1, b + n, a, ihalf * hv);
      add(0, a, b + n, 1, ihalf * hv);
      add(0, a, 1, b + n, ihalf * hv);
      const Scalar& av = P.A_lo.get({a, b});
      add(2, 1, b, a, av);
      add(2, a, 1, b, -av);
      for (int g = 2; g <= n + 1; ++g)
        add(1, a, g, b, -P.N_lo.get({a, g, b}));
    }

  // phi-dependent rows
  for (const auto& [d, C] : phi.phi.coeffs()) {
    InvariantTensor DC = covariant_derivative(P, C);
    auto Cv = [&](int x, int y) { return C.get({x, y}); };
    auto Dv = [&](int x, int y, int z) { return DC.get({x, y, z}); };

    Scalar f00 = Cv(1, 1);
    add(d, 0, 1, 1, Scalar(Rational(d - 4, 2)) * f00);
    add(d, 1, 0, 1, Scalar(Rational(4 - d, 2)) * f00);
    add(d + 2, 1, 1, 1, half * Dv(1, 1, 1));

    for (int a = 2; a <= n + 1; ++a) {
      Scalar f0a = Cv(1, a);
      add(d, 0, a, 1, Scalar(Rational(d - 3, 2)) * f0a);
      add(d, 0, 1, a, Scalar(Rational(d - 3, 2)) * f0a);
      add(d, 1, 0, a, Scalar(Rational(3 - d, 2)) * f0a);
      add(d, a, 0, 1, Scalar(Rational(3 - d, 2)) * f0a);
      add(d + 1, 1, 1, a, half * Dv(1, 1, a));
      add(d + 1, a, 1, 1, half * Dv(1, 1, a));
      add(d + 1, 1, a, 1, -half * Dv(1, 1, a));
      Scalar s(0);
      for (int g = 2; g <= n + 1; ++g) s += Ac.get({a, g + n}) * Cv(1, g + n);
      add(d + 2, 1, a, 1, Dv(1, a, 1) + s);
      add(d + 2, a, 1, 1, -s);
    }

    for (int a = 2; a <= n + 1; ++a)
      for (int b = 2; b <= n + 1; ++b) {
        int bb = b + n;
        const Scalar& hv = P.h.get({a, bb});
        add(d, 0, bb, a, Scalar(Rational(d - 2, 2)) * Cv(a, bb));
        add(d, 0, b, a, Scalar(Rational(d - 2, 2)) * Cv(a, b));
        add(d, a, 0, bb, Scalar(Rational(2 - d, 2)) * Cv(a, bb));
        add(d, a, 0, b, Scalar(Rational(2 - d, 2)) * Cv(a, b));

        Scalar sAmix(0), sAflip(0), sAhh(0), sAhh2(0), sN0(0);
        for (int g = 2; g <= n + 1; ++g) {
          int gb = g + n;
          sAmix += Ac.get({a, gb}) * Cv(bb, gb) + P.A_up.get({bb, g}) * Cv(a, g);
          sAflip += -Ac.get({a, gb}) * Cv(bb, gb) + P.A_up.get({bb, g}) * Cv(a, g);
          sAhh += Ac.get({a, gb}) * Cv(b, gb) + Ac.get({b, gb}) * Cv(a, gb);
          sAhh2 += -Ac.get({a, gb}) * Cv(b, gb) + Ac.get({b, gb}) * Cv(a, gb);
          sN0 += P.N_up.get({a, b, gb}) * Cv(1, gb);
        }
        Scalar asym = half * (Dv(1, bb, a) - Dv(1, a, bb));

        add(d, 1, bb, a, ihalf * hv * f00);
        add(d + 1, 1, bb, a, asym);
        add(d + 2, 1, bb, a, half * (Dv(a, bb, 1) + sAmix));

        add(d, a, bb, 1, ihalf * hv * f00);
        add(d + 1, a, bb, 1, asym);
        add(d + 2, a, bb, 1, half * (Dv(a, bb, 1) + sAflip));

        add(d, a, 1, bb, ihalf * hv * f00);
        add(d + 1, a, 1, bb, half * (Dv(1, bb, a) + Dv(1, a, bb)));
        add(d + 2, a, 1, bb, -half * (Dv(a, bb, 1) + sAmix));

        Scalar asymhh = half * (Dv(1, b, a) - Dv(1, a, b) - sN0);
        add(d + 1, 1, b, a, asymhh);
        add(d + 2, 1, b, a, half * (Dv(a, b, 1) + sAhh));

        add(d + 1, a, b, 1, asymhh);
        add(d + 2, a, b, 1, half * (Dv(a, b, 1) + sAhh2));

        // N-term sign forced by D_{IKJ} - D_{JKI} = Theta_{IJK}: the
        // antisymmetric part in (a, b) must be half of -rho N_{ab}^{g-bar}
        // phi_{0 g-bar}, matching the Reeb-row entries above
        add(d + 1, a, 1, b, half * (Dv(1, b, a) + Dv(1, a, b) - sN0));
        add(d + 2, a, 1, b, -half * (Dv(a, b, 1) + sAhh));
      }

    for (int a = 2; a <= n + 1; ++a)
      for (int b = 2; b <= n + 1; ++b)
        for (int g = 2; g <= n + 1; ++g) {
          int bb = b + n, gb = g + n;
          Scalar s21(0), s22(0), s25(0), s26(0);
          for (int s = 2; s <= n + 1; ++s) {
            int sb = s + n;
            s21 += Ncl.get({bb, gb, s}) * Cv(a, s);
            s22 += P.N_up.get({a, g, sb}) * Cv(bb, sb);
            s25 += P.N_up.get({a, b, sb}) * Cv(gb, sb);
            s26 += P.N_up.get({a, b, sb}) * Cv(g, sb) +
                   P.N_up.get({a, g, sb}) * Cv(b, sb) +
                   P.N_up.get({b, g, sb}) * Cv(a, sb);
          }
          add(d, a, gb, bb,
              ihalf * (P.h.get({a, gb}) * Cv(1, bb) + P.h.get({a, bb}) * Cv(1, gb)));
          add(d + 1, a, gb, bb,
              half * (Dv(bb, gb, a) + Dv(a, gb, bb) - Dv(a, bb, gb) - s21));

          add(d, a, g, bb,
              -ihalf * (P.h.get({g, bb}) * Cv(1, a) - P.h.get({a, bb}) * Cv(1, g)));
          add(d + 1, a, g, bb,
              half * (Dv(g, bb, a) + Dv(a, g, bb) - Dv(a, bb, g) - s22));

          add(d, a, gb, b,
              ihalf * (P.h.get({a, gb}) * Cv(1, b) + P.h.get({b, gb}) * Cv(1, a)));
          add(d + 1, a, gb, b,
              half * (Dv(b, gb, a) + Dv(a, gb, b) - Dv(a, b, gb) - s25));

          add(d + 1, a, g, b,
              half * (Dv(b, g, a) + Dv(a, g, b) - Dv(a, b, g) - s26));
        }
  }

  std::vector<int> degs;
  for (const auto& [d, t] : acc) degs.push_back(d);

  auto conj_complete = [&](bool inf_block_only) {
    std::vector<char> newly(mark.size(), 0);
    for (int x = 0; x < N; ++x) {
      if (inf_block_only && x != 0) continue;
      for (int y = 0; y < N; ++y)
        for (int z = 0; z < N; ++z) {
          if (mark[id3(x, y, z)]) continue;
          int cx = conj_index(n, x), cy = conj_index(n, y), cz = conj_index(n, z);
          if (!mark[id3(cx, cy, cz)]) continue;
          for (int d : degs) {
            const Scalar& v = acc.at(d).get({cx, cy, cz});
            if (!v.is_zero()) acc.at(d).add_at({x, y, z}, v.conj());
          }
          newly[id3(x, y, z)] = 1;
        }
    }
    for (size_t i = 0; i < mark.size(); ++i) mark[i] |= newly[i];
  };

  conj_complete(true);  // remaining transverse-I rows by reality

  // D_{0 K oo} = D_{oo K 0} and D_{a K oo} = D_{oo K a}
  for (int y = 0; y < N; ++y) {
    if (!mark[id3(1, y, 0)]) {
      for (int d : degs) {
        const Scalar& v = acc.at(d).get({0, y, 1});
        if (!v.is_zero()) acc.at(d).add_at({1, y, 0}, v);
      }
      markt(1, y, 0);
    }
    for (int a = 2; a <= n + 1; ++a) {
      if (mark[id3(a, y, 0)]) continue;
      for (int d : degs) {
        const Scalar& v = acc.at(d).get({0, y, a});
        if (!v.is_zero()) acc.at(d).add_at({a, y, 0}, v);
      }
      markt(a, y, 0);
    }
  }

  conj_complete(false);  // everything else by reality

  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z)
        if (!mark[id3(x, y, z)] &&
            !mark[id3(conj_index(n, x), conj_index(n, y), conj_index(n, z))])
          throw std::logic_error("closed-form table left a component unfilled");

  RhoSeries D(n, sl, tr);
  for (auto& [d, t] : acc)
    if (!t.is_zero()) D.set_coeff(d, std::move(t));
  return D;
}

std::vector<std::string> bianchi_order_failures(const ACHMetric& m,
                                                const PseudohermitianData& P,
                                                const PhiExpansion& phi,
                                                const RhoSeries& Ein, int step) {
  std::vector<std::string> out;
  const int n = P.n;
  const int tr = Ein.trunc();
  auto cap = [&](int o) { return std::min(o, tr); };

  RhoSeries Eii = slice_series(Ein, {0, 0}, {});
  RhoSeries Ei0 = slice_series(Ein, {0, 1}, {});
  RhoSeries E00 = slice_series(Ein, {1, 1}, {});
  RhoSeries Eia = slice_series(Ein, {0, -1}, {lo(K_H)});
  RhoSeries Eiab = slice_series(Ein, {0, -1}, {lo(K_A)});
  RhoSeries E0a = slice_series(Ein, {1, -1}, {lo(K_H)});
  RhoSeries E0ab = slice_series(Ein, {1, -1}, {lo(K_A)});
  RhoSeries Ehh = slice_series(Ein, {-1, -1}, {lo(K_H), lo(K_H)});
  RhoSeries Eaa = slice_series(Ein, {-1, -1}, {lo(K_A), lo(K_A)});
  RhoSeries Eha = slice_series(Ein, {-1, -1}, {lo(K_H), lo(K_A)});

  const int m2 = cap(step + 2);
  const int m13 = cap(std::max(step + 1, 3));
  if (!Eii.is_O(m2) || !Ei0.is_O(m2) || !E00.is_O(m2) || !Eha.is_O(m2) ||
      !Eia.is_O(m13) || !E0a.is_O(m13) || !Ehh.is_O(cap(std::max(step, 3)))) {
    out.push_back("order hypotheses fail at step " + std::to_string(step));
    return out;
  }

  auto euler = [](const RhoSeries& s, int c) {
    return s.euler_applied(Poly{{Rational(-c), Rational(1)}});
  };
  auto divergence = [&](const RhoSeries& S, int s1, int s2) {
    return series_pair_slots(P.hinv, tw_derivative_series(P, S), s1, s2);
  };

  RhoSeries divEia = divergence(Eia, 0, 1);    // nabla^a Ein_{oo a}
  RhoSeries divEiab = divergence(Eiab, 1, 0);  // nabla^{a-bar} Ein_{oo a-bar}
  RhoSeries divE0a = divergence(E0a, 0, 1);
  RhoSeries divE0ab = divergence(E0ab, 1, 0);
  RhoSeries Etr = series_pair_slots(P.hinv, Eha, 0, 1);

  InvariantTensor Phh(n, {lo(K_H), lo(K_H)});
  if (phi.phi.trunc() > 2) {
    InvariantTensor c2 = phi.phi.coeff(2);
    c2.for_each([&](const std::vector<int>& idx) {
      if (kind_of(n, idx[0]) == IndexKind::Hol && kind_of(n, idx[1]) == IndexKind::Hol)
        Phh.set(idx, c2.get(idx));
    });
  }
  InvariantTensor Phiup = raise_to_hol(P, raise_to_hol(P, Phh.conj(), 0), 1);
  InvariantTensor Aupup = raise_to_hol(P, raise_to_hol(P, P.A_lo.conj(), 0), 1);
  InvariantTensor Nupup = raise_to_ahol(P, raise_to_ahol(P, P.N_lo, 1), 2);

  auto pairdown = [&](const InvariantTensor& t, const RhoSeries& S) {
    return series_contract(RhoSeries::constant(t), S, {{0, 0}, {1, 1}});
  };
  RhoSeries sPhi = pairdown(Phiup, Ehh) + pairdown(Phiup.conj(), Eaa);
  RhoSeries sA = pairdown(Aupup, Ehh) + pairdown(Aupup.conj(), Eaa);

  RhoSeries form1 = euler(Eii, 4 * n + 4) - euler(E00, 4).scaled(Scalar(4)) -
                    euler(Etr, 2).scaled(Scalar(8)) +
                    (divEia + divEiab).shifted(1).scaled(Scalar(8)) +
                    euler(sPhi, 2).shifted(2).scaled(Scalar(4));
  if (!form1.is_O(cap(step + 3)))
    out.push_back("trace combination fails at step " + std::to_string(step) +
                  " (order " + std::to_string(form1.order()) + ")");

  RhoSeries form2 = euler(Ei0, 2 * n + 4) +
                    (divE0a + divE0ab).shifted(1).scaled(Scalar(4)) +
                    sA.shifted(2).scaled(Scalar(4));
  if (!form2.is_O(cap(step + 3)))
    out.push_back("Reeb combination fails at step " + std::to_string(step) +
                  " (order " + std::to_string(form2.order()) + ")");

  RhoSeries divEhh = series_pair_slots(P.hinv, tw_derivative_series(P, Ehh), 1, 2);
  RhoSeries nE = series_contract(RhoSeries::constant(Nupup), Eaa, {{1, 0}, {2, 1}});
  RhoSeries form3 = euler(Eia, 2 * n + 3).scaled(Scalar(2)) +
                    divEhh.shifted(1).scaled(Scalar(4)) +
                    E0a.scaled(Scalar(Rational(0), Rational(-4))) +
                    nE.shifted(1).scaled(Scalar(4));
  if (!form3.is_O(cap(step + 2)))
    out.push_back("CR combination fails at step " + std::to_string(step) +
                  " (order " + std::to_string(form3.order()) + ")");

  // constant-coefficient variants, valid at the same orders
  RhoSeries c1 = Eii.scaled(Scalar(step - 4 * n - 2)) -
                 E00.scaled(Scalar(4 * (step - 2))) -
                 Etr.scaled(Scalar(8 * step)) +
                 (divEia + divEiab).shifted(1).scaled(Scalar(8)) +
                 sPhi.shifted(2).scaled(Scalar(4 * (step - 2)));
  RhoSeries c2f = Ei0.scaled(Scalar(step - 2 * n - 2)) +
                  (divE0a + divE0ab).shifted(1).scaled(Scalar(4)) +
                  sA.shifted(2).scaled(Scalar(4));
  RhoSeries c3 = Eia.scaled(Scalar(2 * (step - 2 * n - 2))) +
                 divEhh.shifted(1).scaled(Scalar(4)) +
                 E0a.scaled(Scalar(Rational(0), Rational(-4))) +
                 nE.shifted(1).scaled(Scalar(4));
  if (!c1.is_O(cap(step + 3)))
    out.push_back("constant-coefficient trace combination fails at step " +
                  std::to_string(step));
  if (!c2f.is_O(cap(step + 3)))
    out.push_back("constant-coefficient Reeb combination fails at step " +
                  std::to_string(step));
  if (!c3.is_O(cap(step + 2)))
    out.push_back("constant-coefficient CR combination fails at step " +
                  std::to_string(step));

  return out;
}

}  // namespace achcr
