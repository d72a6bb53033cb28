#include "achcr/series.hpp"

namespace achcr {

RhoSeries RhoSeries::constant(InvariantTensor t, int trunc) {
  return monomial(0, std::move(t), trunc);
}

RhoSeries RhoSeries::monomial(int degree, InvariantTensor t, int trunc) {
  RhoSeries s(t.n(), t.slots(), trunc);
  s.set_coeff(degree, std::move(t));
  return s;
}

InvariantTensor RhoSeries::coeff(int d) const {
  if (d >= trunc_)
    throw TruncationError("coefficient read past truncation order");
  auto it = c_.find(d);
  if (it != c_.end()) return it->second;
  return InvariantTensor(n_, slots_);
}

void RhoSeries::set_coeff(int d, InvariantTensor t) {
  if (d < 0) throw std::out_of_range("negative series degree");
  if (t.n() != n_ || t.slots() != slots_) throw ShapeMismatch("series coefficient");
  if (d >= trunc_) return;  // unknown region, nothing to record
  if (t.is_zero())
    c_.erase(d);
  else
    c_[d] = std::move(t);
}

void RhoSeries::add_coeff(int d, const InvariantTensor& t) {
  if (d < 0) throw std::out_of_range("negative series degree");
  if (t.n() != n_ || t.slots() != slots_) throw ShapeMismatch("series coefficient");
  if (d >= trunc_ || t.is_zero()) return;
  auto it = c_.find(d);
  if (it == c_.end()) {
    c_[d] = t;
  } else {
    it->second += t;
    if (it->second.is_zero()) c_.erase(it);
  }
}

int RhoSeries::order() const {
  for (const auto& [d, t] : c_)
    if (!t.is_zero()) return d;
  return trunc_;
}

bool RhoSeries::is_O(int o) const {
  if (o > trunc_)
    throw TruncationError("order claim exceeds truncation");
  for (const auto& [d, t] : c_)
    if (d < o && !t.is_zero()) return false;
  return true;
}

void RhoSeries::truncate_to(int t) {
  if (t < trunc_) {
    trunc_ = t;
    c_.erase(c_.lower_bound(t), c_.end());
  }
}

RhoSeries& RhoSeries::operator+=(const RhoSeries& o) {
  if (!same_shape(o)) throw ShapeMismatch("series add");
  truncate_to(o.trunc_);
  for (const auto& [d, t] : o.c_) add_coeff(d, t);
  return *this;
}

RhoSeries& RhoSeries::operator-=(const RhoSeries& o) {
  if (!same_shape(o)) throw ShapeMismatch("series sub");
  truncate_to(o.trunc_);
  for (const auto& [d, t] : o.c_) add_coeff(d, -t);
  return *this;
}

RhoSeries RhoSeries::scaled(const Scalar& c) const {
  RhoSeries out(n_, slots_, trunc_);
  if (c.is_zero()) return out;
  for (const auto& [d, t] : c_) out.c_[d] = t.scaled(c);
  return out;
}

RhoSeries RhoSeries::conj() const {
  std::vector<Slot> cs = slots_;
  for (auto& s : cs) s.mask = conj_mask(s.mask);
  RhoSeries out(n_, cs, trunc_);
  for (const auto& [d, t] : c_) out.c_[d] = t.conj();
  return out;
}

RhoSeries RhoSeries::permuted(const std::vector<int>& perm) const {
  std::vector<Slot> ps(perm.size());
  for (size_t d = 0; d < perm.size(); ++d) ps[d] = slots_.at(perm[d]);
  RhoSeries out(n_, ps, trunc_);
  for (const auto& [d, t] : c_) out.c_[d] = t.permuted(perm);
  return out;
}

RhoSeries RhoSeries::traced(int s1, int s2) const {
  InvariantTensor probe(n_, slots_);
  RhoSeries out(n_, probe.traced(s1, s2).slots(), trunc_);
  for (const auto& [d, t] : c_) out.set_coeff(d, t.traced(s1, s2));
  return out;
}

RhoSeries RhoSeries::shifted(int k) const {
  RhoSeries out(n_, slots_, trunc_ + k);
  for (const auto& [d, t] : c_) {
    if (d + k < 0) {
      if (!t.is_zero())
        throw TruncationError("division by rho below degree zero");
      continue;
    }
    out.c_[d + k] = t;
  }
  return out;
}

RhoSeries RhoSeries::euler_applied(const Poly& p) const {
  RhoSeries out(n_, slots_, trunc_);
  for (const auto& [d, t] : c_) {
    Scalar f(p.eval(d));
    if (!f.is_zero()) out.c_[d] = t.scaled(f);
  }
  return out;
}

RhoSeries series_contract(const RhoSeries& A, const RhoSeries& B,
                          const std::vector<std::pair<int, int>>& sums) {
  InvariantTensor pa(A.n(), A.slots()), pb(B.n(), B.slots());
  InvariantTensor probe = contract(pa, pb, sums);
  int trunc = std::min(A.trunc(), B.trunc());
  RhoSeries out(A.n(), probe.slots(), trunc);
  for (const auto& [da, ta] : A.coeffs()) {
    if (da >= trunc || ta.is_zero()) continue;
    for (const auto& [db, tb] : B.coeffs()) {
      if (da + db >= trunc || tb.is_zero()) continue;
      out.add_coeff(da + db, contract(ta, tb, sums));
    }
  }
  return out;
}

RhoSeries series_pair_slots(const InvariantTensor& pairing, const RhoSeries& S,
                            int s1, int s2) {
  InvariantTensor probe =
      pair_slots(pairing, InvariantTensor(S.n(), S.slots()), s1, s2);
  RhoSeries out(S.n(), probe.slots(), S.trunc());
  for (const auto& [d, t] : S.coeffs()) out.set_coeff(d, pair_slots(pairing, t, s1, s2));
  return out;
}

RhoSeries invert_metric_series(const RhoSeries& g) {
  if (g.rank() != 2) throw ShapeMismatch("metric series must have rank 2");
  const int n = g.n();
  const int L = alphabet_size(n);

  auto to_mat = [&](const InvariantTensor& t) {
    Mat m(L, Vec(L));
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) m[i][j] = t.get({i, j});
    return m;
  };

  auto g0inv = try_invert(to_mat(g.coeff(0)));
  if (!g0inv) throw SingularLeadingBlock();

  std::vector<Slot> us{up(K_ALL), up(K_ALL)};
  RhoSeries out(n, us, g.trunc());
  std::vector<Mat> x;
  x.push_back(*g0inv);
  for (int d = 1; d < g.trunc(); ++d) {
    Mat acc(L, Vec(L));
    for (int e = 1; e <= d; ++e) {
      InvariantTensor ge = g.coeff(e);
      if (ge.is_zero()) continue;
      Mat prod = mat_mul(to_mat(ge), x[d - e]);
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) acc[i][j] += prod[i][j];
    }
    Mat xd = mat_mul(*g0inv, acc);
    for (auto& row : xd)
      for (auto& v : row) v = -v;
    x.push_back(std::move(xd));
  }
  for (int d = 0; d < g.trunc(); ++d) {
    InvariantTensor t(n, us);
    for (int i = 0; i < L; ++i)
      for (int j = 0; j < L; ++j) t.set({i, j}, x[d][i][j]);
    out.set_coeff(d, std::move(t));
  }
  return out;
}

}  // namespace achcr
