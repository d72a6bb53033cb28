#include "achcr/tensor.hpp"

#include <algorithm>

namespace achcr {

InvariantTensor::InvariantTensor(int n, std::vector<Slot> slots)
    : n_(n), slots_(std::move(slots)) {
  const int L = alphabet_size(n_);
  allowed_.resize(slots_.size());
  size_t total = 1;
  for (size_t s = 0; s < slots_.size(); ++s) {
    for (int v = 0; v < L; ++v)
      if (slots_[s].mask & kind_bit(kind_of(n_, v))) allowed_[s].push_back(v);
    total *= static_cast<size_t>(L);
  }
  a_.assign(total, Scalar());
}

size_t InvariantTensor::offset(const std::vector<int>& idx) const {
  if (idx.size() != slots_.size()) throw ShapeMismatch("index arity");
  const int L = alphabet_size(n_);
  size_t off = 0;
  for (size_t s = 0; s < idx.size(); ++s) {
    if (idx[s] < 0 || idx[s] >= L) throw std::out_of_range("tensor index");
    off = off * static_cast<size_t>(L) + static_cast<size_t>(idx[s]);
  }
  return off;
}

bool InvariantTensor::admissible(const std::vector<int>& idx) const {
  for (size_t s = 0; s < slots_.size(); ++s)
    if (!(slots_[s].mask & kind_bit(kind_of(n_, idx[s])))) return false;
  return true;
}

void InvariantTensor::set(const std::vector<int>& idx, Scalar v) {
  if (!admissible(idx)) {
    if (v.is_zero()) return;
    throw KindMismatch("assignment outside declared index kinds");
  }
  a_[offset(idx)] = std::move(v);
}

void InvariantTensor::add_at(const std::vector<int>& idx, const Scalar& v) {
  if (!admissible(idx)) {
    if (v.is_zero()) return;
    throw KindMismatch("assignment outside declared index kinds");
  }
  a_[offset(idx)] += v;
}

bool InvariantTensor::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

InvariantTensor& InvariantTensor::operator+=(const InvariantTensor& o) {
  if (!same_shape(o)) throw ShapeMismatch("tensor add");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

InvariantTensor& InvariantTensor::operator-=(const InvariantTensor& o) {
  if (!same_shape(o)) throw ShapeMismatch("tensor sub");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

InvariantTensor InvariantTensor::scaled(const Scalar& c) const {
  InvariantTensor out = *this;
  for (auto& v : out.a_) v = v * c;
  return out;
}

InvariantTensor InvariantTensor::conj() const {
  std::vector<Slot> cs = slots_;
  for (auto& s : cs) s.mask = conj_mask(s.mask);
  InvariantTensor out(n_, cs);
  for_each([&](const std::vector<int>& idx) {
    std::vector<int> ci(idx.size());
    for (size_t s = 0; s < idx.size(); ++s) ci[s] = conj_index(n_, idx[s]);
    out.set(ci, get(idx).conj());
  });
  return out;
}

InvariantTensor InvariantTensor::permuted(const std::vector<int>& perm) const {
  // perm[d] = source slot placed at destination d
  if (perm.size() != slots_.size()) throw ShapeMismatch("permutation arity");
  std::vector<Slot> ps(perm.size());
  for (size_t d = 0; d < perm.size(); ++d) ps[d] = slots_[perm[d]];
  InvariantTensor out(n_, ps);
  out.for_each([&](const std::vector<int>& idx) {
    std::vector<int> src(idx.size());
    for (size_t d = 0; d < perm.size(); ++d) src[perm[d]] = idx[d];
    out.set(idx, get(src));
  });
  return out;
}

InvariantTensor InvariantTensor::traced(int s1, int s2) const {
  if (s1 == s2) throw ShapeMismatch("trace of a slot with itself");
  if (s1 > s2) std::swap(s1, s2);
  std::vector<Slot> rs;
  for (int s = 0; s < rank(); ++s)
    if (s != s1 && s != s2) rs.push_back(slots_[s]);
  InvariantTensor out(n_, rs);
  std::uint8_t common = slots_[s1].mask & slots_[s2].mask;
  const int L = alphabet_size(n_);
  out.for_each([&](const std::vector<int>& idx) {
    Scalar sum;
    std::vector<int> full(rank());
    for (int v = 0; v < L; ++v) {
      if (!(common & kind_bit(kind_of(n_, v)))) continue;
      int p = 0;
      for (int s = 0; s < rank(); ++s)
        full[s] = (s == s1 || s == s2) ? v : idx[p++];
      sum += get(full);
    }
    out.set(idx, sum);
  });
  return out;
}

InvariantTensor contract(const InvariantTensor& A, const InvariantTensor& B,
                         const std::vector<std::pair<int, int>>& sums) {
  if (A.n() != B.n()) throw ShapeMismatch("contract over different n");
  const int n = A.n();
  const int L = alphabet_size(n);
  std::vector<bool> asum(A.rank(), false), bsum(B.rank(), false);
  std::vector<std::uint8_t> masks;
  for (auto [sa, sb] : sums) {
    asum.at(sa) = true;
    bsum.at(sb) = true;
    masks.push_back(A.slots()[sa].mask & B.slots()[sb].mask);
  }
  std::vector<Slot> rs;
  std::vector<int> afree, bfree;
  for (int s = 0; s < A.rank(); ++s)
    if (!asum[s]) {
      rs.push_back(A.slots()[s]);
      afree.push_back(s);
    }
  for (int s = 0; s < B.rank(); ++s)
    if (!bsum[s]) {
      rs.push_back(B.slots()[s]);
      bfree.push_back(s);
    }
  InvariantTensor out(n, rs);
  std::vector<int> ai(A.rank()), bi(B.rank());
  std::vector<int> sv(sums.size(), 0);
  out.for_each([&](const std::vector<int>& idx) {
    for (size_t k = 0; k < afree.size(); ++k) ai[afree[k]] = idx[k];
    for (size_t k = 0; k < bfree.size(); ++k) bi[bfree[k]] = idx[afree.size() + k];
    Scalar sum;
    // odometer over summed values
    size_t m = sums.size();
    std::fill(sv.begin(), sv.end(), 0);
    while (true) {
      bool ok = true;
      for (size_t k = 0; k < m; ++k)
        if (!(masks[k] & kind_bit(kind_of(n, sv[k])))) {
          ok = false;
          break;
        }
      if (ok) {
        for (size_t k = 0; k < m; ++k) {
          ai[sums[k].first] = sv[k];
          bi[sums[k].second] = sv[k];
        }
        const Scalar& x = A.get(ai);
        if (!x.is_zero()) sum += x * B.get(bi);
      }
      size_t k = 0;
      for (; k < m; ++k) {
        if (++sv[k] < L) break;
        sv[k] = 0;
      }
      if (k == m) break;
    }
    out.set(idx, sum);
  });
  return out;
}

InvariantTensor pair_slots(const InvariantTensor& pairing, const InvariantTensor& T,
                           int s1, int s2) {
  if (pairing.rank() != 2) throw ShapeMismatch("pairing must have rank 2");
  InvariantTensor half = contract(pairing, T, {{0, s1}});
  // half slots: [pairing slot 1, T slots without s1]; locate s2 among them
  int s2p = 1 + s2 - (s2 > s1 ? 1 : 0);
  return half.traced(0, s2p);
}

InvariantTensor zeros_like(const InvariantTensor& t) {
  return InvariantTensor(t.n(), t.slots());
}

}  // namespace achcr
