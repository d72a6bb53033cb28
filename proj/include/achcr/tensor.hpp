#ifndef ACHCR_TENSOR_HPP
#define ACHCR_TENSOR_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "achcr/scalar.hpp"

namespace achcr {

// Index alphabet for the adapted frame {rho d/drho, rho^2 T, rho Z_a, rho Z_abar}
// (boundary tensors simply never use the transverse value).
// Layout for CR dimension n: 0 = transverse, 1 = Reeb, 2..n+1 = holomorphic,
// n+2..2n+1 = antiholomorphic.
enum class IndexKind : std::uint8_t { Transverse = 0, Reeb = 1, Hol = 2, AntiHol = 3 };

constexpr std::uint8_t K_INF = 1;
constexpr std::uint8_t K_REEB = 2;
constexpr std::uint8_t K_HOL = 4;
constexpr std::uint8_t K_AHOL = 8;
constexpr std::uint8_t K_ALL = K_INF | K_REEB | K_HOL | K_AHOL;
constexpr std::uint8_t K_M = K_REEB | K_HOL | K_AHOL;  // boundary directions
constexpr std::uint8_t K_H = K_HOL;
constexpr std::uint8_t K_A = K_AHOL;

inline int alphabet_size(int n) { return 2 * n + 2; }

inline IndexKind kind_of(int n, int idx) {
  if (idx == 0) return IndexKind::Transverse;
  if (idx == 1) return IndexKind::Reeb;
  if (idx <= n + 1) return IndexKind::Hol;
  return IndexKind::AntiHol;
}

inline std::uint8_t kind_bit(IndexKind k) {
  return static_cast<std::uint8_t>(1u << static_cast<int>(k));
}

// Conjugation swaps the holomorphic blocks and fixes transverse/Reeb.
inline int conj_index(int n, int idx) {
  if (idx < 2) return idx;
  return idx <= n + 1 ? idx + n : idx - n;
}

inline std::uint8_t conj_mask(std::uint8_t m) {
  std::uint8_t out = m & (K_INF | K_REEB);
  if (m & K_HOL) out |= K_AHOL;
  if (m & K_AHOL) out |= K_HOL;
  return out;
}

struct KindMismatch : std::logic_error {
  explicit KindMismatch(const std::string& what) : std::logic_error(what) {}
};
struct ShapeMismatch : std::logic_error {
  explicit ShapeMismatch(const std::string& what) : std::logic_error(what) {}
};

struct Slot {
  std::uint8_t mask = K_ALL;
  bool upper = false;

  friend bool operator==(const Slot& a, const Slot& b) {
    return a.mask == b.mask && a.upper == b.upper;
  }
};

inline Slot lo(std::uint8_t mask) { return Slot{mask, false}; }
inline Slot up(std::uint8_t mask) { return Slot{mask, true}; }

// Dense multi-index array over the alphabet, with per-slot admissible kinds
// and variance. Entries at positions outside a slot's mask stay zero.
class InvariantTensor {
 public:
  InvariantTensor() : n_(0) {}
  InvariantTensor(int n, std::vector<Slot> slots);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }

  bool same_shape(const InvariantTensor& o) const {
    return n_ == o.n_ && slots_ == o.slots_;
  }

  const Scalar& get(const std::vector<int>& idx) const { return a_[offset(idx)]; }
  void set(const std::vector<int>& idx, Scalar v);
  void add_at(const std::vector<int>& idx, const Scalar& v);

  bool admissible(const std::vector<int>& idx) const;

  bool is_zero() const;
  InvariantTensor& operator+=(const InvariantTensor& o);
  InvariantTensor& operator-=(const InvariantTensor& o);
  friend InvariantTensor operator+(InvariantTensor a, const InvariantTensor& b) {
    return a += b;
  }
  friend InvariantTensor operator-(InvariantTensor a, const InvariantTensor& b) {
    return a -= b;
  }
  friend InvariantTensor operator-(const InvariantTensor& t) { return t.scaled(Scalar(-1)); }
  friend bool operator==(const InvariantTensor& a, const InvariantTensor& b) {
    return a.n_ == b.n_ && a.slots_ == b.slots_ && a.a_ == b.a_;
  }

  InvariantTensor scaled(const Scalar& c) const;
  InvariantTensor conj() const;
  InvariantTensor permuted(const std::vector<int>& perm) const;

  // Sum over one pair of slots of a single tensor (direct delta pairing).
  InvariantTensor traced(int s1, int s2) const;

  // Visits every admissible multi-index.
  template <typename F>
  void for_each(F&& f) const {
    std::vector<int> idx(slots_.size(), 0);
    for_each_rec(0, idx, f);
  }

  size_t offset(const std::vector<int>& idx) const;

 private:
  template <typename F>
  void for_each_rec(size_t d, std::vector<int>& idx, F&& f) const {
    if (d == slots_.size()) {
      f(static_cast<const std::vector<int>&>(idx));
      return;
    }
    for (int v : allowed_[d]) {
      idx[d] = v;
      for_each_rec(d + 1, idx, f);
    }
  }

  int n_;
  std::vector<Slot> slots_;
  std::vector<std::vector<int>> allowed_;
  std::vector<Scalar> a_;
};

// Bilinear contraction: sums the listed (slotA, slotB) pairs directly
// (delta pairing over common admissible values). Result slots are the
// remaining A slots followed by the remaining B slots.
InvariantTensor contract(const InvariantTensor& A, const InvariantTensor& B,
                         const std::vector<std::pair<int, int>>& sums);

inline InvariantTensor outer(const InvariantTensor& A, const InvariantTensor& B) {
  return contract(A, B, {});
}

// Contract two slots of T against a rank-2 pairing tensor (the Levi form
// or its inverse). Result drops the two slots of T.
InvariantTensor pair_slots(const InvariantTensor& pairing, const InvariantTensor& T,
                           int s1, int s2);

InvariantTensor zeros_like(const InvariantTensor& t);

}  // namespace achcr

#endif
