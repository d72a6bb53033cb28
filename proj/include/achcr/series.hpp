#ifndef ACHCR_SERIES_HPP
#define ACHCR_SERIES_HPP

#include <map>

#include "achcr/linalg.hpp"
#include "achcr/tensor.hpp"

namespace achcr {

// Polynomial in one variable with rational coefficients, evaluated at
// integer degrees. c[k] is the coefficient of x^k.
struct Poly {
  std::vector<Rational> c;

  Rational eval(int d) const {
    Rational acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * d + c[k];
    return acc;
  }
};

struct TruncationError : std::logic_error {
  explicit TruncationError(const std::string& what) : std::logic_error(what) {}
};

struct SingularLeadingBlock : std::domain_error {
  SingularLeadingBlock() : std::domain_error("leading metric block is singular") {}
};

// Formal power series in rho with InvariantTensor coefficients.
// Coefficients are known exactly for degrees 0 <= d < trunc and unknown
// beyond; arithmetic propagates trunc = min of the operands (plus the
// shift for multiplication by rho^k).
class RhoSeries {
 public:
  // Effectively "known to all orders"; used for constant series.
  static constexpr int kExact = 1 << 24;

  RhoSeries() : n_(0), trunc_(0) {}
  RhoSeries(int n, std::vector<Slot> slots, int trunc)
      : n_(n), slots_(std::move(slots)), trunc_(trunc) {}

  static RhoSeries constant(InvariantTensor t, int trunc = kExact);
  static RhoSeries monomial(int degree, InvariantTensor t, int trunc = kExact);

  int n() const { return n_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  int trunc() const { return trunc_; }
  const std::map<int, InvariantTensor>& coeffs() const { return c_; }

  bool same_shape(const RhoSeries& o) const {
    return n_ == o.n_ && slots_ == o.slots_;
  }

  // Zero tensor when no coefficient is stored; degrees >= trunc are
  // unknown and may not be read.
  InvariantTensor coeff(int d) const;
  void set_coeff(int d, InvariantTensor t);
  void add_coeff(int d, const InvariantTensor& t);

  // Lowest degree with a nonzero coefficient (trunc when none stored).
  int order() const;
  // True when every known coefficient below `o` vanishes. Requires
  // o <= trunc: the claim is unverifiable past the truncation.
  bool is_O(int o) const;

  void truncate_to(int t);

  RhoSeries& operator+=(const RhoSeries& o);
  RhoSeries& operator-=(const RhoSeries& o);
  friend RhoSeries operator+(RhoSeries a, const RhoSeries& b) { return a += b; }
  friend RhoSeries operator-(RhoSeries a, const RhoSeries& b) { return a -= b; }
  friend RhoSeries operator-(const RhoSeries& s) { return s.scaled(Scalar(-1)); }

  RhoSeries scaled(const Scalar& c) const;
  RhoSeries conj() const;
  RhoSeries permuted(const std::vector<int>& perm) const;
  RhoSeries traced(int s1, int s2) const;

  // Multiplication by rho^k (k >= 0 shifts degrees and trunc up; a
  // negative k divides and requires the low coefficients to vanish).
  RhoSeries shifted(int k) const;

  // Coefficient at degree d is scaled by p(d).
  RhoSeries euler_applied(const Poly& p) const;
  RhoSeries rho_d_rho() const { return euler_applied(Poly{{0, 1}}); }

 private:
  int n_;
  std::vector<Slot> slots_;
  int trunc_;
  std::map<int, InvariantTensor> c_;
};

// Cauchy product combined with tensor contraction; slot bookkeeping
// matches contract() on the coefficients.
RhoSeries series_contract(const RhoSeries& A, const RhoSeries& B,
                          const std::vector<std::pair<int, int>>& sums);

RhoSeries series_pair_slots(const InvariantTensor& pairing, const RhoSeries& S,
                            int s1, int s2);

// Inverse of a rank-2 series metric with invertible degree-0 part, by
// the Neumann recursion. Result slots are the upper versions.
RhoSeries invert_metric_series(const RhoSeries& g);

}  // namespace achcr

#endif
