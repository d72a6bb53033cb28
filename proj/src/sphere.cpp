#include "achcr/sphere.hpp"

#include <string>

#include "achcr/linalg.hpp"

namespace achcr {

namespace {

// Newton interpolation through (ts[i], vs[i]); monomial coefficients.
std::vector<Scalar> interpolate(const std::vector<Rational>& ts,
                                const std::vector<Scalar>& vs) {
  size_t s = ts.size();
  std::vector<Scalar> dd = vs;  // divided differences, built in place
  for (size_t lvl = 1; lvl < s; ++lvl)
    for (size_t i = s - 1; i >= lvl; --i)
      dd[i] = (dd[i] - dd[i - 1]) / Scalar(Rational(ts[i] - ts[i - lvl]));

  std::vector<Scalar> out{dd[0]};
  std::vector<Scalar> basis{Scalar(1)};
  for (size_t i = 1; i < s; ++i) {
    // basis *= (x - ts[i-1])
    std::vector<Scalar> nb(basis.size() + 1, Scalar(0));
    for (size_t j = 0; j < basis.size(); ++j) {
      nb[j + 1] += basis[j];
      nb[j] -= basis[j] * Scalar(ts[i - 1]);
    }
    basis = std::move(nb);
    if (out.size() < basis.size()) out.resize(basis.size(), Scalar(0));
    for (size_t j = 0; j < basis.size(); ++j) out[j] += dd[i] * basis[j];
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

Scalar poly_eval(const std::vector<Scalar>& p, const Rational& t) {
  Scalar acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * Scalar(t) + p[i];
  return acc;
}

// product truncated to degree k
std::vector<Scalar> mul_trunc(const std::vector<Scalar>& a,
                              const std::vector<Scalar>& b, int k) {
  std::vector<Scalar> out(k + 1, Scalar(0));
  for (size_t i = 0; i < a.size() && i <= static_cast<size_t>(k); ++i)
    for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(k); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Scalar> invert_series(const std::vector<Scalar>& e, int k) {
  std::vector<Scalar> inv(k + 1, Scalar(0));
  inv[0] = Scalar(1) / e[0];
  for (int m = 1; m <= k; ++m) {
    Scalar acc(0);
    for (int i = 1; i <= m; ++i) {
      Scalar ei = static_cast<size_t>(i) < e.size() ? e[i] : Scalar(0);
      acc += ei * inv[m - i];
    }
    inv[m] = -acc / e[0];
  }
  return inv;
}

Scalar det_levi(const InvariantTensor& h) {
  int n = h.n();
  Mat m(n, Vec(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = h.get({a + 2, b + 2 + n});
  return determinant(m);
}

}  // namespace

VariationCoefficients leading_recursion(int n) {
  if (n < 1) throw BadParameter("leading_recursion requires n >= 1");
  VariationCoefficients v;
  v.n = n;
  v.c.push_back(Rational(2, n));
  for (int l = 2; l <= n; ++l) v.c.push_back(-v.c.back() / (l * (n + 1 - l)));
  v.a = -v.c.back() / 2;
  return v;
}

std::vector<std::string> closed_form_check(int n) {
  std::vector<std::string> out;
  VariationCoefficients v = leading_recursion(n);
  Rational fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  Rational expected = Rational(n % 2 ? -1 : 1) / (fact * fact);
  if (v.a != expected)
    out.push_back("top variation coefficient for n = " + std::to_string(n) + " is " +
                  to_string(v.a) + ", expected " + to_string(expected));
  return out;
}

DeformationOracle::DeformationOracle(const CRFrameAlgebra& A,
                                     const InvariantTensor& mu_lowered,
                                     int degree_bound)
    : n_(mu_lowered.n()), bound_(degree_bound) {
  for (int a = 2; a <= n_ + 1; ++a)
    for (int b = 2; b <= n_ + 1; ++b)
      if (mu_lowered.get({a, b}) != mu_lowered.get({b, a}))
        throw AsymmetricMu();

  InvariantTensor h0 = levi_form(A);
  InvariantTensor mu_mixed = contract(mu_lowered, levi_inverse(h0), {{1, 0}});

  const size_t wanted = static_cast<size_t>(bound_) + 3;
  for (long j = 1; ts_.size() < wanted; ++j) {
    Rational t(1, j);  // small points keep the interpolation numerators modest
    try {
      CRFrameAlgebra At = deform(A, mu_mixed.scaled(Scalar(t)));
      PseudohermitianData P = tw_connection(At);
      ts_.push_back(t);
      det_.push_back(det_levi(P.h));
      h_.push_back(P.h);
      N_.push_back(P.N_lo);
      A_.push_back(P.A_lo);
      R_.push_back(P.Ricci);
    } catch (const DegenerateDeformation&) {
    } catch (const DegenerateLeviForm&) {
    }
  }

  dcoeffs_ = interpolate(
      std::vector<Rational>(ts_.begin(), ts_.begin() + bound_ + 1),
      std::vector<Scalar>(det_.begin(), det_.begin() + bound_ + 1));
  for (size_t j = bound_ + 1; j < ts_.size(); ++j)
    if (poly_eval(dcoeffs_, ts_[j]) != det_[j])
      throw DegreeBoundExceeded("determinant of the deformed Levi form exceeds degree " +
                                std::to_string(bound_));
}

InvariantTensor DeformationOracle::taylor(DeformedQuantity q, int k) const {
  const std::vector<InvariantTensor>* src = nullptr;
  switch (q) {
    case DeformedQuantity::Levi: src = &h_; break;
    case DeformedQuantity::Nijenhuis: src = &N_; break;
    case DeformedQuantity::Torsion: src = &A_; break;
    case DeformedQuantity::Ricci: src = &R_; break;
  }
  InvariantTensor out = zeros_like(src->front());
  std::vector<Rational> tfit(ts_.begin(), ts_.begin() + bound_ + 1);

  out.for_each([&](const std::vector<int>& idx) {
    // clear denominators with increasing powers of the determinant until
    // the samples interpolate to a verified polynomial
    int ddeg = std::max(static_cast<int>(dcoeffs_.size()) - 1, 1);
    for (int p = 0; p * ddeg <= bound_; ++p) {
      std::vector<Scalar> vfit;
      vfit.reserve(bound_ + 1);
      std::vector<Scalar> dpow(ts_.size(), Scalar(1));
      for (size_t j = 0; j < ts_.size(); ++j)
        for (int q2 = 0; q2 < p; ++q2) dpow[j] *= det_[j];
      for (size_t j = 0; j <= static_cast<size_t>(bound_); ++j)
        vfit.push_back((*src)[j].get(idx) * dpow[j]);
      std::vector<Scalar> g = interpolate(tfit, vfit);
      bool ok = true;
      for (size_t j = bound_ + 1; j < ts_.size(); ++j)
        if (poly_eval(g, ts_[j]) != (*src)[j].get(idx) * dpow[j]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      // Taylor coefficient of g / d^p at t = 0
      std::vector<Scalar> dp{Scalar(1)};
      for (int q2 = 0; q2 < p; ++q2) dp = mul_trunc(dp, dcoeffs_, k);
      std::vector<Scalar> f = mul_trunc(g, invert_series(dp, k), k);
      out.set(idx, f[k]);
      return;
    }
    throw DegreeBoundExceeded("deformed invariant entry exceeds degree " +
                              std::to_string(bound_) + " after clearing denominators");
  });
  return out;
}

std::vector<std::string> variation_formula_check(const CRFrameAlgebra& A,
                                                 const InvariantTensor& mu_lowered,
                                                 int degree_bound) {
  std::vector<std::string> out;
  PseudohermitianData P = tw_connection(A);
  int n = P.n;
  if (!P.A_lo.is_zero() || !P.N_lo.is_zero() || !P.R4.is_zero()) {
    out.push_back("base structure is not flat");
    return out;
  }

  DeformationOracle oracle(A, mu_lowered, degree_bound);
  InvariantTensor dh = oracle.taylor(DeformedQuantity::Levi, 1);
  InvariantTensor dN = oracle.taylor(DeformedQuantity::Nijenhuis, 1);
  InvariantTensor dA = oracle.taylor(DeformedQuantity::Torsion, 1);
  InvariantTensor dR = oracle.taylor(DeformedQuantity::Ricci, 1);

  if (!dh.is_zero()) out.push_back("Levi form has nonzero first variation");

  InvariantTensor dmu = covariant_derivative(P, mu_lowered);  // (b, c, dir)
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      for (int c = 2; c <= n + 1; ++c) {
        Scalar rhs = dmu.get({b, c, a}) - dmu.get({a, c, b});
        if (dN.get({a, b, c}) != rhs)
          out.push_back("Nijenhuis variation mismatch at (" + std::to_string(a) + "," +
                        std::to_string(b) + "," + std::to_string(c) + ")");
      }
      Scalar rhsA = -dmu.get({a, b, 1});
      if (dA.get({a, b}) != rhsA)
        out.push_back("torsion variation mismatch at (" + std::to_string(a) + "," +
                      std::to_string(b) + ")");
    }

  // div mu: grad^t mu_{at}
  InvariantTensor X = contract(P.hinv, dmu, {{0, 1}, {1, 2}});  // (a)
  InvariantTensor dX = covariant_derivative(P, X);              // (a, dir)
  InvariantTensor dXc = covariant_derivative(P, X.conj());      // (a-bar, dir)
  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar rhs = -dXc.get({b + n, a}) - dX.get({a, b + n});
      if (dR.get({a, b + n}) != rhs)
        out.push_back("Ricci variation mismatch at (" + std::to_string(a) + "," +
                      std::to_string(b) + "-bar)");
    }
  return out;
}

}  // namespace achcr
