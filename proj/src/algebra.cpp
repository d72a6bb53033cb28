#include "achcr/algebra.hpp"

#include <map>
#include <tuple>

namespace achcr {

namespace {

std::vector<Slot> structure_slots() { return {lo(K_M), lo(K_M), up(K_M)}; }

const int kMaxN = 8;

void check_n(int n) {
  if (n < 1 || n > kMaxN) throw BadParameter("CR dimension out of range");
}

}  // namespace

std::string frame_label(int n, int idx) {
  if (idx == 1) return "T";
  if (idx >= 2 && idx <= n + 1) return "Z" + std::to_string(idx - 1);
  if (idx >= n + 2 && idx <= 2 * n + 1) return "Zb" + std::to_string(idx - n - 1);
  throw std::out_of_range("frame index");
}

int parse_frame_label(int n, const std::string& label) {
  if (label == "T") return 1;
  bool bar = label.size() >= 2 && label[0] == 'Z' && label[1] == 'b';
  size_t digits = bar ? 2 : 1;
  if (label.empty() || label[0] != 'Z' || label.size() <= digits)
    throw BadParameter("unknown frame label: " + label);
  int a = 0;
  for (size_t i = digits; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9')
      throw BadParameter("unknown frame label: " + label);
    a = a * 10 + (label[i] - '0');
  }
  if (a < 1 || a > n) throw BadParameter("frame label out of range: " + label);
  return bar ? n + 1 + a : 1 + a;
}

CRFrameAlgebra make_algebra(int n, const std::vector<BracketTerm>& brackets) {
  check_n(n);
  CRFrameAlgebra A;
  A.n = n;
  A.c = InvariantTensor(n, structure_slots());
  std::map<std::tuple<int, int, int>, Scalar> seen;
  auto put = [&](int x, int y, int z, const Scalar& v) {
    auto key = std::make_tuple(x, y, z);
    auto [it, fresh] = seen.emplace(key, v);
    if (!fresh && it->second != v)
      throw BracketConflict("conflicting values for c_{" + frame_label(n, x) + "," +
                            frame_label(n, y) + "}^" + frame_label(n, z));
    if (fresh) A.c.set({x, y, z}, v);
  };
  for (const auto& b : brackets) {
    int xb = conj_index(n, b.x), yb = conj_index(n, b.y), zb = conj_index(n, b.z);
    put(b.x, b.y, b.z, b.c);
    put(b.y, b.x, b.z, -b.c);
    put(xb, yb, zb, b.c.conj());
    put(yb, xb, zb, -b.c.conj());
  }
  return A;
}

ValidationReport validate(const CRFrameAlgebra& A) {
  ValidationReport rep;
  const int n = A.n;
  const int L = alphabet_size(n);
  auto lbl = [&](int i) { return frame_label(n, i); };

  for (int x = 1; x < L; ++x)
    for (int y = x; y < L; ++y)
      for (int z = 1; z < L; ++z) {
        Scalar s = A.bracket(x, y, z) + A.bracket(y, x, z);
        if (!s.is_zero())
          rep.fail("antisymmetry: c_{" + lbl(x) + "," + lbl(y) + "}^" + lbl(z) +
                   " + c_{" + lbl(y) + "," + lbl(x) + "}^" + lbl(z) + " = " +
                   to_string(s));
      }

  for (int x = 1; x < L; ++x)
    for (int y = 1; y < L; ++y)
      for (int z = 1; z < L; ++z) {
        Scalar lhs = A.bracket(conj_index(n, x), conj_index(n, y), conj_index(n, z));
        Scalar rhs = A.bracket(x, y, z).conj();
        if (lhs != rhs)
          rep.fail("reality: conjugate of c_{" + lbl(x) + "," + lbl(y) + "}^" +
                   lbl(z) + " mismatch: " + to_string(lhs) + " vs " + to_string(rhs));
      }

  for (int x = 1; x < L; ++x)
    for (int y = x + 1; y < L; ++y)
      for (int z = y + 1; z < L; ++z)
        for (int w = 1; w < L; ++w) {
          Scalar s;
          for (int v = 1; v < L; ++v)
            s += A.bracket(y, z, v) * A.bracket(x, v, w) +
                 A.bracket(z, x, v) * A.bracket(y, v, w) +
                 A.bracket(x, y, v) * A.bracket(z, v, w);
          if (!s.is_zero())
            rep.fail("jacobi: [" + lbl(x) + "," + lbl(y) + "," + lbl(z) +
                     "] component " + lbl(w) + " = " + to_string(s));
        }

  for (int a = 2; a <= n + 1; ++a)
    for (int b = 2; b <= n + 1; ++b) {
      Scalar s = A.bracket(a, b, 1);
      if (!s.is_zero())
        rep.fail("partial integrability: T-component of [" + lbl(a) + "," + lbl(b) +
                 "] = " + to_string(s));
    }

  for (int y = 1; y < L; ++y) {
    Scalar s = A.bracket(1, y, 1);
    if (!s.is_zero())
      rep.fail("adaptedness: T-component of [T," + lbl(y) + "] = " + to_string(s));
  }

  Mat H(n, Vec(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      H[a][b] = Scalar::i() * A.bracket(2 + a, n + 2 + b, 1);
  if (determinant(H).is_zero()) rep.fail("nondegeneracy: Levi form is singular");

  return rep;
}

InvariantTensor levi_form(const CRFrameAlgebra& A) {
  const int n = A.n;
  InvariantTensor h(n, {lo(K_H), lo(K_A)});
  Mat H(n, Vec(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Scalar v = Scalar::i() * A.bracket(2 + a, n + 2 + b, 1);
      H[a][b] = v;
      h.set({2 + a, n + 2 + b}, v);
    }
  if (determinant(H).is_zero()) throw DegenerateLeviForm();
  return h;
}

InvariantTensor levi_inverse(const InvariantTensor& h) {
  const int n = h.n();
  Mat H(n, Vec(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) H[a][b] = h.get({2 + a, n + 2 + b});
  auto inv = try_invert(H);
  if (!inv) throw DegenerateLeviForm();
  // h^{gb} solves h_{ab} h^{gb} = delta_a^g, so as a matrix it is the
  // transposed inverse of H.
  InvariantTensor out(n, {up(K_H), up(K_A)});
  for (int g = 0; g < n; ++g)
    for (int b = 0; b < n; ++b) out.set({2 + g, n + 2 + b}, (*inv)[b][g]);
  return out;
}

CRFrameAlgebra change_frame(const CRFrameAlgebra& A, const Mat& S) {
  const int n = A.n;
  const int L = static_cast<int>(S.size());
  auto Sinv = try_invert(S);
  if (!Sinv) throw DegenerateDeformation();
  CRFrameAlgebra out;
  out.n = n;
  out.c = InvariantTensor(n, structure_slots());
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y)
      for (int s = 0; s < L; ++s) {
        Scalar acc;
        for (int p = 0; p < L; ++p) {
          if (S[p][x].is_zero()) continue;
          for (int q = 0; q < L; ++q) {
            if (S[q][y].is_zero()) continue;
            for (int r = 0; r < L; ++r) {
              const Scalar& c = A.bracket(p + 1, q + 1, r + 1);
              if (c.is_zero()) continue;
              acc += S[p][x] * S[q][y] * c * (*Sinv)[s][r];
            }
          }
        }
        out.c.set({x + 1, y + 1, s + 1}, acc);
      }
  return out;
}

CRFrameAlgebra deform(const CRFrameAlgebra& A, const InvariantTensor& mu) {
  const int n = A.n;
  InvariantTensor h = levi_form(A);
  // mu_{ab} = mu_a^{g-bar} h_{b g-bar}
  InvariantTensor mul = contract(mu, h, {{1, 1}});
  if (!(mul == mul.permuted({1, 0}))) throw AsymmetricMu();

  const int L = 2 * n + 1;
  Mat S(L, Vec(L));
  for (int i = 0; i < L; ++i) S[i][i] = Scalar(1);
  InvariantTensor muc = mu.conj();
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      S[n + b - 1 + 1][a] += mu.get({1 + a, n + 1 + b});
      S[b][n + a] += muc.get({n + 1 + a, 1 + b});
    }
  CRFrameAlgebra out = change_frame(A, S);
  Mat H(n, Vec(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      H[a][b] = Scalar::i() * out.bracket(2 + a, n + 2 + b, 1);
  if (determinant(H).is_zero()) throw DegenerateDeformation();
  return out;
}

CRFrameAlgebra heisenberg(int n) {
  check_n(n);
  std::vector<BracketTerm> b;
  for (int a = 1; a <= n; ++a)
    b.push_back({1 + a, n + 1 + a, 1, -Scalar::i()});
  return make_algebra(n, b);
}

CRFrameAlgebra su2() {
  return make_algebra(1, {{2, 3, 1, -Scalar::i()},
                          {1, 2, 2, Scalar(Rational(0), Rational(-2))}});
}

CRFrameAlgebra twisted_heisenberg(int n, const Scalar& c) {
  if (n < 2) throw BadParameter("twisted_heisenberg needs n >= 2");
  check_n(n);
  std::vector<BracketTerm> b;
  for (int a = 1; a <= n; ++a)
    b.push_back({1 + a, n + 1 + a, 1, -Scalar::i()});
  // [Z1, Z2] = c Zb1 plus the companion [Z1, Zb2] = c Zb1; the companion
  // is forced (up to phase) by the Jacobi identity on (Z1, Z2, Zb2).
  b.push_back({2, 3, n + 2, c});
  b.push_back({2, n + 3, n + 2, c});
  return make_algebra(n, b);
}

CRFrameAlgebra rescale(const CRFrameAlgebra& A, const Rational& lambda) {
  if (lambda <= 0) throw BadParameter("rescale factor must be positive");
  const int L = 2 * A.n + 1;
  Mat S(L, Vec(L));
  S[0][0] = Scalar(Rational(1) / lambda);
  for (int i = 1; i < L; ++i) S[i][i] = Scalar(1);
  return change_frame(A, S);
}

}  // namespace achcr
