#ifndef ACHCR_LINALG_HPP
#define ACHCR_LINALG_HPP

#include <optional>
#include <vector>

#include "achcr/scalar.hpp"

namespace achcr {

using Mat = std::vector<std::vector<Scalar>>;
using Vec = std::vector<Scalar>;

Mat identity_matrix(int n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& v);

// Exact Gaussian elimination. Returns nullopt when singular.
std::optional<Mat> try_invert(Mat a);

struct SingularMatrix : std::domain_error {
  SingularMatrix() : std::domain_error("singular matrix") {}
};

inline Mat invert(Mat a) {
  auto r = try_invert(std::move(a));
  if (!r) throw SingularMatrix();
  return *r;
}

// Solves a (possibly overdetermined) exact linear system A x = b.
// Requires a unique solution consistent with every equation; returns
// nullopt if the system is inconsistent or underdetermined.
std::optional<Vec> solve_unique(Mat a, Vec b);

Scalar determinant(Mat a);

}  // namespace achcr

#endif
