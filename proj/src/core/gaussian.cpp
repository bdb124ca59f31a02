#include "dbound/gaussian.hpp"

#include "dbound/error.hpp"

#include <cmath>
#include <string>

namespace dbound {
namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

void validate(const Gaussian& g) {
  if (g.cov.rows() != g.mean.size() || g.cov.cols() != g.mean.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "gaussian: mean length " + std::to_string(g.mean.size()) +
                    " vs covariance " + shape(g.cov));
  }
  if (!g.mean.allFinite() || !g.cov.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "gaussian: non-finite entries");
  }
  const double scale = std::max(1.0, g.cov.cwiseAbs().maxCoeff());
  if ((g.cov - g.cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::invalid_argument, "gaussian: covariance is not symmetric");
  }
  cholesky_lower(g.cov);
}

std::optional<Matrix> try_cholesky_lower(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Eigen::Index n = m.rows();
  Matrix g = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= g(j, k) * g(j, k);
    if (!(pivot > 0.0)) return std::nullopt;
    const double d = std::sqrt(pivot);
    g(j, j) = d;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= g(i, k) * g(j, k);
      g(i, j) = s / d;
    }
  }
  return g;
}

Matrix cholesky_lower(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "cholesky_lower: matrix is " + shape(m));
  }
  auto g = try_cholesky_lower(m);
  if (!g) {
    throw Error(ErrorCode::not_positive_definite,
                "cholesky_lower: non-positive pivot in " + shape(m) + " matrix");
  }
  return *std::move(g);
}

Matrix cholesky_solve(const Matrix& lower, const Matrix& rhs) {
  if (lower.rows() != rhs.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "cholesky_solve: factor " + shape(lower) + " vs rhs " + shape(rhs));
  }
  const Matrix y = lower.triangularView<Eigen::Lower>().solve(rhs);
  return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Gaussian affine_transform(const Gaussian& g, const Matrix& transform,
                          const Vector& offset) {
  if (transform.cols() != g.mean.size() || g.cov.rows() != g.mean.size() ||
      offset.size() != transform.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "affine_transform: transform " + shape(transform) + ", mean length " +
                    std::to_string(g.mean.size()) + ", offset length " +
                    std::to_string(offset.size()));
  }
  return {transform * g.mean + offset,
          symmetrized(transform * g.cov * transform.transpose())};
}

Gaussian linear_transform(const Gaussian& g, const Matrix& transform) {
  return affine_transform(g, transform, Vector::Zero(transform.rows()));
}

}  // namespace dbound
