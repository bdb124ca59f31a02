#pragma once

#include <Eigen/Dense>

#include <optional>

namespace dbound {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Multivariate normal N(mean, cov). Construction does not validate; call
/// validate() at API boundaries.
struct Gaussian {
  Vector mean;
  Matrix cov;

  Eigen::Index dim() const { return mean.size(); }
};

/// Throws DimensionMismatch, InvalidArgument (non-finite entries or asymmetry
/// beyond 1e-12 relative) or NotPositiveDefinite.
void validate(const Gaussian& g);

/// Lower-triangular G with G * G^T = m. Throws NotPositiveDefinite when a
/// pivot is not strictly positive.
Matrix cholesky_lower(const Matrix& m);

/// Same as cholesky_lower but reports failure instead of throwing.
std::optional<Matrix> try_cholesky_lower(const Matrix& m);

/// Solves (G G^T) X = rhs given the lower factor G.
Matrix cholesky_solve(const Matrix& lower, const Matrix& rhs);

Matrix symmetrized(const Matrix& m);

/// A (+) B, the block-diagonal direct sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Returns N(M mean + b, M cov M^T) with the covariance re-symmetrized.
Gaussian affine_transform(const Gaussian& g, const Matrix& transform,
                          const Vector& offset);

/// Linear map without offset.
Gaussian linear_transform(const Gaussian& g, const Matrix& transform);

}  // namespace dbound
