#include "dbound/distance_transform.hpp"

#include "dbound/error.hpp"

#include <string>

namespace dbound {

StatePartition::StatePartition(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 0) {
    throw Error(ErrorCode::invalid_argument,
                "StatePartition: need n >= 1 and m >= 0, got n=" + std::to_string(n) +
                    " m=" + std::to_string(m));
  }
}

Matrix StatePartition::difference_operator() const {
  Matrix l = Matrix::Zero(n_, dim());
  l.leftCols(n_).setIdentity();
  l.middleCols(n_, n_) = -Matrix::Identity(n_, n_);
  return l;
}

TransformPair build_transform(const StatePartition& partition) {
  const int n = partition.n();
  const Matrix eye = Matrix::Identity(n, n);
  Matrix pair(2 * n, 2 * n);
  pair << eye, -eye, eye, eye;
  Matrix pair_inv(2 * n, 2 * n);
  pair_inv << 0.5 * eye, 0.5 * eye, -0.5 * eye, 0.5 * eye;
  const Matrix aux = Matrix::Identity(partition.m(), partition.m());
  return {direct_sum(pair, aux), direct_sum(pair_inv, aux)};
}

Gaussian prior_to_z(const Gaussian& prior, const StatePartition& partition) {
  if (prior.dim() != partition.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "prior_to_z: prior has dimension " + std::to_string(prior.dim()) +
                    ", partition expects " + std::to_string(partition.dim()));
  }
  return linear_transform(prior, build_transform(partition).forward);
}

ZBlocks split_z(const Gaussian& z, const StatePartition& partition) {
  if (z.dim() != partition.dim() || z.cov.rows() != z.dim() || z.cov.cols() != z.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "split_z: z does not match the partition");
  }
  const int n = partition.n();
  const int c = partition.complement_dim();
  return {z.mean.head(n), z.mean.tail(c), z.cov.topLeftCorner(n, n),
          z.cov.bottomRightCorner(c, c), z.cov.bottomLeftCorner(c, n)};
}

ConditionalMap conditional_map(const ZBlocks& blocks) {
  const Matrix factor = cholesky_lower(blocks.cov1);
  const auto diag = factor.diagonal();
  const double ratio = diag.maxCoeff() / diag.minCoeff();
  if (ratio * ratio > kMaxZ1Condition) {
    throw Error(ErrorCode::not_positive_definite,
                "conditional_map: covariance of z1 is numerically singular (condition "
                "estimate " + std::to_string(ratio * ratio) + ")");
  }
  // gain^T = C_{z1}^{-1} C_{z1 z2}
  Matrix gain = cholesky_solve(factor, blocks.cross21.transpose()).transpose();
  Vector offset = blocks.mean2 - gain * blocks.mean1;
  Matrix residual = symmetrized(blocks.cov2 - gain * blocks.cross21.transpose());
  return {std::move(gain), std::move(offset), std::move(residual)};
}

ConditionalMap conditional_map(const Gaussian& z_prior, const StatePartition& partition) {
  return conditional_map(split_z(z_prior, partition));
}

}  // namespace dbound
