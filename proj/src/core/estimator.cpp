#include "dbound/estimator.hpp"

#include "dbound/error.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace dbound {

ZMoments reconstruct_z_moments(const ConditionalMap& cond, const TruncatedMoments& z1,
                               const ZBlocks& z_prior) {
  const Eigen::Index n = z1.mean.size();
  const Eigen::Index c = cond.offset.size();
  if (cond.gain.rows() != c || cond.gain.cols() != n || z1.second_moment.rows() != n ||
      z_prior.cov2.rows() != c || z_prior.cross21.rows() != c || z_prior.cross21.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "reconstruct_z_moments: block sizes do not conform");
  }
  const Matrix& a = cond.gain;
  const Vector& u = cond.offset;
  const Vector& m1 = z1.mean;
  const Matrix& p1 = z1.second_moment;

  const Vector m2 = u + a * m1;
  const Matrix p12 = m1 * u.transpose() + p1 * a.transpose();
  const Matrix p2 = z_prior.cov2 - a * z_prior.cross21.transpose() + u * u.transpose() +
                    u * m1.transpose() * a.transpose() + a * m1 * u.transpose() +
                    a * p1 * a.transpose();

  ZMoments out;
  out.mean.resize(n + c);
  out.mean << m1, m2;
  Matrix second(n + c, n + c);
  second << p1, p12, p12.transpose(), p2;
  out.cov = symmetrized(second - out.mean * out.mean.transpose());
  return out;
}

PreparedProblem::PreparedProblem(StatePartition partition, DistanceBound bound, double alpha)
    : partition_(partition),
      bound_(bound),
      alpha_(alpha),
      eta_(confidence_radius(partition.n(), alpha)),
      transform_(build_transform(partition)) {}

Gaussian PreparedProblem::to_z(const Gaussian& prior) const {
  if (prior.dim() != partition_.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "estimate: prior has dimension " + std::to_string(prior.dim()) +
                    ", partition expects " + std::to_string(partition_.dim()));
  }
  return linear_transform(prior, transform_.forward);
}

SigmaPointSet PreparedProblem::sigma_points(const Gaussian& prior) const {
  const Gaussian z = to_z(prior);
  const int n = partition_.n();
  return build_sigma_point_set(z.mean.head(n), z.cov.topLeftCorner(n, n), bound_, eta_);
}

ConstrainedEstimate PreparedProblem::finish(const Gaussian& z_prior,
                                            const TruncatedMoments& z1) const {
  const ZBlocks blocks = split_z(z_prior, partition_);
  const ConditionalMap cond = conditional_map(blocks);
  const ZMoments zm = reconstruct_z_moments(cond, z1, blocks);
  const Matrix& t_inv = transform_.inverse;
  ConstrainedEstimate out;
  out.x_hat = t_inv * zm.mean;
  out.c_hat = symmetrized(t_inv * zm.cov * t_inv.transpose());
  out.z1_moments = z1;
  return out;
}

ConstrainedEstimate PreparedProblem::estimate(const Gaussian& prior) const {
  const Gaussian z = to_z(prior);
  const int n = partition_.n();
  const Vector m1 = z.mean.head(n);
  const Matrix c1 = z.cov.topLeftCorner(n, n);
  const SigmaPointSet set = build_sigma_point_set(m1, c1, bound_, eta_);

  // n = 1 always takes the exact closed form; the sigma set is still built
  // for the activity flags.
  const TruncatedMoments z1 = n == 1
      ? truncated_scalar_moments(m1[0], c1(0, 0), bound_.gamma())
      : weighted_moments(set);
  ConstrainedEstimate out = finish(z, z1);
  out.active = set.any_projected();
  out.degenerate = set.all_projected();
  return out;
}

ConstrainedEstimate PreparedProblem::estimate_with_z1_moments(const Gaussian& prior,
                                                              const TruncatedMoments& z1) const {
  if (z1.mean.size() != partition_.n()) {
    throw Error(ErrorCode::dimension_mismatch, "estimate_with_z1_moments: z1 moments have wrong size");
  }
  ConstrainedEstimate out = finish(to_z(prior), z1);
  out.active = true;
  return out;
}

ConstrainedEstimate estimate(const Gaussian& prior, const StatePartition& partition,
                             const DistanceBound& bound, double alpha) {
  return PreparedProblem(partition, bound, alpha).estimate(prior);
}

Matrix floor_negative_eigenvalues(const Matrix& cov, bool* repaired) {
  if (repaired) *repaired = false;
  if (try_cholesky_lower(cov)) return cov;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(cov));
  Vector values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.minCoeff() < -kPsdFloor * scale) {
    throw Error(ErrorCode::not_positive_definite,
                "floor_negative_eigenvalues: eigenvalue " + std::to_string(values.minCoeff()) +
                    " is below the floor");
  }
  values = values.cwiseMax(0.0);
  if (repaired) *repaired = true;
  return symmetrized(solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().transpose());
}

}  // namespace dbound
