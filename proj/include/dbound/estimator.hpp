#pragma once

#include "dbound/constrained_moments.hpp"
#include "dbound/distance_transform.hpp"
#include "dbound/gaussian.hpp"

#include <optional>

namespace dbound {

/// Approximate MMSE estimate of x given ||x1 - x2|| <= gamma.
struct ConstrainedEstimate {
  Vector x_hat;
  Matrix c_hat;
  /// Constrained z1 moments the reconstruction was driven by.
  TruncatedMoments z1_moments;
  /// At least one sigma point fell outside the bound.
  bool active = false;
  /// Every sigma point was projected, so the z1 moments collapse onto the
  /// boundary and carry no accuracy guarantee.
  bool degenerate = false;

  Gaussian as_gaussian() const { return {x_hat, c_hat}; }
};

/// Mean and covariance of the full z vector under the constraint.
struct ZMoments {
  Vector mean;
  Matrix cov;
};

/// Rebuilds the conditional moments of z = [z1; z2] from the constrained z1
/// moments through the affine map of z2 given z1:
///   m2  = u + A m1
///   P12 = m1 u^T + P1 A^T
///   P2  = C2 - A C21^T + u u^T + u m1^T A^T + A m1 u^T + A P1 A^T
///   C   = [[P1, P12], [P12^T, P2]] - m m^T
/// Evaluated in exactly that order.
ZMoments reconstruct_z_moments(const ConditionalMap& cond, const TruncatedMoments& z1,
                               const ZBlocks& z_prior);

/// A (partition, bound, alpha) triple with the transform and the confidence
/// radius computed once. Semantics are identical to the free estimate().
class PreparedProblem {
 public:
  PreparedProblem(StatePartition partition, DistanceBound bound, double alpha = kDefaultAlpha);

  const StatePartition& partition() const { return partition_; }
  const DistanceBound& bound() const { return bound_; }
  double alpha() const { return alpha_; }
  double eta() const { return eta_; }
  const TransformPair& transform() const { return transform_; }

  ConstrainedEstimate estimate(const Gaussian& prior) const;

  /// Runs the pipeline with externally supplied z1 moments in place of the
  /// closed form / sigma-point step.
  ConstrainedEstimate estimate_with_z1_moments(const Gaussian& prior,
                                               const TruncatedMoments& z1) const;

  /// Sigma points for the prior's z1 marginal, as used internally.
  SigmaPointSet sigma_points(const Gaussian& prior) const;

 private:
  Gaussian to_z(const Gaussian& prior) const;
  ConstrainedEstimate finish(const Gaussian& z_prior, const TruncatedMoments& z1) const;

  StatePartition partition_;
  DistanceBound bound_;
  double alpha_;
  double eta_;
  TransformPair transform_;
};

/// For n = 1 the z1 moments come from the closed-form truncated normal; for
/// n > 1 from the sigma-point approximation.
ConstrainedEstimate estimate(const Gaussian& prior, const StatePartition& partition,
                             const DistanceBound& bound, double alpha = kDefaultAlpha);

/// Relative eigenvalue floor tolerated by make_positive_definite().
inline constexpr double kPsdFloor = 1e-9;

/// Returns cov unchanged if its Cholesky factor exists. Otherwise clamps
/// eigenvalues in [-kPsdFloor * scale, 0) to zero, sets *repaired and
/// returns the result. Throws NotPositiveDefinite below the floor.
Matrix floor_negative_eigenvalues(const Matrix& cov, bool* repaired = nullptr);

}  // namespace dbound
