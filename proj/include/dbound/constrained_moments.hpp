#pragma once

#include "dbound/gaussian.hpp"

#include <span>
#include <vector>

namespace dbound {

inline constexpr double kDefaultAlpha = 0.95;

/// The side information ||x1 - x2|| <= gamma. gamma may be +infinity, which
/// turns the constraint off.
class DistanceBound {
 public:
  explicit DistanceBound(double gamma);

  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

/// First and second raw moments of z1 under the constraint. second_moment is
/// E[z1 z1^T | c], not the covariance.
struct TruncatedMoments {
  Vector mean;
  Matrix second_moment;

  Matrix covariance() const { return symmetrized(second_moment - mean * mean.transpose()); }

  /// Moments of an unconstrained N(mean, cov).
  static TruncatedMoments untruncated(const Vector& mean, const Matrix& cov);
};

/// Closed-form moments of N(mu, var) restricted to [-gamma, gamma].
/// Throws NegligibleMass when the interval carries less than 1e-300 of the
/// probability.
TruncatedMoments truncated_scalar_moments(double mu, double var, double gamma);

/// Squared radius eta of the alpha-level confidence ellipsoid of an n-variate
/// Gaussian, validated so the center weight 1 - n/eta stays positive.
/// Throws InvalidAlpha otherwise.
double confidence_radius(int n, double alpha);

/// 2n+1 points: the mean, then mean + sqrt(eta) g_i for each column g_i of the
/// lower Cholesky factor, then mean - sqrt(eta) g_i in the same order.
std::vector<Vector> generate_sigma_points(const Vector& mean, const Matrix& cov, double alpha);
std::vector<Vector> sigma_points_at_radius(const Vector& mean, const Matrix& cov, double eta);

/// Points outside the ball of radius gamma are scaled radially onto it.
std::vector<Vector> project_points(std::span<const Vector> points, const DistanceBound& bound);

/// w0 = 1 - n/eta, wi = 1/(2 eta). Throws InvalidAlpha if eta <= n.
std::vector<double> sigma_weights(int n, double eta);

struct SigmaPointSet {
  std::vector<Vector> raw;
  std::vector<Vector> projected;
  std::vector<double> weights;
  double eta = 0.0;
  int projected_count = 0;

  bool any_projected() const { return projected_count > 0; }
  bool all_projected() const { return projected_count == static_cast<int>(raw.size()); }
};

SigmaPointSet build_sigma_point_set(const Vector& mean, const Matrix& cov,
                                    const DistanceBound& bound, double eta);

/// Weighted mean and second moment of the projected points.
TruncatedMoments weighted_moments(const SigmaPointSet& set);

/// Sigma-point approximation of the constrained z1 moments, any n >= 1.
TruncatedMoments approx_truncated_moments(const Vector& mean, const Matrix& cov,
                                          const DistanceBound& bound,
                                          double alpha = kDefaultAlpha);

}  // namespace dbound
