#include "dbound/constrained_moments.hpp"

#include "dbound/error.hpp"
#include "dbound/special_functions.hpp"

#include <cmath>
#include <string>

namespace dbound {

DistanceBound::DistanceBound(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "DistanceBound: gamma must be positive, got " + std::to_string(gamma));
  }
}

TruncatedMoments TruncatedMoments::untruncated(const Vector& mean, const Matrix& cov) {
  return {mean, symmetrized(cov + mean * mean.transpose())};
}

TruncatedMoments truncated_scalar_moments(double mu, double var, double gamma) {
  if (!(var > 0.0) || !(gamma > 0.0) || !std::isfinite(mu)) {
    throw Error(ErrorCode::invalid_argument,
                "truncated_scalar_moments: need var > 0, gamma > 0 and finite mu");
  }
  const double sigma = std::sqrt(var);
  const double a = (-gamma - mu) / sigma;
  const double b = (gamma - mu) / sigma;
  // Take the difference in whichever tail keeps both terms small.
  const double mass = a > 0.0 ? std_normal_cdf(-a) - std_normal_cdf(-b)
                              : std_normal_cdf(b) - std_normal_cdf(a);
  if (!(mass >= 1e-300)) {
    throw Error(ErrorCode::negligible_mass,
                "truncated_scalar_moments: prior mass inside the bound is " +
                    std::to_string(mass));
  }
  const double pdf_a = std_normal_pdf(a);
  const double pdf_b = std_normal_pdf(b);
  // a * pdf(a) is 0 at a = -inf.
  const double a_pdf_a = std::isfinite(a) ? a * pdf_a : 0.0;
  const double b_pdf_b = std::isfinite(b) ? b * pdf_b : 0.0;
  const double shift = (pdf_a - pdf_b) / mass;
  const double mean = mu + sigma * shift;
  const double variance = var * (1.0 + (a_pdf_a - b_pdf_b) / mass - shift * shift);

  TruncatedMoments out{Vector::Constant(1, mean), Matrix::Constant(1, 1, variance + mean * mean)};
  return out;
}

double confidence_radius(int n, double alpha) {
  const double eta = chi_square_quantile(n, alpha);
  if (!(eta > n)) {
    throw Error(ErrorCode::invalid_alpha,
                "confidence_radius: alpha " + std::to_string(alpha) + " gives eta " +
                    std::to_string(eta) + " <= n = " + std::to_string(n) +
                    " (negative center weight)");
  }
  return eta;
}

std::vector<Vector> sigma_points_at_radius(const Vector& mean, const Matrix& cov, double eta) {
  if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
    throw Error(ErrorCode::dimension_mismatch, "generate_sigma_points: mean/covariance sizes differ");
  }
  const Eigen::Index n = mean.size();
  const Matrix scaled = std::sqrt(eta) * cholesky_lower(cov);
  std::vector<Vector> points;
  points.reserve(2 * n + 1);
  points.push_back(mean);
  for (Eigen::Index i = 0; i < n; ++i) points.push_back(mean + scaled.col(i));
  for (Eigen::Index i = 0; i < n; ++i) points.push_back(mean - scaled.col(i));
  return points;
}

std::vector<Vector> generate_sigma_points(const Vector& mean, const Matrix& cov, double alpha) {
  return sigma_points_at_radius(mean, cov, confidence_radius(static_cast<int>(mean.size()), alpha));
}

std::vector<Vector> project_points(std::span<const Vector> points, const DistanceBound& bound) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& s : points) {
    const double norm = s.norm();
    if (norm <= bound.gamma()) {
      out.push_back(s);
    } else {
      out.push_back((bound.gamma() / norm) * s);
    }
  }
  return out;
}

std::vector<double> sigma_weights(int n, double eta) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sigma_weights: n must be >= 1");
  if (!(eta > n)) {
    throw Error(ErrorCode::invalid_alpha,
                "sigma_weights: eta " + std::to_string(eta) + " must exceed n = " + std::to_string(n));
  }
  std::vector<double> w(2 * n + 1, 1.0 / (2.0 * eta));
  w[0] = 1.0 - n / eta;
  return w;
}

SigmaPointSet build_sigma_point_set(const Vector& mean, const Matrix& cov,
                                    const DistanceBound& bound, double eta) {
  SigmaPointSet set;
  set.eta = eta;
  set.weights = sigma_weights(static_cast<int>(mean.size()), eta);
  set.raw = sigma_points_at_radius(mean, cov, eta);
  set.projected = project_points(set.raw, bound);
  for (const auto& s : set.raw) {
    if (s.norm() > bound.gamma()) ++set.projected_count;
  }
  return set;
}

TruncatedMoments weighted_moments(const SigmaPointSet& set) {
  const Eigen::Index n = set.projected.front().size();
  Vector mean = Vector::Zero(n);
  Matrix second = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < set.projected.size(); ++i) {
    const auto& p = set.projected[i];
    mean += set.weights[i] * p;
    second += set.weights[i] * (p * p.transpose());
  }
  return {std::move(mean), symmetrized(second)};
}

TruncatedMoments approx_truncated_moments(const Vector& mean, const Matrix& cov,
                                          const DistanceBound& bound, double alpha) {
  const double eta = confidence_radius(static_cast<int>(mean.size()), alpha);
  return weighted_moments(build_sigma_point_set(mean, cov, bound, eta));
}

}  // namespace dbound
