#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace dbound::sim {

/// Plotted quantities of one experiment. abscissa is the sweep value or the
/// time step; everything else is in meters.
struct RmseCurve {
  std::vector<double> abscissa;
  std::vector<double> rmse_prior;
  std::vector<double> rmse_estimator;
  std::vector<double> predicted_rmse;    // mean of sqrt(tr C_hat)
  std::vector<double> stderr_estimator;  // Monte Carlo standard error of rmse_estimator
  std::vector<double> stderr_prior;

  std::size_t size() const { return abscissa.size(); }
};

/// Accumulates squared errors in call order. The standard error of the RMSE
/// comes from the delta method: sd(e^2) / (2 rmse sqrt(N)).
class RmseAccumulator {
 public:
  void add(double squared_error) {
    ++count_;
    sum_ += squared_error;
    sum_sq_ += squared_error * squared_error;
  }

  std::size_t count() const { return count_; }
  double mse() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
  double rmse() const { return std::sqrt(mse()); }

  double stderr_rmse() const {
    if (count_ < 2) return 0.0;
    const double n = static_cast<double>(count_);
    const double mean = sum_ / n;
    const double var = std::max(0.0, (sum_sq_ - n * mean * mean) / (n - 1.0));
    const double r = std::sqrt(mean);
    return r > 0.0 ? std::sqrt(var / n) / (2.0 * r) : 0.0;
  }

 private:
  std::size_t count_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

}  // namespace dbound::sim
