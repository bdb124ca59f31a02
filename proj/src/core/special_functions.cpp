#include "dbound/special_functions.hpp"

#include "dbound/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dbound {
namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEps = 1e-16;

// Series expansion, converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int i = 1; i < kMaxIterations; ++i) {
    term *= x / (a + i);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double std_normal_pdf(double t) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double std_normal_cdf(double t) noexcept {
  return 0.5 * std::erfc(-t / std::numbers::sqrt2);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) {
    throw Error(ErrorCode::invalid_argument, "regularized_gamma_p: need a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_continued_fraction(a, x);
}

double chi_square_cdf(int dof, double x) {
  if (dof < 1) throw Error(ErrorCode::invalid_argument, "chi_square_cdf: dof must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

double chi_square_pdf(int dof, double x) {
  if (dof < 1) throw Error(ErrorCode::invalid_argument, "chi_square_pdf: dof must be >= 1");
  if (x <= 0.0) return dof == 2 ? 0.5 : 0.0;
  const double k = 0.5 * dof;
  return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k));
}

double chi_square_quantile(int dof, double alpha) {
  if (dof < 1) throw Error(ErrorCode::invalid_argument, "chi_square_quantile: dof must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_alpha,
                "chi_square_quantile: alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  double lo = 0.0;
  double hi = dof + 20.0 * std::sqrt(2.0 * dof);
  while (chi_square_cdf(dof, hi) < alpha) {
    lo = hi;
    hi *= 2.0;
  }

  // Bisection until the bracket is narrow enough for Newton to be safe.
  for (int i = 0; i < 60 && hi - lo > 1e-3 * std::max(1.0, lo); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_square_cdf(dof, mid) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 100; ++i) {
    const double f = chi_square_cdf(dof, x) - alpha;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = chi_square_pdf(dof, x);
    double next = slope > 0.0 ? x - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-15 * std::max(1.0, x)) break;
  }
  return x;
}

}  // namespace dbound
