#pragma once

namespace dbound {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

double std_normal_pdf(double t) noexcept;

/// Phi(t) through erfc, accurate in both tails.
double std_normal_cdf(double t) noexcept;

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

double chi_square_cdf(int dof, double x);
double chi_square_pdf(int dof, double x);

/// eta such that Pr{chi2_dof <= eta} = alpha. Bisection on a bracket that
/// starts at [0, dof + 20 sqrt(2 dof)], then safeguarded Newton.
/// Throws InvalidAlpha unless 0 < alpha < 1.
double chi_square_quantile(int dof, double alpha);

}  // namespace dbound
