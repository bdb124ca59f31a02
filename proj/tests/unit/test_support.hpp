#pragma once

#include "dbound/gaussian.hpp"
#include "dbound/random.hpp"

#include <cmath>
#include <functional>

namespace dbound::testkit {

/// Random SPD matrix B B^T + jitter I with B standard normal.
inline Matrix random_spd(Eigen::Index d, Rng& rng, double jitter = 0.1) {
  Matrix b(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) b(i, j) = rng.standard_normal();
  }
  return symmetrized(b * b.transpose() + jitter * Matrix::Identity(d, d));
}

inline Vector random_vector(Eigen::Index d, Rng& rng, double scale = 1.0) {
  return scale * rng.standard_normal_vector(d);
}

/// Random orthogonal matrix from a QR of a Gaussian matrix.
inline Matrix random_orthogonal(Eigen::Index d, Rng& rng) {
  Matrix a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = rng.standard_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, d);
}

/// Adaptive Simpson quadrature, used as an independent oracle.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 50) {
  const std::function<double(double, double, double, double, double, double, double, int)> step =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int level) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (level <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
      return left + right + (left + right - whole) / 15.0;
    }
    return step(lo, mid, flo, flm, fmid, left, 0.5 * eps, level - 1) +
           step(mid, hi, fmid, frm, fhi, right, 0.5 * eps, level - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return step(a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace dbound::testkit
