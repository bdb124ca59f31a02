#pragma once

#include "dbound/gaussian.hpp"

namespace dbound {

/// Splits x = [x1; x2; xa] with x1, x2 in R^n and xa in R^m, d = 2n + m.
class StatePartition {
 public:
  StatePartition(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int dim() const { return 2 * n_ + m_; }
  /// Length of z2 = [x1 + x2; xa].
  int complement_dim() const { return n_ + m_; }

  /// L = [I_n, -I_n, 0], so that the bound reads ||L x|| <= gamma.
  Matrix difference_operator() const;

  friend bool operator==(const StatePartition&, const StatePartition&) = default;

 private:
  int n_;
  int m_;
};

/// z = T x with z = [x1 - x2; x1 + x2; xa]. This layout is relied on by every
/// consumer of z-space quantities.
struct TransformPair {
  Matrix forward;
  Matrix inverse;
};

TransformPair build_transform(const StatePartition& partition);

Gaussian prior_to_z(const Gaussian& prior, const StatePartition& partition);

/// Moments of z split as z1 (first n) and z2 (remaining n + m).
struct ZBlocks {
  Vector mean1;
  Vector mean2;
  Matrix cov1;
  Matrix cov2;
  Matrix cross21;  // Cov(z2, z1), (n+m) x n
};

ZBlocks split_z(const Gaussian& z, const StatePartition& partition);

/// p(z2 | z1) = N(offset + gain z1, residual_cov), i.e.
///   gain = C_{z2 z1} C_{z1}^{-1},
///   offset = m_{z2} - gain m_{z1},
///   residual_cov = C_{z2} - gain C_{z2 z1}^T.
struct ConditionalMap {
  Matrix gain;
  Vector offset;
  Matrix residual_cov;
};

/// Condition-number bound on C_{z1} beyond which conditional_map refuses to
/// solve; callers wanting regularization add jitter themselves.
inline constexpr double kMaxZ1Condition = 1e12;

ConditionalMap conditional_map(const Gaussian& z_prior, const StatePartition& partition);
ConditionalMap conditional_map(const ZBlocks& blocks);

}  // namespace dbound
