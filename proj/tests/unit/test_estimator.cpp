#include "dbound/error.hpp"
#include "dbound/estimator.hpp"
#include "dbound/simulation/oracle.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace dbound;

namespace {

Gaussian illustration_prior() {
  const Matrix c1 = (Matrix(2, 2) << 0.1, 0.05, 0.05, 0.1).finished();
  return {(Vector(4) << 0, 0, 0.8, 0.8).finished(), direct_sum(c1, 0.2 * Matrix::Identity(2, 2))};
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Estimate, HugeBoundPassesPriorThrough) {
  const Gaussian prior = illustration_prior();
  const ConstrainedEstimate e = estimate(prior, StatePartition(2, 0), DistanceBound(1e6));
  EXPECT_FALSE(e.active);
  EXPECT_LE(max_abs(e.x_hat - prior.mean), 1e-9);
  EXPECT_LE(max_abs(e.c_hat - prior.cov), 1e-9);
}

TEST(Estimate, IllustrationMeansApproachAndCovarianceShrinks) {
  const Gaussian prior = illustration_prior();
  const ConstrainedEstimate e = estimate(prior, StatePartition(2, 0), DistanceBound(1.0));
  EXPECT_TRUE(e.active);
  EXPECT_FALSE(e.degenerate);
  EXPECT_LT(e.c_hat.trace(), prior.cov.trace());
  const Vector prior_gap = prior.mean.head(2) - prior.mean.tail(2);
  const Vector post_gap = e.x_hat.head(2) - e.x_hat.tail(2);
  EXPECT_LT(post_gap.norm(), prior_gap.norm());
  EXPECT_LT(e.c_hat.topLeftCorner(2, 2).determinant(), prior.cov.topLeftCorner(2, 2).determinant());
  EXPECT_LT(e.c_hat.bottomRightCorner(2, 2).determinant(),
            prior.cov.bottomRightCorner(2, 2).determinant());
}

TEST(Estimate, ScalarPairAgainstRejectionOracle) {
  const Gaussian prior{(Vector(2) << 0.0, 2.0).finished(), Matrix::Identity(2, 2)};
  const StatePartition p(1, 0);
  const ConstrainedEstimate e = estimate(prior, p, DistanceBound(1.0));
  const sim::OracleMoments o = sim::oracle_conditional_moments(prior, p, 1.0, 10'000'000, 2024);
  EXPECT_LE(max_abs(e.x_hat - o.mean), 0.01);
  EXPECT_LE(max_abs(e.c_hat - o.cov), 0.02);
}

TEST(Estimate, DimensionMismatchThrows) {
  const Gaussian prior{Vector::Zero(3), Matrix::Identity(3, 3)};
  try {
    estimate(prior, StatePartition(2, 0), DistanceBound(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(Estimate, InactiveEqualsPriorForRandomProblems) {
  Rng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const StatePartition p(2 + trial % 2, trial % 3);
    const Gaussian prior{testkit::random_vector(p.dim(), rng), testkit::random_spd(p.dim(), rng)};
    const PreparedProblem problem(p, DistanceBound(1e3));
    const ConstrainedEstimate e = problem.estimate(prior);
    ASSERT_FALSE(e.active);
    EXPECT_LE(max_abs(e.x_hat - prior.mean), 1e-9);
    EXPECT_LE(max_abs(e.c_hat - prior.cov), 1e-9);
  }
}

TEST(Estimate, OutputCovarianceSymmetricPsd) {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const StatePartition p(1 + trial % 3, trial % 2);
    const Gaussian prior{testkit::random_vector(p.dim(), rng, 2.0), testkit::random_spd(p.dim(), rng)};
    const ConstrainedEstimate e = estimate(prior, p, DistanceBound(0.5 + rng.uniform()));
    EXPECT_EQ(e.c_hat, e.c_hat.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> es(e.c_hat);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(Estimate, ActiveConstraintShrinksPairBlock) {
  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const StatePartition p(1 + trial % 3, trial % 3);
    const Gaussian prior{testkit::random_vector(p.dim(), rng, 2.0), testkit::random_spd(p.dim(), rng)};
    const ConstrainedEstimate e = estimate(prior, p, DistanceBound(1.0));
    if (!e.active) continue;
    const int k = 2 * p.n();
    EXPECT_LE(e.c_hat.topLeftCorner(k, k).trace(), prior.cov.topLeftCorner(k, k).trace() + 1e-12);
  }
}

TEST(Estimate, JointTranslationShiftsEstimate) {
  Rng rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const StatePartition p(1 + trial % 3, trial % 2);
    const int n = p.n();
    const Gaussian prior{testkit::random_vector(p.dim(), rng), testkit::random_spd(p.dim(), rng)};
    const Vector t = testkit::random_vector(n, rng, 3.0);
    Gaussian moved = prior;
    moved.mean.head(n) += t;
    moved.mean.segment(n, n) += t;
    const ConstrainedEstimate a = estimate(prior, p, DistanceBound(0.7));
    const ConstrainedEstimate b = estimate(moved, p, DistanceBound(0.7));
    EXPECT_LE(max_abs(a.z1_moments.mean - b.z1_moments.mean), 1e-12);
    Vector expected = a.x_hat;
    expected.head(n) += t;
    expected.segment(n, n) += t;
    EXPECT_LE(max_abs(b.x_hat - expected), 1e-10);
    EXPECT_LE(max_abs(b.c_hat - a.c_hat), 1e-10);
  }
}

TEST(Reconstruct, IndependentBlocksLeaveZ2Alone) {
  const StatePartition p(1, 0);
  const Gaussian x{(Vector(2) << 0.3, -0.2).finished(), Matrix::Identity(2, 2)};
  const Gaussian z = prior_to_z(x, p);
  const ZBlocks blocks = split_z(z, p);
  const ConditionalMap cond = conditional_map(blocks);
  const TruncatedMoments z1 = truncated_scalar_moments(blocks.mean1[0], blocks.cov1(0, 0), 0.4);
  const ZMoments zm = reconstruct_z_moments(cond, z1, blocks);
  EXPECT_NEAR(zm.mean[1], blocks.mean2[0], 1e-15);
  EXPECT_NEAR(zm.cov(1, 1), blocks.cov2(0, 0), 1e-14);
  EXPECT_NEAR(zm.cov(0, 1), 0.0, 1e-14);
}

TEST(Reconstruct, UntruncatedMomentsReproducePrior) {
  Rng rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const StatePartition p(1 + trial % 3, trial % 3);
    const Gaussian z = prior_to_z({testkit::random_vector(p.dim(), rng), testkit::random_spd(p.dim(), rng)}, p);
    const ZBlocks blocks = split_z(z, p);
    const ZMoments zm = reconstruct_z_moments(
        conditional_map(blocks), TruncatedMoments::untruncated(blocks.mean1, blocks.cov1), blocks);
    EXPECT_LE(max_abs(zm.mean - z.mean), 1e-12);
    EXPECT_LE(max_abs(zm.cov - z.cov), 1e-12 * (1.0 + max_abs(z.cov)));
  }
}

TEST(Reconstruct, NonConformingBlocksRejected) {
  const StatePartition p(2, 0);
  const ZBlocks blocks = split_z(prior_to_z(illustration_prior(), p), p);
  const TruncatedMoments wrong = TruncatedMoments::untruncated(Vector::Zero(3), Matrix::Identity(3, 3));
  EXPECT_THROW(reconstruct_z_moments(conditional_map(blocks), wrong, blocks), Error);
}

TEST(FloorEigenvalues, RepairsTinyNegativeAndRejectsLarge) {
  bool repaired = false;
  const Matrix ok = Matrix::Identity(2, 2);
  EXPECT_EQ(floor_negative_eigenvalues(ok, &repaired), ok);
  EXPECT_FALSE(repaired);
  const Matrix tiny = (Matrix(2, 2) << 1.0, 0.0, 0.0, -1e-12).finished();
  const Matrix fixed = floor_negative_eigenvalues(tiny, &repaired);
  EXPECT_TRUE(repaired);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(fixed).eigenvalues().minCoeff(), 0.0);
  const Matrix bad = (Matrix(2, 2) << 1.0, 0.0, 0.0, -0.1).finished();
  EXPECT_THROW(floor_negative_eigenvalues(bad), Error);
}
