#include "dbound/error.hpp"
#include "dbound/gaussian.hpp"
#include "dbound/random.hpp"
#include "dbound/special_functions.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dbound;

namespace {

Matrix fig1_cov_x1() { return (Matrix(2, 2) << 0.1, 0.05, 0.05, 0.1).finished(); }

}  // namespace

TEST(Cholesky, IdentityIsItsOwnFactor) {
  const Matrix eye = Matrix::Identity(2, 2);
  EXPECT_TRUE(cholesky_lower(eye).isApprox(eye, 0.0));
}

TEST(Cholesky, HandCheckedTwoByTwo) {
  const Matrix m = (Matrix(2, 2) << 4, 2, 2, 5).finished();
  const Matrix expected = (Matrix(2, 2) << 2, 0, 1, 2).finished();
  const Matrix g = cholesky_lower(m);
  EXPECT_LT((g - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((g * g.transpose() - m).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Cholesky, ReproducesIllustrationCovariance) {
  const Matrix c = fig1_cov_x1();
  const Matrix g = cholesky_lower(c);
  EXPECT_LT((g * g.transpose() - c).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(g(0, 1), 0.0);
  EXPECT_GT(g(0, 0), 0.0);
  EXPECT_GT(g(1, 1), 0.0);
}

TEST(Cholesky, RejectsIndefiniteAndSingular) {
  const Matrix indefinite = (Matrix(2, 2) << 1, 2, 2, 1).finished();
  const Matrix singular = (Matrix(2, 2) << 1, 1, 1, 1).finished();
  for (const Matrix& m : {indefinite, singular}) {
    try {
      cholesky_lower(m);
      FAIL() << "expected NotPositiveDefinite";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::not_positive_definite);
    }
  }
  EXPECT_FALSE(try_cholesky_lower(indefinite).has_value());
}

TEST(Cholesky, PropertyFactorReproducesRandomSpd) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 1 + trial % 8;
    const Matrix m = testkit::random_spd(d, rng);
    const Matrix g = cholesky_lower(m);
    EXPECT_TRUE(g.isLowerTriangular());
    EXPECT_LE((g * g.transpose() - m).norm() / m.norm(), 1e-12);
  }
}

TEST(AffineTransform, IdentityLeavesGaussianUnchanged) {
  const Gaussian g{(Vector(2) << 1.0, -2.0).finished(), fig1_cov_x1()};
  const Gaussian out = affine_transform(g, Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_EQ(out.mean, g.mean);
  EXPECT_EQ(out.cov, g.cov);
}

TEST(AffineTransform, ZeroMeanIsShiftedByOffset) {
  const Gaussian g{Vector::Zero(2), fig1_cov_x1()};
  const Matrix m = (Matrix(3, 2) << 1, 2, 3, 4, 5, 6).finished();
  const Vector b = (Vector(3) << 0.5, -1.0, 2.0).finished();
  EXPECT_TRUE(affine_transform(g, m, b).mean.isApprox(b));
}

TEST(AffineTransform, IllustrationPriorDifference) {
  Gaussian prior{(Vector(4) << 0, 0, 0.8, 0.8).finished(),
                 direct_sum(fig1_cov_x1(), 0.2 * Matrix::Identity(2, 2))};
  Matrix t = Matrix::Zero(2, 4);
  t.leftCols(2).setIdentity();
  t.rightCols(2) = -Matrix::Identity(2, 2);
  const Gaussian z1 = linear_transform(prior, t);
  EXPECT_NEAR(z1.mean[0], -0.8, 1e-15);
  EXPECT_NEAR(z1.mean[1], -0.8, 1e-15);
}

TEST(AffineTransform, DimensionMismatchThrows) {
  const Gaussian g{Vector::Zero(2), Matrix::Identity(2, 2)};
  try {
    affine_transform(g, Matrix::Identity(3, 3), Vector::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(AffineTransform, PropertyFullRowRankPreservesSpd) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 5;
    const Eigen::Index rows = 1 + trial % d;
    const Gaussian g{testkit::random_vector(d, rng), testkit::random_spd(d, rng)};
    Matrix m(rows, d);
    for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = testkit::random_vector(d, rng).transpose();
    const Gaussian out = affine_transform(g, m, testkit::random_vector(rows, rng));
    EXPECT_TRUE(try_cholesky_lower(out.cov).has_value());
    EXPECT_EQ(out.cov, out.cov.transpose());
  }
}

TEST(Validate, RejectsAsymmetricAndNonFinite) {
  Gaussian g{Vector::Zero(2), (Matrix(2, 2) << 1, 0.1, 0.0, 1).finished()};
  EXPECT_THROW(validate(g), Error);
  g.cov = Matrix::Identity(2, 2);
  g.mean[0] = std::nan("");
  EXPECT_THROW(validate(g), Error);
  g.mean[0] = 0.0;
  EXPECT_NO_THROW(validate(g));
}

TEST(NormalFunctions, KnownValues) {
  EXPECT_NEAR(std_normal_pdf(0.0), 0.3989422804014327, 1e-16);
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.0), 0.841344746068543, 1e-12);
}

TEST(NormalFunctions, CdfMatchesQuadratureOracle) {
  for (double t : {-6.0, -2.5, -1.0, 0.3, 1.0, 2.0, 4.0}) {
    const double oracle = 0.5 + (t >= 0 ? 1.0 : -1.0) *
                                    testkit::adaptive_simpson(std_normal_pdf, 0.0, std::abs(t), 1e-15);
    EXPECT_NEAR(std_normal_cdf(t), oracle, 1e-12) << "t = " << t;
  }
}

TEST(NormalFunctions, PropertySymmetry) {
  for (double t = -10.0; t <= 10.0; t += 0.05) {
    EXPECT_NEAR(std_normal_cdf(t) + std_normal_cdf(-t), 1.0, 1e-14) << t;
  }
  EXPECT_GT(std_normal_cdf(-30.0), 0.0);
}

TEST(ChiSquareQuantile, RoundTripOneDof) {
  for (double p : {0.1, 0.5, 0.95}) {
    EXPECT_NEAR(chi_square_cdf(1, chi_square_quantile(1, p)), p, 1e-10);
  }
}

TEST(ChiSquareQuantile, TwoDofClosedForm) {
  // chi2_2 cdf is 1 - exp(-x/2)
  const double eta = chi_square_quantile(2, 0.95);
  EXPECT_NEAR(eta, -2.0 * std::log(0.05), 1e-10);
  EXPECT_NEAR(eta, 5.991464547107982, 1e-10);
  EXPECT_GT(eta, 2.0);
}

TEST(ChiSquareQuantile, OneDofAgainstErfOracle) {
  // chi2_1 cdf(x) = erf(sqrt(x/2)); bisect that independently.
  double lo = 0.0;
  double hi = 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::erf(std::sqrt(mid / 2.0)) < 0.95 ? lo : hi) = mid;
  }
  EXPECT_NEAR(chi_square_quantile(1, 0.95), 0.5 * (lo + hi), 1e-10);
  EXPECT_NEAR(chi_square_quantile(1, 0.95), 3.841458820694124, 1e-10);
}

TEST(ChiSquareQuantile, StrictlyIncreasingInAlpha) {
  for (int n = 1; n <= 6; ++n) {
    double previous = 0.0;
    for (double alpha = 0.01; alpha < 0.999; alpha += 0.01) {
      const double eta = chi_square_quantile(n, alpha);
      EXPECT_GT(eta, previous) << "n=" << n << " alpha=" << alpha;
      EXPECT_NEAR(chi_square_cdf(n, eta), alpha, 1e-10);
      previous = eta;
    }
  }
}

TEST(ChiSquareQuantile, ExtremeLevelsBeyondInitialBracket) {
  EXPECT_NEAR(chi_square_cdf(1, chi_square_quantile(1, 1.0 - 1e-12)), 1.0 - 1e-12, 1e-10);
  EXPECT_NEAR(chi_square_cdf(3, chi_square_quantile(3, 1e-8)), 1e-8, 1e-10);
}

TEST(ChiSquareQuantile, RejectsAlphaOutsideUnitInterval) {
  for (double alpha : {0.0, 1.0, -0.5, 1.5}) {
    try {
      chi_square_quantile(2, alpha);
      FAIL() << alpha;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_alpha);
    }
  }
}

TEST(Sampling, EmpiricalMeanOfStandardNormal) {
  Rng rng(2024);
  const GaussianSampler sampler({Vector::Zero(2), Matrix::Identity(2, 2)});
  Vector sum = Vector::Zero(2);
  const int count = 100'000;
  for (int i = 0; i < count; ++i) sum += sampler(rng);
  EXPECT_LT((sum / count).cwiseAbs().maxCoeff(), 0.02);
}

TEST(Sampling, EmpiricalCovarianceOfIllustrationPrior) {
  Rng rng(99);
  const Matrix c = fig1_cov_x1();
  const GaussianSampler sampler({Vector::Zero(2), c});
  Matrix acc = Matrix::Zero(2, 2);
  const int count = 100'000;
  for (int i = 0; i < count; ++i) {
    const Vector x = sampler(rng);
    acc += x * x.transpose();
  }
  const Matrix empirical = acc / count;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(empirical(i, j), c(i, j), 0.05 * std::abs(c(i, j))) << i << "," << j;
    }
  }
}

TEST(Sampling, SameSeedIsBitReproducible) {
  const Gaussian g{(Vector(3) << 1, 2, 3).finished(), Matrix::Identity(3, 3) * 0.5};
  Rng a(42);
  Rng b(42);
  EXPECT_EQ(sample_gaussian(g, a), sample_gaussian(g, b));
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}
