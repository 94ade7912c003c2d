#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subgauss/core_eval.hpp"
#include "subgauss/inflections.hpp"
#include "test_support.hpp"

using namespace subgauss;
using subgauss::testing::random_pairs;
using subgauss::testing::rel;

// Reference values: tests/oracles/compute_oracles.py (50-digit mpmath).

TEST(CoreOracle, LogMgfScalar) {
  EXPECT_LT(rel(log_mgf_scalar(0.25, 2.0 * std::log(3.0)), 0.54930614433405485), 4e-16);
}

TEST(CoreOracle, GScalarLimitAtZero) { EXPECT_NEAR(g_scalar(0.25, 0.0), 0.09375, 1e-17); }

TEST(CoreOracle, KsConstScalar) {
  EXPECT_LT(rel(ks_const_scalar(0.25).value, 0.11377990332835467), 4e-16);
  const BoundConstant half = ks_const_scalar(0.5);
  EXPECT_EQ(half.value, 0.125);
  EXPECT_TRUE(half.limit);
  EXPECT_NEAR(ks_const_scalar(0.5 + 1e-8).value, 0.12499999999999998, 1e-15);
}

TEST(CoreOracle, RFrakAndTStarScalar) {
  EXPECT_LT(rel(r_frak(0.25), -0.088020391749458866), 1e-15);
  EXPECT_LT(rel(t_star_scalar(0.25).t, 2.1972245773362194), 4e-16);
  EXPECT_TRUE(t_star_scalar(0.0).infinite());
  EXPECT_GT(t_star_scalar(0.0).t, 0.0);
  EXPECT_LT(t_star_scalar(1.0).t, 0.0);
}

TEST(CoreOracle, PairConstantAtTStar) {
  const ParamPair pr{0.4, 0.2};
  EXPECT_LT(rel(t_star_pair(pr).t, std::log(6.0)), 4e-16);
  EXPECT_LT(rel(g_pair(pr, std::log(6.0)), 0.2232442506204989), 1e-15);
  EXPECT_LT(rel(ks_const_pair(pr).value, 0.2232442506204989), 1e-15);
}

TEST(CoreOracle, PairLimitOnAntiDiagonal) {
  const BoundConstant c = ks_const_pair({0.6, 0.4});
  EXPECT_TRUE(c.limit);
  EXPECT_NEAR(c.value, 0.24, 1e-16);
  EXPECT_NEAR(ks_const_pair({0.6, 0.4 + 1e-8}).value, 0.24000000099999997, 1e-14);
  EXPECT_TRUE(t_star_pair({0.0, 1.0}).undefined());
}

TEST(CoreOracle, PairDerivativesOfF) {
  const ParamPair pr{0.4, 0.2};
  EXPECT_NEAR(f_pair(pr, 0.0, 3), 0.144, 1e-15);
  EXPECT_NEAR(f_pair(pr, 0.5 * std::log(6.0), 2), 0.0, 1e-15);
}

TEST(CoreEval, DegenerateParametersGiveZero) {
  for (double t : {-3.0, 0.0, 3.0}) {
    EXPECT_EQ(g_scalar(0.0, t), 0.0);
    EXPECT_EQ(g_scalar(1.0, t), 0.0);
    EXPECT_EQ(f_scalar(1.0, t, 2), 0.0);
  }
  EXPECT_TRUE(ks_const_scalar(0.0).degenerate);
  EXPECT_THROW(g_scalar_direct(0.3, 0.0), DomainError);
}

TEST(CoreEval, ExtremeAbscissasStayFinite) {
  for (double p : {1e-12, 0.3, 1.0 - 1e-12}) {
    for (double t : {-700.0, -40.0, 40.0, 700.0}) {
      EXPECT_TRUE(std::isfinite(g_scalar(p, t, 0)));
      EXPECT_TRUE(std::isfinite(g_scalar(p, t, 1)));
      for (int k = 0; k <= 3; ++k) EXPECT_TRUE(std::isfinite(f_scalar(p, t, k)));
    }
  }
  // L(t) ~ (1-p) t + log p for large t
  EXPECT_LT(rel(log_mgf_scalar(0.3, 700.0), 0.7 * 700.0 + std::log(0.3)), 1e-15);
}

TEST(CoreProperty, Additivity) {
  for (const auto& pr : random_pairs(500, 11)) {
    for (double t : {-20.0, -1.3, -0.004, 0.0, 0.02, 2.2, 31.0}) {
      EXPECT_NEAR(g_pair(pr, t), g_scalar(pr.p1, t) + g_scalar(pr.p2, t), 1e-15);
      EXPECT_NEAR(f_pair(pr, t, 1), f_scalar(pr.p1, t, 1) + f_scalar(pr.p2, t, 1), 1e-14);
    }
  }
}

TEST(CoreProperty, ReflectionAndSwap) {
  for (const auto& pr : random_pairs(500, 12)) {
    for (double t : {-7.0, -0.5, 0.003, 4.0}) {
      EXPECT_NEAR(g_pair(pr.reflected(), t), g_pair(pr, -t), 2e-15);
      EXPECT_EQ(g_pair(pr.swapped(), t), g_pair(pr, t));
    }
    EXPECT_NEAR(t_star_pair(pr.reflected()).t, -t_star_pair(pr).t, 1e-13);
  }
}

TEST(CoreProperty, MgfIdentityFromAtoms) {
  for (const auto& pr : random_pairs(200, 13)) {
    atoms_pair(pr).validate();
    for (double t = -25.0; t <= 25.0; t += 0.37) {
      const double m = mgf_pair(pr, t);
      EXPECT_LT(std::abs(std::log(m) - log_mgf_pair(pr, t)), 1e-13 * std::max(1.0, std::abs(t)));
    }
  }
}

TEST(CoreProperty, GMaximalAtTStar) {
  for (const auto& pr : random_pairs(300, 14)) {
    const double ts = t_star_pair(pr).t;
    const double c = ks_const_pair(pr).value;
    EXPECT_NEAR(g_pair(pr, ts), c, 1e-13);
    EXPECT_NEAR(g_pair(pr, ts, 1), 0.0, 1e-11);
    EXPECT_NEAR(f_pair(pr, ts, 0), 0.0, 1e-12);
  }
}

TEST(CoreProperty, FEqualsTCubedGPrime) {
  for (const auto& pr : random_pairs(300, 15)) {
    for (double t : {-9.0, -0.3, 0.05, 1.7, 12.0}) {
      EXPECT_NEAR(f_pair(pr, t), t * t * t * g_pair(pr, t, 1), 1e-13 * (1 + std::abs(t * t * t)));
    }
  }
}

TEST(CoreProperty, SeamContinuity) {
  const SeriesPolicy sp;
  for (const auto& pr : random_pairs(200, 16)) {
    for (double t : {-sp.seam, sp.seam}) {
      const double below = std::nextafter(t, 0.0);
      EXPECT_NEAR(g_pair(pr, below), g_pair(pr, t), 1e-13);
      EXPECT_NEAR(g_pair(pr, below, 1), g_pair(pr, t, 1), 1e-11);
      for (int k = 0; k <= 3; ++k) EXPECT_NEAR(f_pair(pr, below, k), f_pair(pr, t, k), 1e-12) << k;
    }
  }
}

TEST(CoreProperty, ThirdDerivativeAtZero) {
  for (const auto& pr : random_pairs(300, 17)) {
    const double expected = one_minus_sum(pr.p1.value(), pr.p2.value()) * cond_A(pr);
    EXPECT_NEAR(f_pair(pr, 0.0, 3), expected, 1e-15);
  }
}

TEST(CoreProperty, PartialInPMatchesDifference) {
  const double h = 1e-6;
  for (double p : {0.1, 0.35, 0.62, 0.9}) {
    for (double t : {-4.0, -0.5, 0.7, 3.0}) {
      for (int k : {0, 1}) {
        const double fd = (f_scalar(p + h, t, k) - f_scalar(p - h, t, k)) / (2 * h);
        EXPECT_NEAR(f_scalar_dp(p, t, k), fd, 1e-7 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(AtomDistribution, ValidateRejectsBadMass) {
  AtomDistribution d{{{-0.5, 0.5}, {0.5, 0.6}}};
  EXPECT_THROW(d.validate(), DomainError);
  AtomDistribution shifted{{{0.0, 0.5}, {1.0, 0.5}}};
  EXPECT_THROW(shifted.validate(), DomainError);
  EXPECT_NO_THROW(atoms_pair({0.3, 0.9}).validate());
}
