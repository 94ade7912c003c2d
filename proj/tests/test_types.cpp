#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "subgauss/config.hpp"
#include "subgauss/types.hpp"

using namespace subgauss;

TEST(ProbParam, RejectsOutOfRange) {
  EXPECT_THROW(ProbParam(1.5), DomainError);
  EXPECT_THROW(ProbParam(-0.1), DomainError);
  EXPECT_THROW(ProbParam(std::nan("")), DomainError);
  EXPECT_THROW(ProbParam(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(ProbParam, ClampsRoundingSlack) {
  EXPECT_EQ(ProbParam(1.0 + 1e-16).value(), 1.0);
  EXPECT_EQ(ProbParam(-1e-16).value(), 0.0);
  EXPECT_TRUE(ProbParam(0.0).degenerate());
  EXPECT_TRUE(ProbParam(1.0).degenerate());
  EXPECT_FALSE(ProbParam(0.5).degenerate());
}

TEST(ParamPair, SymmetriesAreInvolutions) {
  const ParamPair p{0.3, 0.8};
  EXPECT_EQ(p.swapped().swapped(), p);
  EXPECT_NEAR(p.reflected().reflected().p1.value(), 0.3, 1e-16);
  EXPECT_EQ(p.reflected().reflected().p2, p.p2);
  EXPECT_DOUBLE_EQ(p.reflected().p1.value(), 0.7);
}

TEST(ClassifySign, BandAndOrientation) {
  EXPECT_EQ(classify_sign(-1.0, 1e-9, true), Membership::inside);
  EXPECT_EQ(classify_sign(-1.0, 1e-9, false), Membership::outside);
  EXPECT_EQ(classify_sign(5e-10, 1e-9, true), Membership::band);
  EXPECT_EQ(classify_sign(std::nan(""), 1e-9, true), Membership::band);
}

TEST(OneMinusSum, ExactNearAntiDiagonal) {
  EXPECT_EQ(one_minus_sum(0.6, 0.4), 0.0);
  EXPECT_EQ(one_minus_sum(0.4, 0.6), 0.0);
  EXPECT_GT(one_minus_sum(0.3, 0.1), 0.0);
}

TEST(LogOdds, SymmetricAndAccurate) {
  EXPECT_EQ(log_odds(0.5), 0.0);
  EXPECT_NEAR(log_odds(0.25), std::log(3.0), 1e-15);
  EXPECT_NEAR(log_odds(0.75), -std::log(3.0), 1e-15);
  // log((1-p)/p) = -4d - O(d^3) with d = p - 1/2 exact
  const double p = 0.5 + 1e-12;
  EXPECT_NEAR(log_odds(p), -4.0 * (p - 0.5), 1e-27);
  EXPECT_NEAR(log_odds(1.0 - p), 4.0 * (p - 0.5), 1e-27);
}

TEST(Config, ValidateRejectsBadValues) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.series.order = 7;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.series.seam = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.band = -1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.mid_scan = 2;
  EXPECT_THROW(cfg.validate(), DomainError);
}
