#include "rglsa/magnitude.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using rglsa::Magnitude;

TEST(MagnitudeTest, ZeroBehavesAsAdditiveIdentity) {
  const auto three = Magnitude::from_linear(3.0);
  EXPECT_TRUE(Magnitude::zero().is_zero());
  EXPECT_EQ(three + Magnitude::zero(), three);
  EXPECT_TRUE((three * Magnitude::zero()).is_zero());
  EXPECT_EQ(ratio(Magnitude::zero(), three), 0.0);
  EXPECT_EQ(Magnitude::zero().to_linear(), 0.0);
  EXPECT_TRUE(std::isinf(Magnitude::zero().log_value()));
}

TEST(MagnitudeTest, SumProductAndRatioMatchLinearArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1e-3, 1e3);
  for (int k = 0; k < 500; ++k) {
    const double a = dist(rng);
    const double b = dist(rng);
    const auto ma = Magnitude::from_linear(a);
    const auto mb = Magnitude::from_linear(b);
    EXPECT_NEAR((ma + mb).to_linear(), a + b, 1e-12 * (a + b));
    EXPECT_NEAR((ma * mb).to_linear(), a * b, 1e-12 * a * b);
    EXPECT_NEAR(ratio(ma, mb), a / b, 1e-12 * a / b);
    EXPECT_NEAR(difference(ma, mb).to_linear(), std::max(a - b, 0.0), 1e-9 * std::max(a, b));
  }
}

TEST(MagnitudeTest, HugeValuesStayFinite) {
  // e^5000 overflows a double, its log does not.
  const auto big = Magnitude::from_log(5000.0);
  const auto bigger = big + big;
  EXPECT_TRUE(bigger.is_finite());
  EXPECT_NEAR(bigger.log_value(), 5000.0 + std::log(2.0), 1e-12);
  EXPECT_NEAR(ratio(big, bigger), 0.5, 1e-12);  // ulp of log 5000 is ~1e-12
  EXPECT_TRUE(std::isinf(big.to_linear()));
}

TEST(MagnitudeTest, OrderingFollowsValue) {
  EXPECT_LT(Magnitude::zero(), Magnitude::from_linear(1e-300));
  EXPECT_LT(Magnitude::from_linear(2.0), Magnitude::from_linear(3.0));
  EXPECT_GT(Magnitude::from_log(800.0), Magnitude::from_log(799.0));
  EXPECT_TRUE(difference(Magnitude::from_linear(1.0), Magnitude::from_linear(2.0)).is_zero());
}

}  // namespace
