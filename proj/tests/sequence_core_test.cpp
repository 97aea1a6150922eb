#include "rglsa/sequence_core.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

namespace {

using namespace rglsa;

TEST(SequenceCoreTest, FibonacciSeedValues) {
  EXPECT_EQ(fib_iter(0), 0);
  EXPECT_EQ(fib_iter(1), 1);
  EXPECT_EQ(fib_iter(10), 55);
}

TEST(SequenceCoreTest, LucasSeedValues) {
  EXPECT_EQ(lucas_iter(0), 2);
  EXPECT_EQ(lucas_iter(1), 1);
  EXPECT_EQ(lucas_iter(2), 3);
  EXPECT_EQ(lucas_iter(6), 18);
}

TEST(SequenceCoreTest, LucasFromFibonacci) {
  EXPECT_EQ(lucas_from_fib(1), 1);
  EXPECT_EQ(lucas_from_fib(2), 3);
  EXPECT_EQ(lucas_from_fib(4), 7);
  EXPECT_THROW(lucas_from_fib(0), std::domain_error);
}

TEST(SequenceCoreTest, ExactTablesMatchDecimalOracle) {
  const auto fib = oracle::fib_decimal(200);
  const auto lucas = oracle::lucas_decimal(200);
  for (std::size_t n = 0; n <= 200; ++n) {
    EXPECT_EQ(fib_iter(n).str(), fib[n]) << "n=" << n;
    EXPECT_EQ(lucas_iter(n).str(), lucas[n]) << "n=" << n;
  }
}

TEST(SequenceCoreTest, LucasIdentityHoldsThroughNinety) {
  for (std::size_t n = 1; n <= 90; ++n) EXPECT_EQ(lucas_from_fib(n), lucas_iter(n)) << "n=" << n;
}

TEST(SequenceCoreTest, SumOfSquares) {
  EXPECT_TRUE(verify_sum_of_squares(1));
  EXPECT_TRUE(verify_sum_of_squares(4));
  EXPECT_TRUE(verify_sum_of_squares(30));
  for (std::size_t n = 1; n <= 60; ++n) EXPECT_TRUE(verify_sum_of_squares(n)) << "n=" << n;
  EXPECT_THROW(verify_sum_of_squares(0), std::domain_error);
}

TEST(SequenceCoreTest, SumOfSquaresOracleAgrees) {
  // Independent check of the identity itself in 128-bit integers.
  const auto f = oracle::fib_u128(61);
  oracle::u128 sum = 0;
  for (std::size_t n = 1; n <= 60; ++n) {
    sum += f[n] * f[n];
    EXPECT_TRUE(sum == f[n] * f[n + 1]) << "n=" << n;
  }
}

TEST(SequenceCoreTest, GoldenConstants) {
  using G = GoldenConstants<double>;
  EXPECT_NEAR(G::phi + G::psi, 1.0, 1e-12);
  EXPECT_NEAR(G::phi * G::psi, -1.0, 1e-12);
  EXPECT_NEAR(G::sqrt5 * G::sqrt5, 5.0, 1e-12);
}

TEST(SequenceCoreTest, BinetExamples) {
  EXPECT_EQ(fib_binet(0), 0.0);
  EXPECT_NEAR(fib_binet(5), 5.0, 1e-9);
  EXPECT_NEAR(fib_binet(20), 6765.0, 1e-6);
}

TEST(SequenceCoreTest, BinetTracksExactFibonacciToSeventy) {
  const auto fib = oracle::fib_decimal(70);
  for (std::size_t n = 0; n <= 70; ++n) {
    const double exact = oracle::to_double(fib[n]);
    EXPECT_LT(std::abs(fib_binet(n) - exact), 1e-9 * std::max(1.0, exact)) << "n=" << n;
  }
}

TEST(SequenceCoreTest, ScaledClosedFormExamples) {
  EXPECT_DOUBLE_EQ(lucas_closed_scaled(0, 0.5), 1.0);
  EXPECT_NEAR(lucas_closed_scaled(2, 0.5), 1.5, 1e-12);
  const auto lucas = oracle::lucas_decimal(40);
  for (std::size_t n = 0; n <= 40; ++n) {
    const double exact = oracle::to_double(lucas[n]);
    EXPECT_NEAR(lucas_closed_scaled(n, 1.0), exact, 1e-9 * exact);
  }
  EXPECT_EQ(fib_closed_scaled(0, 0.37), 0.0);
  EXPECT_NEAR(fib_closed_scaled(1, 0.3), 0.3, 1e-12);
  EXPECT_NEAR(fib_closed_scaled(6, 0.5), 4.0, 1e-9);
}

TEST(SequenceCoreTest, ScalingIsLinearInGamma) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> gamma_dist(1e-6, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double gamma = gamma_dist(rng);
    const std::size_t n = rng() % 80;
    const double unit = lucas_closed_scaled(n, 1.0);
    EXPECT_NEAR(lucas_closed_scaled(n, gamma), gamma * unit, 1e-12 * gamma * unit);
    EXPECT_EQ(fib_closed_scaled(n, gamma), gamma * fib_binet(n));
  }
}

TEST(SequenceCoreTest, MonotoneGrowth) {
  for (std::size_t n = 1; n < 150; ++n) EXPECT_GT(lucas_iter(n + 1), lucas_iter(n));
  for (std::size_t n = 2; n < 150; ++n) EXPECT_GT(fib_iter(n + 1), fib_iter(n));
}

TEST(SequenceCoreTest, PlainRecurrenceHoldsForBothClosedForms) {
  const auto lucas = verify_plain_recurrence(
      [](std::size_t n, double g) { return lucas_closed_scaled(n, g); }, 30, 0.25, 1e-9);
  EXPECT_EQ(lucas.residuals.size(), 29u);
  EXPECT_TRUE(lucas.all_passed());

  const auto fib = verify_plain_recurrence(
      [](std::size_t n, double g) { return fib_closed_scaled(n, g); }, 30, 1.0, 1e-9);
  EXPECT_TRUE(fib.all_passed());
}

TEST(SequenceCoreTest, InverseGammaRecurrenceFailsWithPredictedResidual) {
  const double gamma = 0.5;
  const auto report = verify_recurrence(
      [](std::size_t n, double g) { return lucas_closed_scaled(n, g); }, 30, gamma, 1e-9,
      RecurrenceForm::InverseGammaScaled);
  EXPECT_TRUE(report.none_passed());
  for (const auto& r : report.residuals) {
    EXPECT_NEAR(r.relative, std::abs(1.0 - 1.0 / gamma), 1e-9) << "n=" << r.n;
  }
}

TEST(SequenceCoreTest, InverseGammaRecurrenceHoldsOnlyAtGammaOne) {
  const auto report = verify_recurrence(
      [](std::size_t n, double g) { return lucas_closed_scaled(n, g); }, 30, 1.0, 1e-9,
      RecurrenceForm::InverseGammaScaled);
  EXPECT_TRUE(report.all_passed());
}

TEST(SequenceCoreTest, RecurrenceNeedsTwoTerms) {
  EXPECT_THROW(verify_plain_recurrence([](std::size_t, double) { return 1.0; }, 1, 1.0, 1e-9),
               std::domain_error);
}

}  // namespace
