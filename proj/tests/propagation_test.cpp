#include "rglsa/propagation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

namespace {

using namespace rglsa;

SeedTrajectory lucas_table(std::size_t n) { return rglsa_lucas_trajectory(n, GammaPolicy::deterministic()); }

// Trajectory with arbitrary values, for cases no real policy produces.
SeedTrajectory hand_built(const std::vector<double>& values) {
  SeedTrajectory t;
  t.n = values.size() - 1;
  for (double v : values) t.lucas.push_back(Magnitude::from_linear(v));
  return t;
}

double lucas_ratio(std::size_t a, std::size_t b) {
  const auto l = oracle::lucas_u128(b);
  return static_cast<double>(l[a]) / static_cast<double>(l[b]);
}

TEST(TransmissionProfileTest, DeterministicFour) {
  const auto profile = transmission_profile(lucas_table(4));
  ASSERT_EQ(profile.probabilities.size(), 4u);
  const double want[] = {1.0 / 7, 3.0 / 7, 4.0 / 7, 1.0};
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_NEAR(profile.p(i), want[i - 1], 1e-15);
  EXPECT_FALSE(profile.boost.has_value());
}

TEST(TransmissionProfileTest, LastIndexIsOne) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (auto policy : {GammaPolicy::fixed(seed), GammaPolicy::redrawn(seed)}) {
      const auto profile = transmission_profile(rglsa_lucas_trajectory(1 + seed % 40, policy));
      EXPECT_DOUBLE_EQ(profile.p(profile.n), 1.0);
    }
  }
}

TEST(TransmissionProfileTest, ValuesStayInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto profile = transmission_profile(rglsa_lucas_trajectory(30, GammaPolicy::redrawn(seed)));
    for (std::size_t i = 1; i <= profile.n; ++i) {
      EXPECT_GE(profile.p(i), 0.0);
      EXPECT_LE(profile.p(i), 1.0);
      if (profile.clamped[i - 1]) EXPECT_EQ(profile.p(i), 1.0);
    }
  }
}

TEST(TransmissionProfileTest, RedrawnSeed42IsNonMonotonic) {
  const auto profile = transmission_profile(rglsa_lucas_trajectory(11, GammaPolicy::redrawn(42)));
  bool rises = false;
  bool falls = false;
  for (std::size_t i = 2; i <= profile.n; ++i) {
    rises |= profile.p(i) > profile.p(i - 1);
    falls |= profile.p(i) < profile.p(i - 1);
  }
  EXPECT_TRUE(rises && falls);
}

TEST(TransmissionProfileTest, ClampedValuesAreFlagged) {
  const auto profile = transmission_profile(hand_built({2, 9, 3, 4}));
  EXPECT_EQ(profile.p(1), 1.0);
  EXPECT_TRUE(profile.clamped[0]);
  EXPECT_FALSE(profile.clamped[1]);
  EXPECT_THROW(transmission_profile(hand_built({2})), std::invalid_argument);
}

TEST(TransmissionProfileTest, GammaInvarianceInClosedForm) {
  const auto base = transmission_profile(closed_form_trajectory(20, 0.05));
  for (double g : {0.1, 0.25, 0.49}) {
    const auto other = transmission_profile(closed_form_trajectory(20, g));
    for (std::size_t i = 1; i <= 20; ++i) EXPECT_NEAR(other.p(i), base.p(i), 1e-12);
  }
}

TEST(RatioBoostTest, Examples) {
  const auto ext = lucas_table(6);
  EXPECT_NEAR(ratio_boost(ext, 1, 2), 2.0 / 9, 1e-15);
  EXPECT_NEAR(ratio_boost(ext, 4, 2), 5.0 / 9, 1e-15);
  EXPECT_NEAR(scaled_plain(ext, 4), 7.0 / 18, 1e-15);
}

TEST(RatioBoostTest, FallsBackWhenSumExceedsOne) {
  // (L_1 + L_3) / L_4 = 60 / 10 > 1, so the plain 1 / 10 is used.
  const auto ext = hand_built({2, 1, 3, 50, 10});
  EXPECT_NEAR(ratio_boost(ext, 1, 3), 0.1, 1e-15);
}

TEST(RatioBoostTest, Preconditions) {
  const auto ext = lucas_table(6);
  EXPECT_THROW(ratio_boost(ext, 1, 0), std::invalid_argument);
  EXPECT_THROW(ratio_boost(ext, 0, 2), std::out_of_range);
  EXPECT_THROW(ratio_boost(ext, 5, 2), std::out_of_range);
  EXPECT_THROW(ratio_boost(ext, 1, 6), std::invalid_argument);
}

TEST(RatioBoostTest, DominatesPlainForFigureConfiguration) {
  for (std::size_t n : {4u, 8u, 10u, 12u}) {
    const auto ext = lucas_table(n + 8);
    for (std::size_t i = 1; i <= n; ++i) {
      const double want = static_cast<double>(oracle::lucas_u128(n + 8)[i] + 47) /
                          static_cast<double>(oracle::lucas_u128(n + 8)[n + 8]);
      EXPECT_NEAR(ratio_boost(ext, i, 8), want, 1e-15);
      EXPECT_GT(ratio_boost(ext, i, 8), scaled_plain(ext, i));
    }
  }
  EXPECT_NEAR(ratio_boost(lucas_table(12), 1, 8), 24.0 / 161, 1e-15);
  EXPECT_NEAR(ratio_boost(lucas_table(12), 3, 8), 51.0 / 322, 1e-15);
}

TEST(RatioBoostTest, NeverExceedsOne) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ext = rglsa_lucas_trajectory(25, GammaPolicy::redrawn(seed));
    for (std::size_t j = 1; j < 6; ++j) {
      for (std::size_t i = 1; i <= 25 - j; ++i) {
        const double p = ratio_boost(ext, i, j);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
      }
    }
  }
}

TEST(AdditiveBoostTest, Examples) {
  const auto t = lucas_table(4);
  EXPECT_NEAR(additive_boost(t, 1, 0.4), 0.2, 1e-15);
  EXPECT_EQ(additive_boost(t, 4, 0.4), 1.0);
  EXPECT_NEAR(additive_boost(t, 2, 1e-12), 3.0 / 7, 1e-12);
  EXPECT_THROW(additive_boost(t, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(additive_boost(t, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(additive_boost(t, 5, 0.1), std::out_of_range);
}

TEST(AdditiveBoostTest, AtLeastPlainAndAtMostOne) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = rglsa_lucas_trajectory(20, GammaPolicy::fixed(seed));
    const auto plain = transmission_profile(t);
    for (std::size_t i = 1; i <= 20; ++i) {
      const double p = additive_boost(t, i, 0.3);
      EXPECT_GE(p, plain.p(i));
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST(BoostedProfileTest, DummyIndicesStayPlain) {
  const auto ext = lucas_table(6);
  const auto profile = boosted_profile(ext, BoostConfig{BoostVariant::RatioBoost, 2, 0.25});
  ASSERT_EQ(profile.n, 6u);
  EXPECT_NEAR(profile.p(1), 2.0 / 9, 1e-15);
  EXPECT_NEAR(profile.p(4), 5.0 / 9, 1e-15);
  EXPECT_NEAR(profile.p(5), 11.0 / 18, 1e-15);
  EXPECT_DOUBLE_EQ(profile.p(6), 1.0);
  ASSERT_TRUE(profile.boost.has_value());
}

TEST(BoostedProfileTest, AdditiveVariantCoversAllIndices) {
  const auto profile = boosted_profile(lucas_table(4), BoostConfig{BoostVariant::AdditiveBoost, 1, 0.4});
  EXPECT_NEAR(profile.p(1), 0.2, 1e-15);
  EXPECT_EQ(profile.p(4), 1.0);
}

TEST(BoostConfigTest, Validation) {
  EXPECT_THROW((BoostConfig{BoostVariant::RatioBoost, 0, 0.25}.validate()), std::invalid_argument);
  EXPECT_THROW((BoostConfig{BoostVariant::AdditiveBoost, 1, 0.7}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((BoostConfig{}.validate()));
  EXPECT_EQ(parse_boost_variant("additive"), BoostVariant::AdditiveBoost);
  EXPECT_EQ(to_string(BoostVariant::RatioBoost), "ratio");
  EXPECT_THROW(parse_boost_variant("tail"), std::invalid_argument);
}

TEST(DecayCurveTest, Examples) {
  const auto curve = decay_curve(1, {4, 8, 12}, GammaPolicy::deterministic());
  EXPECT_NEAR(curve[0], 1.0 / 7, 1e-15);
  EXPECT_NEAR(curve[1], 1.0 / 47, 1e-15);
  EXPECT_NEAR(curve[2], 1.0 / 322, 1e-15);
  EXPECT_LT(decay_curve(1, {35}, GammaPolicy::deterministic())[0], 1e-6);
  for (std::size_t n = 1; n <= 30; ++n) {
    EXPECT_DOUBLE_EQ(decay_curve(n, {n}, GammaPolicy::deterministic())[0], 1.0);
  }
  EXPECT_THROW(decay_curve(5, {4}, GammaPolicy::deterministic()), std::invalid_argument);
}

TEST(DecayCurveTest, StrictlyDecreasingForEveryIndex) {
  std::vector<std::size_t> ns;
  for (std::size_t n = 10; n <= 60; ++n) ns.push_back(n);
  for (std::size_t i = 1; i <= 10; ++i) {
    const auto curve = decay_curve(i, ns, GammaPolicy::deterministic());
    for (std::size_t k = 0; k < ns.size(); ++k) {
      EXPECT_NEAR(curve[k], lucas_ratio(i, ns[k]), 1e-12 * curve[k]);
      if (k > 0) EXPECT_LT(curve[k], curve[k - 1]);
    }
  }
}

}  // namespace
