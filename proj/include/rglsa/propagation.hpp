#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rglsa/randomized_seeds.hpp"

namespace rglsa {

enum class BoostVariant {
  /// (L_i + L_j) / L_{n+j}, reverting to L_i / L_{n+j} when the sum exceeds 1.
  RatioBoost,
  /// (L_i + alpha_add) / L_n, clamped to 1.
  AdditiveBoost,
};

std::string_view to_string(BoostVariant variant);
/// Accepts "ratio" and "additive". Throws std::invalid_argument.
BoostVariant parse_boost_variant(std::string_view text);

struct BoostConfig {
  BoostVariant variant = BoostVariant::RatioBoost;
  std::size_t j = 1;
  double alpha_add = 0.25;

  /// Throws std::invalid_argument when j == 0 (ratio) or alpha_add is
  /// outside (0, 0.5) (additive).
  void validate() const;

  bool operator==(const BoostConfig&) const = default;
};

/// Per-VM attack probabilities p_1..p_n, all in [0, 1].
struct TransmissionProfile {
  std::size_t n = 0;
  std::vector<double> probabilities;  // index 0 holds p_1
  std::vector<bool> clamped;
  std::optional<BoostConfig> boost;

  double p(std::size_t i) const { return probabilities.at(i - 1); }
};

/// p_i = L_i / L_n, values above 1 clamped and flagged.
/// Throws std::invalid_argument when traj.n == 0.
TransmissionProfile transmission_profile(const SeedTrajectory& traj);

/// Tail-boosted probability over a trajectory extended by j dummy VMs
/// (traj_extended.n = n + j). Requires 1 <= i <= n.
double ratio_boost(const SeedTrajectory& traj_extended, std::size_t i, std::size_t j);

/// (L_i + alpha_add) / L_n clamped to 1. Requires 1 <= i <= n, alpha_add in (0, 0.5).
double additive_boost(const SeedTrajectory& traj, std::size_t i, double alpha_add);

/// L_i / L_{n+j} for an extended trajectory; the unboosted baseline after
/// dummies are injected. Clamped to 1.
double scaled_plain(const SeedTrajectory& traj_extended, std::size_t i);

/// Profile over all n + j indices of an extended trajectory: indices 1..n get
/// the configured boost, the dummy indices n+1..n+j stay plain.
TransmissionProfile boosted_profile(const SeedTrajectory& traj_extended, const BoostConfig& boost);

/// p_i evaluated on a fresh trajectory for each n. Requires n >= i for every n.
std::vector<double> decay_curve(std::size_t i, const std::vector<std::size_t>& n_values,
                                const GammaPolicy& policy);

}  // namespace rglsa
