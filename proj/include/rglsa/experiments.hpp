#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rglsa/cloud_sim.hpp"
#include "rglsa/dataset.hpp"
#include "rglsa/propagation.hpp"
#include "rglsa/randomized_seeds.hpp"

namespace rglsa {

enum class ExperimentKind { Growth, Probability, TailBoost, Timing, FullSim };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

/// Where seed trajectories come from.
enum class SeedModel {
  /// rglsa_lucas_trajectory under the configured policy.
  Algorithmic,
  /// gamma * Lucas_k with one gamma (pinned, or drawn from the policy).
  ClosedForm,
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Growth;
  std::vector<std::size_t> n_values;
  std::size_t j = 0;
  GammaPolicy policy = GammaPolicy::deterministic();
  SeedModel seed_model = SeedModel::Algorithmic;
  std::optional<BoostConfig> boost;
  std::string output_path;

  std::size_t timing_repeats = 3;

  // FullSim only.
  std::size_t inject_at_step = 2;
  double epsilon = 1e-3;
  std::size_t max_steps = 1000;
  MultiAttack multi_attack = MultiAttack::CarryOver;
  std::uint64_t attack_seed = 0;

  /// Throws std::invalid_argument on an empty or non-increasing n_values,
  /// Timing above kNaiveMaxIndex, TailBoost with j == 0, or a bad policy.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Trajectory for index n under the config's seed model.
SeedTrajectory make_trajectory(const ExperimentConfig& config, std::size_t n);

/// Columns n, log_L, L (L = +inf when it does not fit in a double).
Dataset exp_growth(const ExperimentConfig& config);
/// Long format: n, i, p for i = 1..n at each n.
Dataset exp_probability(const ExperimentConfig& config);
/// n, i, p_plain (L_i / L_{n+j}), p_boosted.
Dataset exp_tailboost(const ExperimentConfig& config);
/// n, elapsed_ms (median over timing_repeats), log_L.
Dataset exp_timing(const ExperimentConfig& config);
/// Attack trace for n = max(n_values) with j dummies at inject_at_step.
Dataset exp_fullsim(const ExperimentConfig& config);

/// Dispatches on config.kind and writes the dataset when output_path is set.
Dataset run_experiment(const ExperimentConfig& config);

/// Rebuilds the generating config from a dataset's config echo.
ExperimentConfig config_from_dataset(const Dataset& dataset);

}  // namespace rglsa
