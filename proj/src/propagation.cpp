#include "rglsa/propagation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rglsa {

std::string_view to_string(BoostVariant variant) {
  return variant == BoostVariant::RatioBoost ? "ratio" : "additive";
}

BoostVariant parse_boost_variant(std::string_view text) {
  if (text == "ratio") return BoostVariant::RatioBoost;
  if (text == "additive") return BoostVariant::AdditiveBoost;
  throw std::invalid_argument("unknown boost variant '" + std::string(text) + "'");
}

void BoostConfig::validate() const {
  if (variant == BoostVariant::RatioBoost && j == 0) {
    throw std::invalid_argument("ratio boost needs j >= 1 dummy VMs");
  }
  if (variant == BoostVariant::AdditiveBoost && !(alpha_add > 0.0 && alpha_add < 0.5)) {
    throw std::invalid_argument("additive boost needs alpha_add in (0, 0.5)");
  }
}

TransmissionProfile transmission_profile(const SeedTrajectory& traj) {
  if (traj.n == 0) throw std::invalid_argument("transmission_profile: trajectory has n = 0");
  TransmissionProfile profile;
  profile.n = traj.n;
  profile.probabilities.reserve(traj.n);
  profile.clamped.reserve(traj.n);
  const Magnitude& denom = traj.at(traj.n);
  for (std::size_t i = 1; i <= traj.n; ++i) {
    const double p = ratio(traj.at(i), denom);
    profile.probabilities.push_back(std::min(p, 1.0));
    profile.clamped.push_back(p > 1.0);
  }
  return profile;
}

namespace {

void require_index(std::size_t i, std::size_t n, const char* what) {
  if (i < 1 || i > n) {
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n));
  }
}

}  // namespace

double scaled_plain(const SeedTrajectory& traj_extended, std::size_t i) {
  require_index(i, traj_extended.n, "scaled_plain");
  return std::min(ratio(traj_extended.at(i), traj_extended.at(traj_extended.n)), 1.0);
}

double ratio_boost(const SeedTrajectory& traj_extended, std::size_t i, std::size_t j) {
  if (j == 0) throw std::invalid_argument("ratio_boost: j must be >= 1");
  if (j >= traj_extended.n) throw std::invalid_argument("ratio_boost: trajectory too short for j");
  const std::size_t n = traj_extended.n - j;
  require_index(i, n, "ratio_boost");
  const Magnitude& denom = traj_extended.at(n + j);
  const double boosted = ratio(traj_extended.at(i) + traj_extended.at(j), denom);
  if (boosted <= 1.0) return boosted;
  return scaled_plain(traj_extended, i);
}

double additive_boost(const SeedTrajectory& traj, std::size_t i, double alpha_add) {
  if (!(alpha_add > 0.0 && alpha_add < 0.5)) {
    throw std::invalid_argument("additive_boost: alpha_add must lie in (0, 0.5)");
  }
  require_index(i, traj.n, "additive_boost");
  const double p = ratio(traj.at(i) + Magnitude::from_linear(alpha_add), traj.at(traj.n));
  return std::min(p, 1.0);
}

TransmissionProfile boosted_profile(const SeedTrajectory& traj_extended, const BoostConfig& boost) {
  boost.validate();
  const std::size_t j = boost.variant == BoostVariant::RatioBoost ? boost.j : 0;
  if (j >= traj_extended.n) throw std::invalid_argument("boosted_profile: trajectory too short");
  const std::size_t n = traj_extended.n - j;

  TransmissionProfile profile = transmission_profile(traj_extended);
  profile.boost = boost;
  for (std::size_t i = 1; i <= n; ++i) {
    profile.probabilities[i - 1] = boost.variant == BoostVariant::RatioBoost
                                       ? ratio_boost(traj_extended, i, j)
                                       : additive_boost(traj_extended, i, boost.alpha_add);
  }
  return profile;
}

std::vector<double> decay_curve(std::size_t i, const std::vector<std::size_t>& n_values,
                                const GammaPolicy& policy) {
  std::vector<double> out;
  out.reserve(n_values.size());
  for (std::size_t n : n_values) {
    if (n < i) throw std::invalid_argument("decay_curve: every n must be >= i");
    out.push_back(transmission_profile(rglsa_lucas_trajectory(n, policy)).p(i));
  }
  return out;
}

}  // namespace rglsa
