#include "rglsa/cloud_sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rglsa {

std::size_t Cloud::real_count() const {
  return static_cast<std::size_t>(
      std::count_if(vms.begin(), vms.end(), [](const Vm& vm) { return vm.kind == VmKind::Real; }));
}

std::size_t Cloud::infected_count() const {
  return static_cast<std::size_t>(
      std::count_if(vms.begin(), vms.end(), [](const Vm& vm) { return vm.flag; }));
}

std::optional<std::size_t> Cloud::nearest_uninfected() const {
  for (std::size_t pos = 0; pos < vms.size(); ++pos) {
    if (!vms[pos].flag) return pos;
  }
  return std::nullopt;
}

bool SeedVmMapping::is_bijection_over(const Cloud& cloud) const {
  std::set<std::size_t> real_ids;
  for (const Vm& vm : cloud.vms) {
    if (vm.kind == VmKind::Real) real_ids.insert(vm.id);
  }
  std::set<std::size_t> seeds;
  std::set<std::size_t> targets;
  for (const auto& [seed, vm] : pairs) {
    if (!real_ids.contains(vm)) return false;
    seeds.insert(seed);
    targets.insert(vm);
  }
  return seeds.size() == pairs.size() && targets.size() == pairs.size() &&
         targets.size() == real_ids.size();
}

std::optional<std::size_t> SeedVmMapping::vm_for_seed(std::size_t seed) const {
  for (const auto& [s, vm] : pairs) {
    if (s == seed) return vm;
  }
  return std::nullopt;
}

std::optional<std::size_t> SeedVmMapping::seed_for_vm(std::size_t vm_id) const {
  for (const auto& [s, vm] : pairs) {
    if (vm == vm_id) return s;
  }
  return std::nullopt;
}

CloudBuild build_cloud(std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_cloud: need at least one VM");
  CloudBuild out;
  out.cloud.vms.reserve(n);
  out.mapping.pairs.reserve(n);
  for (std::size_t id = 1; id <= n; ++id) {
    out.cloud.vms.push_back(Vm{id, VmKind::Real, id == 1});
    out.mapping.pairs.emplace_back(id - 1, id);
  }
  return out;
}

Cloud inject_dummies(const Cloud& cloud, std::size_t j, std::size_t at_step) {
  if (j == 0) throw std::invalid_argument("inject_dummies: j must be >= 1");
  if (at_step == 0) throw std::invalid_argument("inject_dummies: at_step must be >= 1");
  Cloud out = cloud;
  const std::size_t first_id = out.vms.size() + 1;
  for (std::size_t k = 0; k < j; ++k) out.vms.push_back(Vm{first_id + k, VmKind::Dummy, false});
  out.injections.push_back({at_step, j});
  return out;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::AllInfected: return "all_infected";
    case Termination::Nullified: return "nullified";
    case Termination::MaxSteps: return "max_steps";
  }
  return "unknown";
}

ProbabilityLookup profile_lookup(const TransmissionProfile& profile) {
  return [profile](const Vm& vm) {
    if (vm.id < 2 || vm.id - 1 > profile.n) return 0.0;
    return profile.p(vm.id - 1);
  };
}

namespace {

double clamp_unit(double p) { return std::clamp(std::isnan(p) ? 0.0 : p, 0.0, 1.0); }

// Probability that at least one of `edges` parallel seedings lands.
double across_edges(double p, std::size_t edges) {
  if (edges <= 1) return p;
  return 1.0 - std::pow(1.0 - p, static_cast<double>(edges));
}

std::size_t attack_count(const Magnitude& seed_count, std::size_t remaining) {
  if (seed_count.is_zero()) return 1;
  // Slack so that a log-domain 2.9999999999 still counts as three copies.
  constexpr double kSlack = 1e-9;
  if (seed_count.log_value() + kSlack >= std::log(static_cast<double>(remaining))) return remaining;
  const auto floored = static_cast<std::size_t>(std::floor(seed_count.to_linear() * (1.0 + kSlack)));
  return std::clamp<std::size_t>(floored, 1, remaining);
}

}  // namespace

std::vector<AttackStep> step_attack(AttackState& state, const ProbabilityLookup& probability,
                                    const UniformSource& uniform) {
  if (!state.cloud.nearest_uninfected()) {
    throw std::logic_error("step_attack: every VM is already infected");
  }
  ++state.step;
  const std::size_t seed_index = std::min(state.step, state.trajectory.n);
  const Magnitude seed_count = state.trajectory.at(seed_index) + state.carry;

  const std::size_t remaining = state.cloud.size() - state.cloud.infected_count();
  const std::size_t attempts =
      state.multi_attack == MultiAttack::CarryOver ? 1 : attack_count(seed_count, remaining);

  std::vector<AttackStep> records;
  for (std::size_t a = 0; a < attempts; ++a) {
    const auto pos = state.cloud.nearest_uninfected();
    if (!pos) break;
    Vm& target = state.cloud.vms[*pos];
    const double p = clamp_unit(across_edges(clamp_unit(probability(target)), state.cloud.multiplicity));
    const bool hit = uniform() < p;
    if (hit) target.flag = true;
    records.push_back(AttackStep{state.step, seed_count, target.id, p,
                                 hit ? AttackOutcome::Hit : AttackOutcome::Miss,
                                 state.cloud.infected_count()});
    if (!hit) break;
  }

  state.carry = state.multi_attack == MultiAttack::CarryOver
                    ? difference(seed_count, Magnitude::from_linear(1.0))
                    : Magnitude::zero();
  return records;
}

std::vector<double> reach_probabilities(const Cloud& cloud, const ProbabilityLookup& probability) {
  std::vector<double> out;
  double chain = 1.0;
  for (const Vm& vm : cloud.vms) {
    if (vm.flag) continue;
    chain *= clamp_unit(across_edges(clamp_unit(probability(vm)), cloud.multiplicity));
    out.push_back(chain);
  }
  return out;
}

AttackRun run_attack(const AttackConfig& config, const ProbabilityLookup& override_probability,
                     const UniformSource& uniform) {
  if (config.n == 0) throw std::invalid_argument("run_attack: n must be >= 1");
  if (config.max_steps == 0) throw std::invalid_argument("run_attack: max_steps must be >= 1");
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw std::invalid_argument("run_attack: epsilon must lie in (0, 1)");
  }
  if (config.multiplicity == 0) throw std::invalid_argument("run_attack: multiplicity must be >= 1");
  config.policy.validate();
  if (config.boost && config.boost->variant == BoostVariant::AdditiveBoost) config.boost->validate();

  auto schedule = config.dummy_schedule;
  for (const auto& inj : schedule) {
    if (inj.j == 0 || inj.at_step == 0) {
      throw std::invalid_argument("run_attack: dummy injections need j >= 1 and at_step >= 1");
    }
  }
  std::stable_sort(schedule.begin(), schedule.end(),
                   [](const DummyInjection& a, const DummyInjection& b) { return a.at_step < b.at_step; });

  auto built = build_cloud(config.n);
  AttackState state;
  state.cloud = std::move(built.cloud);
  state.cloud.multiplicity = config.multiplicity;
  state.multi_attack = config.multi_attack;

  SeedStream attack_rng(config.attack_seed);
  const UniformSource draw = uniform ? uniform : UniformSource([&attack_rng] { return attack_rng.uniform(); });

  ProbabilityLookup lookup;
  auto refresh = [&] {
    const std::size_t real_links = config.n - 1;
    const std::size_t dummies = state.cloud.dummy_count();
    state.trajectory = rglsa_lucas_trajectory(std::max<std::size_t>(1, real_links + dummies), config.policy);
    if (override_probability) {
      lookup = override_probability;
      return;
    }
    if (state.cloud.size() < 2) {
      lookup = [](const Vm&) { return 0.0; };
      return;
    }
    TransmissionProfile profile;
    if (config.boost && dummies > 0 && real_links > 0) {
      BoostConfig boost = *config.boost;
      boost.j = dummies;
      profile = boosted_profile(state.trajectory, boost);
    } else {
      profile = transmission_profile(state.trajectory);
    }
    lookup = profile_lookup(profile);
  };
  refresh();

  AttackRun run;
  std::size_t next_injection = 0;
  for (;;) {
    if (state.cloud.all_infected()) {
      run.terminated_reason = Termination::AllInfected;
      break;
    }
    if (state.step >= config.max_steps) {
      run.terminated_reason = Termination::MaxSteps;
      break;
    }
    bool injected = false;
    while (next_injection < schedule.size() && schedule[next_injection].at_step <= state.step + 1) {
      state.cloud = inject_dummies(state.cloud, schedule[next_injection].j,
                                   schedule[next_injection].at_step);
      ++next_injection;
      injected = true;
    }
    if (injected) refresh();

    const auto reach = reach_probabilities(state.cloud, lookup);
    if (std::all_of(reach.begin(), reach.end(), [&](double r) { return r < config.epsilon; })) {
      run.terminated_reason = Termination::Nullified;
      break;
    }
    auto records = step_attack(state, lookup, draw);
    run.steps.insert(run.steps.end(), records.begin(), records.end());
  }
  run.step_count = state.step;
  run.final_cloud = std::move(state.cloud);
  run.mapping = std::move(built.mapping);
  return run;
}

}  // namespace rglsa
