#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rglsa/magnitude.hpp"
#include "rglsa/propagation.hpp"
#include "rglsa/randomized_seeds.hpp"

namespace rglsa {

enum class VmKind { Real, Dummy };

struct Vm {
  std::size_t id = 0;  // 1-based position in the sequence
  VmKind kind = VmKind::Real;
  bool flag = false;  // 1 once infected, never reset

  bool operator==(const Vm&) const = default;
};

struct DummyInjection {
  std::size_t at_step = 1;
  std::size_t j = 1;

  bool operator==(const DummyInjection&) const = default;
};

/// Ordered VM sequence. VM_1 is the attack source.
struct Cloud {
  std::vector<Vm> vms;
  /// Parallel seeding edges between consecutive VMs.
  std::size_t multiplicity = 1;
  std::vector<DummyInjection> injections;

  std::size_t size() const { return vms.size(); }
  std::size_t real_count() const;
  std::size_t dummy_count() const { return size() - real_count(); }
  std::size_t infected_count() const;
  bool all_infected() const { return infected_count() == size(); }
  /// Position (0-based) of the first uninfected VM in sequence order.
  std::optional<std::size_t> nearest_uninfected() const;
};

/// Seed index k <-> VM id k + 1 over the original (real) VMs.
struct SeedVmMapping {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (seed index, vm id)

  /// Total, injective and surjective over the real VMs of `cloud`.
  bool is_bijection_over(const Cloud& cloud) const;
  std::optional<std::size_t> vm_for_seed(std::size_t seed) const;
  std::optional<std::size_t> seed_for_vm(std::size_t vm_id) const;
};

struct CloudBuild {
  Cloud cloud;
  SeedVmMapping mapping;
};

/// n real VMs with VM_1 infected. Throws std::invalid_argument for n == 0.
CloudBuild build_cloud(std::size_t n);

/// Appends j dummy VMs, recording the injection step. Throws
/// std::invalid_argument for j == 0 or at_step == 0.
Cloud inject_dummies(const Cloud& cloud, std::size_t j, std::size_t at_step);

enum class AttackOutcome { Hit, Miss };

struct AttackStep {
  std::size_t step = 0;
  Magnitude seed_count;
  std::size_t target_vm = 0;
  double p_used = 0.0;
  AttackOutcome outcome = AttackOutcome::Miss;
  std::size_t infected_total = 0;

  bool operator==(const AttackStep&) const = default;
};

enum class Termination { AllInfected, Nullified, MaxSteps };

std::string_view to_string(Termination t);

struct AttackRun {
  std::vector<AttackStep> steps;
  Termination terminated_reason = Termination::MaxSteps;
  std::size_t step_count = 0;
  Cloud final_cloud;
  SeedVmMapping mapping;
};

/// How surplus seed copies in one step are used.
enum class MultiAttack {
  /// One attack per step; the remaining copies are added to the next step's
  /// seed count.
  CarryOver,
  /// floor(min(seed_count, remaining)) attacks in sequence order within the
  /// step, stopping at the first miss.
  SameStep,
};

/// Uniform draw on [0, 1) used for the Bernoulli trials.
using UniformSource = std::function<double()>;

struct AttackState {
  Cloud cloud;
  SeedTrajectory trajectory;
  std::size_t step = 0;
  Magnitude carry;
  MultiAttack multi_attack = MultiAttack::CarryOver;
};

/// Probability for the VM at `id`; the profile covers ids 2..size() as
/// p_1..p_{size()-1}.
using ProbabilityLookup = std::function<double(const Vm&)>;

ProbabilityLookup profile_lookup(const TransmissionProfile& profile);

/// Advances one step: attacks the nearest uninfected VM (and, under
/// SameStep, the following ones) with Bernoulli draws. Requires at least one
/// uninfected VM.
std::vector<AttackStep> step_attack(AttackState& state, const ProbabilityLookup& probability,
                                    const UniformSource& uniform);

/// Chance that each remaining uninfected VM falls within the next attempts in
/// sequence: the running product of conditional probabilities.
std::vector<double> reach_probabilities(const Cloud& cloud, const ProbabilityLookup& probability);

struct AttackConfig {
  std::size_t n = 1;  // real VMs
  GammaPolicy policy = GammaPolicy::deterministic();
  std::optional<BoostConfig> boost;
  std::vector<DummyInjection> dummy_schedule;
  std::size_t max_steps = 1000;
  double epsilon = 1e-3;
  MultiAttack multi_attack = MultiAttack::CarryOver;
  /// Parallel seeding edges per target; a hit needs any one of them to land.
  std::size_t multiplicity = 1;
  /// Seed for the Bernoulli stream; independent of policy.rng_seed.
  std::uint64_t attack_seed = 0;
};

/// Runs step_attack until every VM is infected, every remaining reach
/// probability is below epsilon (Nullified), or max_steps is hit.
/// `override_probability` replaces the trajectory-derived profile, and
/// `uniform` replaces the seeded Bernoulli stream.
AttackRun run_attack(const AttackConfig& config, const ProbabilityLookup& override_probability = {},
                     const UniformSource& uniform = {});

}  // namespace rglsa
