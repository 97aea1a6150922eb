#include "rglsa/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace rglsa {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Growth: return "growth";
    case ExperimentKind::Probability: return "probability";
    case ExperimentKind::TailBoost: return "tailboost";
    case ExperimentKind::Timing: return "timing";
    case ExperimentKind::FullSim: return "sim";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto kind : {ExperimentKind::Growth, ExperimentKind::Probability, ExperimentKind::TailBoost,
                    ExperimentKind::Timing, ExperimentKind::FullSim}) {
    if (to_string(kind) == text) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("experiment needs at least one n");
  for (std::size_t k = 1; k < n_values.size(); ++k) {
    if (n_values[k] <= n_values[k - 1]) throw std::invalid_argument("n_values must be increasing");
  }
  if (n_values.front() == 0 && kind != ExperimentKind::Timing) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (kind == ExperimentKind::Timing && n_values.back() > kNaiveMaxIndex) {
    throw std::invalid_argument("timing runs are limited to n <= " + std::to_string(kNaiveMaxIndex));
  }
  if (kind == ExperimentKind::TailBoost && j == 0) {
    throw std::invalid_argument("tail boost needs j >= 1 dummy VMs");
  }
  if (timing_repeats == 0) throw std::invalid_argument("timing_repeats must be >= 1");
  policy.validate();
  if (boost) {
    BoostConfig b = *boost;
    if (b.variant == BoostVariant::RatioBoost && j > 0) b.j = j;
    b.validate();
  }
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

double closed_form_gamma(const ExperimentConfig& config) {
  if (config.policy.mode == GammaMode::Deterministic) return 1.0;
  if (config.policy.pinned_gamma) return *config.policy.pinned_gamma;
  SeedStream rng(config.policy.rng_seed);
  return draw_gamma(config.policy, rng);
}

std::string_view multi_attack_name(MultiAttack m) {
  return m == MultiAttack::CarryOver ? "carry" : "same";
}

Dataset make_dataset(const ExperimentConfig& config) {
  Dataset d;
  d.kind = std::string(to_string(config.kind));
  d.manifest.seed = config.policy.rng_seed;
  d.manifest.gamma_mode = config.seed_model == SeedModel::ClosedForm
                              ? "closed"
                              : std::string(to_string(config.policy.mode));
  d.manifest.n = config.n_values.empty() ? 0 : config.n_values.back();
  d.manifest.j = config.j;
  d.manifest.boost_variant = config.boost ? std::string(to_string(config.boost->variant)) : "none";

  const auto& p = config.policy;
  d.config = {
      {"kind", std::string(to_string(config.kind))},
      {"n_values", join(config.n_values)},
      {"j", std::to_string(config.j)},
      {"seed_model", config.seed_model == SeedModel::ClosedForm ? "closed" : "algorithmic"},
      {"gamma_mode", std::string(to_string(p.mode))},
      {"gamma_lower", fmt_double(p.lower)},
      {"gamma_upper", fmt_double(p.upper)},
      {"rng_seed", std::to_string(p.rng_seed)},
      {"pinned_gamma", p.pinned_gamma ? fmt_double(*p.pinned_gamma) : "none"},
      {"boost", config.boost ? std::string(to_string(config.boost->variant)) : "none"},
      {"boost_j", std::to_string(config.boost ? config.boost->j : 0)},
      {"alpha_add", fmt_double(config.boost ? config.boost->alpha_add : BoostConfig{}.alpha_add)},
      {"timing_repeats", std::to_string(config.timing_repeats)},
      {"inject_at_step", std::to_string(config.inject_at_step)},
      {"epsilon", fmt_double(config.epsilon)},
      {"max_steps", std::to_string(config.max_steps)},
      {"multi_attack", std::string(multi_attack_name(config.multi_attack))},
      {"attack_seed", std::to_string(config.attack_seed)},
  };
  return d;
}

void require_kind(const ExperimentConfig& config, ExperimentKind kind) {
  if (config.kind != kind) {
    throw std::invalid_argument("experiment expects kind '" + std::string(to_string(kind)) +
                                "', got '" + std::string(to_string(config.kind)) + "'");
  }
  config.validate();
}

}  // namespace

SeedTrajectory make_trajectory(const ExperimentConfig& config, std::size_t n) {
  if (config.seed_model == SeedModel::ClosedForm) {
    return closed_form_trajectory(n, closed_form_gamma(config));
  }
  return rglsa_lucas_trajectory(n, config.policy);
}

Dataset exp_growth(const ExperimentConfig& config) {
  require_kind(config, ExperimentKind::Growth);
  const auto traj = make_trajectory(config, config.n_values.back());
  Dataset d = make_dataset(config);
  auto& n_col = d.add_column("n").values;
  auto& log_col = d.add_column("log_L").values;
  auto& lin_col = d.add_column("L").values;
  for (std::size_t n : config.n_values) {
    const Magnitude& L = traj.at(n);
    n_col.push_back(static_cast<double>(n));
    log_col.push_back(L.log_value());
    const double linear = L.to_linear();
    lin_col.push_back(std::isfinite(linear) ? linear : std::numeric_limits<double>::infinity());
  }
  return d;
}

Dataset exp_probability(const ExperimentConfig& config) {
  require_kind(config, ExperimentKind::Probability);
  Dataset d = make_dataset(config);
  auto& n_col = d.add_column("n").values;
  auto& i_col = d.add_column("i").values;
  auto& p_col = d.add_column("p").values;
  for (std::size_t n : config.n_values) {
    const auto profile = transmission_profile(make_trajectory(config, n));
    for (std::size_t i = 1; i <= n; ++i) {
      n_col.push_back(static_cast<double>(n));
      i_col.push_back(static_cast<double>(i));
      p_col.push_back(profile.p(i));
    }
  }
  return d;
}

Dataset exp_tailboost(const ExperimentConfig& config) {
  require_kind(config, ExperimentKind::TailBoost);
  BoostConfig boost = config.boost.value_or(BoostConfig{});
  if (boost.variant == BoostVariant::RatioBoost) boost.j = config.j;

  Dataset d = make_dataset(config);
  auto& n_col = d.add_column("n").values;
  auto& i_col = d.add_column("i").values;
  auto& plain_col = d.add_column("p_plain").values;
  auto& boosted_col = d.add_column("p_boosted").values;
  for (std::size_t n : config.n_values) {
    const auto extended = make_trajectory(config, n + config.j);
    for (std::size_t i = 1; i <= n; ++i) {
      n_col.push_back(static_cast<double>(n));
      i_col.push_back(static_cast<double>(i));
      plain_col.push_back(scaled_plain(extended, i));
      boosted_col.push_back(boost.variant == BoostVariant::RatioBoost
                                ? ratio_boost(extended, i, config.j)
                                : additive_boost(extended, i, boost.alpha_add));
    }
  }
  return d;
}

Dataset exp_timing(const ExperimentConfig& config) {
  require_kind(config, ExperimentKind::Timing);
  Dataset d = make_dataset(config);
  auto& n_col = d.add_column("n").values;
  auto& t_col = d.add_column("elapsed_ms").values;
  auto& log_col = d.add_column("log_L").values;

  SeedStream rng(config.policy.rng_seed);
  double fixed_alpha = 1.0;
  if (config.policy.mode == GammaMode::FixedPerRun) {
    fixed_alpha = 1.0 / (config.policy.pinned_gamma ? *config.policy.pinned_gamma
                                                    : draw_gamma(config.policy, rng));
  }
  std::vector<double> samples(config.timing_repeats);
  for (std::size_t n : config.n_values) {
    const double alpha = config.policy.mode == GammaMode::RedrawnPerIndex
                             ? 1.0 / draw_gamma(config.policy, rng)
                             : fixed_alpha;
    TimedMagnitude last;
    for (double& s : samples) {
      last = naive_lucas_timed(n, alpha);
      s = last.elapsed_ms;
    }
    std::sort(samples.begin(), samples.end());
    n_col.push_back(static_cast<double>(n));
    t_col.push_back(samples[(samples.size() - 1) / 2]);
    log_col.push_back(last.value.log_value());
  }
  return d;
}

Dataset exp_fullsim(const ExperimentConfig& config) {
  require_kind(config, ExperimentKind::FullSim);
  AttackConfig attack;
  attack.n = config.n_values.back();
  attack.policy = config.policy;
  attack.boost = config.boost;
  if (config.j > 0) attack.dummy_schedule.push_back({config.inject_at_step, config.j});
  attack.max_steps = config.max_steps;
  attack.epsilon = config.epsilon;
  attack.multi_attack = config.multi_attack;
  attack.attack_seed = config.attack_seed;
  const AttackRun run = run_attack(attack);

  Dataset d = make_dataset(config);
  auto& step_col = d.add_column("step").values;
  auto& target_col = d.add_column("target_vm").values;
  auto& p_col = d.add_column("p_used").values;
  auto& hit_col = d.add_column("hit").values;
  auto& infected_col = d.add_column("infected_total").values;
  auto& seed_col = d.add_column("log_seed_count").values;
  for (const AttackStep& s : run.steps) {
    step_col.push_back(static_cast<double>(s.step));
    target_col.push_back(static_cast<double>(s.target_vm));
    p_col.push_back(s.p_used);
    hit_col.push_back(s.outcome == AttackOutcome::Hit ? 1.0 : 0.0);
    infected_col.push_back(static_cast<double>(s.infected_total));
    seed_col.push_back(s.seed_count.log_value());
  }
  d.config.emplace_back("terminated", std::string(to_string(run.terminated_reason)));
  d.config.emplace_back("steps", std::to_string(run.step_count));
  return d;
}

Dataset run_experiment(const ExperimentConfig& config) {
  Dataset d;
  switch (config.kind) {
    case ExperimentKind::Growth: d = exp_growth(config); break;
    case ExperimentKind::Probability: d = exp_probability(config); break;
    case ExperimentKind::TailBoost: d = exp_tailboost(config); break;
    case ExperimentKind::Timing: d = exp_timing(config); break;
    case ExperimentKind::FullSim: d = exp_fullsim(config); break;
  }
  if (!config.output_path.empty()) write_dataset(d, config.output_path);
  return d;
}

namespace {

std::string need(const Dataset& d, std::string_view key) {
  auto v = d.config_value(key);
  if (!v) throw std::invalid_argument("dataset config echo is missing '" + std::string(key) + "'");
  return *v;
}

template <typename Int>
Int to_int(const std::string& text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer '" + text + "' in dataset config echo");
  }
  return v;
}

double to_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::invalid_argument("bad number '" + text + "' in dataset config echo");
  }
  return v;
}

}  // namespace

ExperimentConfig config_from_dataset(const Dataset& d) {
  ExperimentConfig c;
  c.kind = parse_experiment_kind(need(d, "kind"));
  const std::string n_values = need(d, "n_values");
  std::size_t start = 0;
  while (start <= n_values.size() && !n_values.empty()) {
    std::size_t comma = n_values.find(',', start);
    if (comma == std::string::npos) comma = n_values.size();
    c.n_values.push_back(to_int<std::size_t>(n_values.substr(start, comma - start)));
    start = comma + 1;
  }
  c.j = to_int<std::size_t>(need(d, "j"));
  c.seed_model = need(d, "seed_model") == "closed" ? SeedModel::ClosedForm : SeedModel::Algorithmic;
  c.policy.mode = parse_gamma_mode(need(d, "gamma_mode"));
  c.policy.lower = to_double(need(d, "gamma_lower"));
  c.policy.upper = to_double(need(d, "gamma_upper"));
  c.policy.rng_seed = to_int<std::uint64_t>(need(d, "rng_seed"));
  if (const auto pinned = need(d, "pinned_gamma"); pinned != "none") {
    c.policy.pinned_gamma = to_double(pinned);
  }
  if (const auto boost = need(d, "boost"); boost != "none") {
    c.boost = BoostConfig{parse_boost_variant(boost), to_int<std::size_t>(need(d, "boost_j")),
                          to_double(need(d, "alpha_add"))};
  }
  c.timing_repeats = to_int<std::size_t>(need(d, "timing_repeats"));
  c.inject_at_step = to_int<std::size_t>(need(d, "inject_at_step"));
  c.epsilon = to_double(need(d, "epsilon"));
  c.max_steps = to_int<std::size_t>(need(d, "max_steps"));
  c.multi_attack = need(d, "multi_attack") == "same" ? MultiAttack::SameStep : MultiAttack::CarryOver;
  c.attack_seed = to_int<std::uint64_t>(need(d, "attack_seed"));
  return c;
}

}  // namespace rglsa
