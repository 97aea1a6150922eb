#include "rglsa/cli_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "rglsa/experiments.hpp"

namespace rglsa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  text = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

constexpr int kMaxReprompts = 3;

std::size_t ask_count(std::istream& in, std::ostream& out, std::string_view prompt,
                      std::string_view what) {
  for (int attempt = 0; attempt <= kMaxReprompts; ++attempt) {
    out << prompt << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      throw InputError("input ended before " + std::string(what) + " was given");
    }
    if (auto v = parse_count(line)) return *v;
    out << "Not a nonnegative integer: '" << trim(line) << "'\n";
  }
  throw InputError("no valid " + std::string(what) + " after " + std::to_string(kMaxReprompts) +
                   " re-prompts");
}

}  // namespace

std::pair<std::size_t, std::size_t> prompt_inputs(std::istream& in, std::ostream& out) {
  const std::size_t n = ask_count(in, out, "Enter the value of n: ", "n");
  const std::size_t j =
      ask_count(in, out, "Enter the number of additional virtual machines\n", "the number of additional VMs");
  return {n, j};
}

void emit_timing_lines(const Dataset& timing, std::ostream& out) {
  if (timing.rows() == 0) return;
  for (double ms : timing.column("elapsed_ms").values) {
    out << "Total time in milliseconds:" << static_cast<long long>(std::floor(ms)) << '\n';
  }
}

std::string format_probability(double value) {
  if (value == 0.0) return std::signbit(value) ? "-0.0" : "0.0";
  char buf[64];
  if (std::abs(value) < 1e-3) {
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
    std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
    const auto e = text.find('e');
    std::string mantissa(text.substr(0, e));
    if (mantissa.find('.') == std::string::npos) mantissa += ".0";
    int exponent = 0;
    const auto exp_text = text.substr(e + 1);
    std::from_chars(exp_text.data() + (exp_text.front() == '+' ? 1 : 0),
                    exp_text.data() + exp_text.size(), exponent);
    return mantissa + "E" + std::to_string(exponent);
  }
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  std::string text(buf, static_cast<std::size_t>(res.ptr - buf));
  if (text.find('.') == std::string::npos) text += ".0";
  return text;
}

void emit_probability_lines(std::span<const double> values, std::ostream& out) {
  for (double v : values) out << format_probability(v) << '\n';
}

void emit_probability_lines(const TransmissionProfile& profile, std::ostream& out) {
  emit_probability_lines(std::span<const double>(profile.probabilities), out);
}

namespace {

const std::map<std::string, CliMode>& mode_names() {
  static const std::map<std::string, CliMode> names = {
      {"all", CliMode::All},         {"growth", CliMode::Growth},
      {"probability", CliMode::Probability}, {"tailboost", CliMode::TailBoost},
      {"timing", CliMode::Timing},   {"sim", CliMode::Sim},
  };
  return names;
}

}  // namespace

std::optional<CliOptions> parse_cli(int argc, const char* const* argv, std::ostream& out,
                                    std::optional<std::string> seed_env) {
  CliOptions o;
  CLI::App app{"Randomized Lucas seed growth, transmission probabilities and tail boosting"};
  app.name("rglsa");

  std::size_t n = 0;
  std::size_t j = 0;
  std::string mode = "all";
  std::uint64_t seed = 0;
  double gamma = 0.0;

  auto* n_opt = app.add_option("--n", n, "Number of VMs in the cloud");
  auto* j_opt = app.add_option("--extra-vms", j, "Dummy VMs injected after the attack starts");
  app.add_option("--mode", mode, "all, growth, probability, tailboost, timing or sim")
      ->check(CLI::IsMember({"all", "growth", "probability", "tailboost", "timing", "sim"}));
  app.add_option("--gamma-mode", o.gamma_mode, "deterministic, fixed, redrawn or closed")
      ->check(CLI::IsMember({"deterministic", "fixed", "redrawn", "closed"}));
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (falls back to $RGLSA_SEED)");
  auto* gamma_opt = app.add_option("--gamma", gamma, "Pin gamma for fixed or closed mode");
  app.add_option("--boost", o.boost, "none, ratio or additive")
      ->check(CLI::IsMember({"none", "ratio", "additive"}));
  app.add_option("--alpha-add", o.alpha_add, "Additive boost term in (0, 0.5)");
  app.add_option("--n-values", o.n_values, "Explicit n list for dataset experiments")->delimiter(',');
  app.add_option("--epsilon", o.epsilon, "Nullification threshold for sim");
  app.add_option("--max-steps", o.max_steps, "Step limit for sim");
  app.add_option("--inject-at", o.inject_at_step, "Step at which dummy VMs appear in sim");
  app.add_option("--repeats", o.timing_repeats, "Timing repeats (median is reported)");
  app.add_option("--out", o.out_dir, "Directory for dataset files");
  app.add_flag("--interactive", o.interactive, "Prompt for n and the number of extra VMs");
  app.add_flag("--stamp", o.stamp, "Record the wall-clock time in dataset headers");
  app.add_flag("--plot-script", o.plot_script, "Also write a gnuplot script next to the datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  if (*n_opt) o.n = n;
  if (*j_opt) o.extra_vms_j = j;
  o.mode = mode_names().at(mode);
  if (*gamma_opt) o.gamma = gamma;
  if (*seed_opt) {
    o.rng_seed = seed;
  } else if (seed_env) {
    std::uint64_t v = 0;
    const auto& s = *seed_env;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw InputError("RGLSA_SEED is not an unsigned integer: '" + s + "'");
    }
    o.rng_seed = v;
  }
  return o;
}

namespace {

struct Resolved {
  std::size_t n = 0;
  std::size_t j = 0;
  ExperimentConfig base;
};

Resolved resolve(const CliOptions& o, std::istream& in, std::ostream& out) {
  Resolved r;
  if (o.interactive) {
    std::tie(r.n, r.j) = prompt_inputs(in, out);
  } else {
    if (!o.n || !o.extra_vms_j) {
      throw InputError("non-interactive runs need both --n and --extra-vms (or use --interactive)");
    }
    r.n = *o.n;
    r.j = *o.extra_vms_j;
  }
  if (r.n == 0) throw InputError("n must be >= 1");

  ExperimentConfig& c = r.base;
  c.j = r.j;
  if (o.gamma_mode == "closed") {
    c.seed_model = SeedModel::ClosedForm;
    c.policy.mode = GammaMode::FixedPerRun;
  } else {
    c.policy.mode = parse_gamma_mode(o.gamma_mode);
  }
  c.policy.rng_seed = o.rng_seed;
  if (o.gamma) {
    if (c.policy.mode != GammaMode::FixedPerRun) {
      throw InputError("--gamma only applies to --gamma-mode fixed or closed");
    }
    c.policy.pinned_gamma = *o.gamma;
  }
  if (o.boost != "none") {
    c.boost = BoostConfig{parse_boost_variant(o.boost), std::max<std::size_t>(r.j, 1), o.alpha_add};
  }
  c.timing_repeats = o.timing_repeats;
  c.epsilon = o.epsilon;
  c.max_steps = o.max_steps;
  c.inject_at_step = o.inject_at_step;
  c.attack_seed = o.rng_seed;
  c.policy.validate();
  return r;
}

std::vector<std::size_t> range_1_to(std::size_t last) {
  std::vector<std::size_t> v(last);
  for (std::size_t k = 0; k < last; ++k) v[k] = k + 1;
  return v;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Outputs {
 public:
  Outputs(const CliOptions& o, std::ostream& out) : options_(o), out_(out) {
    if (!o.out_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(o.out_dir, ec);
      if (ec) throw IoError("cannot create output directory '" + o.out_dir + "'");
    }
  }

  /// Writes to <out>/<kind>.dat, or prints the dataset when `echo` is set
  /// and no directory was given.
  void save(Dataset d, bool echo) {
    if (options_.stamp) d.timestamp = utc_now();
    if (!options_.out_dir.empty()) {
      const auto path = std::filesystem::path(options_.out_dir) / (d.kind + ".dat");
      write_dataset(d, path);
      written_.push_back(d);
    } else if (echo) {
      out_ << render_dataset(d);
    }
  }

  void write_plot_script() const {
    if (!options_.plot_script || options_.out_dir.empty() || written_.empty()) return;
    std::ostringstream gp;
    gp << "# gnuplot script for the datasets in this directory\n";
    for (const Dataset& d : written_) {
      const std::string file = d.kind + ".dat";
      gp << "set title '" << d.kind << "'\n";
      if (d.kind == "growth") {
        gp << "set xlabel 'n'\nset ylabel 'log L_n'\nplot '" << file << "' using 1:2 with linespoints title 'log L_n'\n";
      } else if (d.kind == "probability") {
        gp << "set xlabel 'i'\nset ylabel 'L_i/L_n'\nplot '" << file << "' using 2:3 with points title 'p_i'\n";
      } else if (d.kind == "tailboost") {
        gp << "set xlabel 'i'\nset ylabel 'probability'\nplot '" << file
           << "' using 2:3 with points title 'plain', '' using 2:4 with points title 'boosted'\n";
      } else if (d.kind == "timing") {
        gp << "set xlabel 'n'\nset ylabel 'ms'\nset logscale y\nplot '" << file
           << "' using 1:2 with linespoints title 'elapsed'\nunset logscale y\n";
      } else if (d.kind == "sim") {
        gp << "set xlabel 'step'\nset ylabel 'infected'\nplot '" << file
           << "' using 1:5 with steps title 'infected VMs'\n";
      }
      gp << "pause -1\n";
    }
    const auto path = std::filesystem::path(options_.out_dir) / "plot.gp";
    std::ofstream f(path);
    if (!(f << gp.str())) throw IoError("cannot write '" + path.string() + "'");
  }

 private:
  const CliOptions& options_;
  std::ostream& out_;
  std::vector<Dataset> written_;
};

// The console probability listing: L_0 and L_1 are reported as 1.0 by
// convention, then p_2..p_N over the cloud of n + j VMs.
std::vector<double> console_probabilities(const Resolved& r) {
  const std::size_t total = r.n + r.j;
  std::vector<double> values = {1.0, 1.0};
  if (total < 2) return values;
  const auto traj = make_trajectory(r.base, total);
  TransmissionProfile profile;
  if (r.base.boost && r.j > 0 && r.n > 0 && r.j < total) {
    BoostConfig boost = *r.base.boost;
    boost.j = r.j;
    profile = boosted_profile(traj, boost);
  } else {
    profile = transmission_profile(traj);
  }
  values.insert(values.end(), profile.probabilities.begin() + 1, profile.probabilities.end());
  return values;
}

int run(const CliOptions& o, std::istream& in, std::ostream& out) {
  const Resolved r = resolve(o, in, out);
  Outputs outputs(o, out);
  const bool all = o.mode == CliMode::All;
  const auto n_values_or = [&](std::vector<std::size_t> fallback) {
    return o.n_values.empty() ? fallback : o.n_values;
  };

  if (all || o.mode == CliMode::Timing) {
    if (o.mode == CliMode::Timing && r.n > kNaiveMaxIndex) {
      throw InputError("timing runs are limited to n <= " + std::to_string(kNaiveMaxIndex));
    }
    ExperimentConfig c = r.base;
    c.kind = ExperimentKind::Timing;
    c.n_values = range_1_to(std::min(r.n, kNaiveMaxIndex));
    const Dataset d = exp_timing(c);
    emit_timing_lines(d, out);
    outputs.save(d, false);
  }
  if (all || o.mode == CliMode::Probability) {
    emit_probability_lines(console_probabilities(r), out);
    ExperimentConfig c = r.base;
    c.kind = ExperimentKind::Probability;
    c.n_values = n_values_or({r.n});
    outputs.save(exp_probability(c), false);
  }
  if (all || o.mode == CliMode::Growth) {
    ExperimentConfig c = r.base;
    c.kind = ExperimentKind::Growth;
    c.n_values = n_values_or(range_1_to(r.n));
    outputs.save(exp_growth(c), !all);
  }
  if ((all && r.j > 0) || o.mode == CliMode::TailBoost) {
    ExperimentConfig c = r.base;
    c.kind = ExperimentKind::TailBoost;
    c.n_values = n_values_or({r.n});
    outputs.save(exp_tailboost(c), !all);
  }
  if (all || o.mode == CliMode::Sim) {
    ExperimentConfig c = r.base;
    c.kind = ExperimentKind::FullSim;
    c.n_values = {r.n};
    outputs.save(exp_fullsim(c), !all);
  }
  outputs.write_plot_script();
  return exit_code::kOk;
}

}  // namespace

int run_cli(const CliOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    return run(options, in, out);
  } catch (const IoError& e) {
    err << "rglsa: " << e.what() << '\n';
    return exit_code::kIoFailure;
  } catch (const InputError& e) {
    err << "rglsa: " << e.what() << '\n';
    return exit_code::kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "rglsa: " << e.what() << '\n';
    return exit_code::kBadInput;
  } catch (const std::out_of_range& e) {
    err << "rglsa: " << e.what() << '\n';
    return exit_code::kBadInput;
  }
}

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err) {
  std::optional<std::string> seed_env;
  if (const char* s = std::getenv("RGLSA_SEED")) seed_env = s;
  std::optional<CliOptions> options;
  try {
    options = parse_cli(argc, argv, out, seed_env);
  } catch (const InputError& e) {
    err << "rglsa: " << e.what() << '\n';
    return exit_code::kBadInput;
  }
  if (!options) return exit_code::kOk;
  return run_cli(*options, in, out, err);
}

}  // namespace rglsa
