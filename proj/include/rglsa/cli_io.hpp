#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rglsa/dataset.hpp"
#include "rglsa/propagation.hpp"

namespace rglsa {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 2;
inline constexpr int kIoFailure = 3;
}  // namespace exit_code

/// Unusable user input (flags or interactive answers).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CliMode { All, Growth, Probability, TailBoost, Timing, Sim };

struct CliOptions {
  std::optional<std::size_t> n;
  std::optional<std::size_t> extra_vms_j;
  CliMode mode = CliMode::All;
  /// deterministic, fixed, redrawn or closed.
  std::string gamma_mode = "redrawn";
  std::uint64_t rng_seed = 42;
  std::optional<double> gamma;
  /// none, ratio or additive.
  std::string boost = "ratio";
  double alpha_add = 0.25;
  std::vector<std::size_t> n_values;
  double epsilon = 1e-3;
  std::size_t max_steps = 1000;
  std::size_t inject_at_step = 2;
  std::size_t timing_repeats = 3;
  bool interactive = false;
  bool stamp = false;
  bool plot_script = false;
  std::string out_dir;
};

/// Parses argv with CLI11. `seed_env` stands in for $RGLSA_SEED and is used
/// when --seed is absent. Throws InputError on bad flags; returns nullopt
/// after printing help.
std::optional<CliOptions> parse_cli(int argc, const char* const* argv, std::ostream& out,
                                    std::optional<std::string> seed_env = std::nullopt);

/// Asks for n, then j. A non-integer answer re-prompts up to three times;
/// end of input or a fourth bad answer throws InputError.
std::pair<std::size_t, std::size_t> prompt_inputs(std::istream& in, std::ostream& out);

/// One `Total time in milliseconds:<t>` line per dataset row, t truncated
/// to whole milliseconds.
void emit_timing_lines(const Dataset& timing, std::ostream& out);

/// Scientific notation with an uppercase E below 1e-3, plain decimal
/// otherwise; always at least one fractional digit (1 -> "1.0").
std::string format_probability(double value);

void emit_probability_lines(std::span<const double> values, std::ostream& out);
void emit_probability_lines(const TransmissionProfile& profile, std::ostream& out);

/// Runs the tool end to end. Returns an exit_code value.
int run_cli(const CliOptions& options, std::istream& in, std::ostream& out, std::ostream& err);

/// argv front end for the executable: parse_cli + run_cli with $RGLSA_SEED.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace rglsa
