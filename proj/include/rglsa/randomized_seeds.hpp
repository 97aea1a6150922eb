#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rglsa/magnitude.hpp"

namespace rglsa {

enum class GammaMode {
  /// gamma = 1, so the recurrences collapse to the classical sequences.
  Deterministic,
  /// One gamma for the whole trajectory.
  FixedPerRun,
  /// A fresh gamma for every index k >= 2.
  RedrawnPerIndex,
};

std::string_view to_string(GammaMode mode);
/// Accepts "deterministic", "fixed", "redrawn". Throws std::invalid_argument.
GammaMode parse_gamma_mode(std::string_view text);

struct GammaPolicy {
  GammaMode mode = GammaMode::FixedPerRun;
  double lower = 0.0;  // exclusive
  double upper = 0.5;  // inclusive
  std::uint64_t rng_seed = 0;
  /// FixedPerRun only: use this gamma instead of drawing one.
  std::optional<double> pinned_gamma;

  static GammaPolicy deterministic() { return {GammaMode::Deterministic, 0.0, 0.5, 0, std::nullopt}; }
  static GammaPolicy fixed(std::uint64_t seed) { return {GammaMode::FixedPerRun, 0.0, 0.5, seed, std::nullopt}; }
  static GammaPolicy redrawn(std::uint64_t seed) {
    return {GammaMode::RedrawnPerIndex, 0.0, 0.5, seed, std::nullopt};
  }
  static GammaPolicy pinned(double gamma) {
    return {GammaMode::FixedPerRun, 0.0, 0.5, 0, gamma};
  }

  /// Throws std::invalid_argument unless 0 <= lower < upper <= 1 and any
  /// pinned gamma lies in (0, 1].
  void validate() const;

  bool operator==(const GammaPolicy&) const = default;
};

/// Seeded 64-bit stream. Only the raw mt19937_64 output is used so values are
/// identical across standard libraries.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Gamma on (lower, upper]; 1.0 under Deterministic.
double draw_gamma(const GammaPolicy& policy, SeedStream& rng);

struct SeedTrajectory {
  std::size_t n = 0;
  std::vector<Magnitude> lucas;  // L_0..L_n
  /// Auxiliary a_0..a_{n+1}. Under RedrawnPerIndex this is the sequence
  /// produced by the last gamma draw.
  std::vector<Magnitude> fib;
  std::vector<double> gammas;
  GammaPolicy policy;
  /// Built from the gamma-scaled closed form rather than the algorithm.
  bool closed_form = false;

  const Magnitude& at(std::size_t k) const { return lucas.at(k); }
};

/// a_0 = 0, a_1 = 1, a_k = alpha * (a_{k-1} + a_{k-2}) for k = 2..n.
/// Throws std::invalid_argument when alpha <= 0.
std::vector<Magnitude> rglsa_fib(std::size_t n, double alpha);

/// L_0 = 2, L_1 = 1, L_k = alpha_k * (a_{k-1} + a_{k+1}) for k >= 2.
/// Throws std::invalid_argument for n == 0 or an invalid policy.
SeedTrajectory rglsa_lucas_trajectory(std::size_t n, const GammaPolicy& policy);

/// L_k = gamma * Lucas_k, so every ratio L_i / L_n is gamma-free. The
/// randomized range is (0, 0.5]; gamma = 1 gives the classical table.
/// Throws std::invalid_argument unless gamma in (0, 1].
SeedTrajectory closed_form_trajectory(std::size_t n, double gamma);

inline constexpr std::size_t kNaiveMaxIndex = 45;

struct TimedMagnitude {
  Magnitude value;
  double elapsed_ms = 0.0;
};

/// L_n through unmemoized binary recursion on the auxiliary sequence, timed
/// with a steady clock. Cost grows like phi^n. Throws std::invalid_argument
/// above kNaiveMaxIndex or for alpha < 1.
TimedMagnitude naive_lucas_timed(std::size_t n, double alpha);

}  // namespace rglsa
