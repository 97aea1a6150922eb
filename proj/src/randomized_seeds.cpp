#include "rglsa/randomized_seeds.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rglsa/sequence_core.hpp"

namespace rglsa {

std::string_view to_string(GammaMode mode) {
  switch (mode) {
    case GammaMode::Deterministic: return "deterministic";
    case GammaMode::FixedPerRun: return "fixed";
    case GammaMode::RedrawnPerIndex: return "redrawn";
  }
  return "unknown";
}

GammaMode parse_gamma_mode(std::string_view text) {
  if (text == "deterministic") return GammaMode::Deterministic;
  if (text == "fixed") return GammaMode::FixedPerRun;
  if (text == "redrawn") return GammaMode::RedrawnPerIndex;
  throw std::invalid_argument("unknown gamma mode '" + std::string(text) + "'");
}

void GammaPolicy::validate() const {
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0)) {
    throw std::invalid_argument("gamma bounds must satisfy 0 <= lower < upper <= 1");
  }
  if (pinned_gamma && !(*pinned_gamma > 0.0 && *pinned_gamma <= 1.0)) {
    throw std::invalid_argument("pinned gamma must lie in (0, 1]");
  }
}

double draw_gamma(const GammaPolicy& policy, SeedStream& rng) {
  if (policy.mode == GammaMode::Deterministic) return 1.0;
  const double width = policy.upper - policy.lower;
  for (;;) {
    // upper - u * width with u in [0, 1) covers (lower, upper]; rounding can
    // still land on lower, which is resampled.
    const double gamma = policy.upper - rng.uniform() * width;
    if (gamma > policy.lower && gamma > 0.0) return gamma;
  }
}

std::vector<Magnitude> rglsa_fib(std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("rglsa_fib: alpha must be > 0");
  const auto scale = Magnitude::from_linear(alpha);
  std::vector<Magnitude> a;
  a.reserve(n + 1);
  a.push_back(Magnitude::zero());
  if (n >= 1) a.push_back(Magnitude::from_linear(1.0));
  for (std::size_t k = 2; k <= n; ++k) a.push_back(scale * (a[k - 1] + a[k - 2]));
  return a;
}

namespace {

Magnitude lucas_term(const std::vector<Magnitude>& a, std::size_t k, double alpha) {
  return Magnitude::from_linear(alpha) * (a[k - 1] + a[k + 1]);
}

}  // namespace

SeedTrajectory rglsa_lucas_trajectory(std::size_t n, const GammaPolicy& policy) {
  if (n == 0) throw std::invalid_argument("rglsa_lucas_trajectory: n must be >= 1");
  policy.validate();

  SeedTrajectory traj;
  traj.n = n;
  traj.policy = policy;
  traj.lucas.reserve(n + 1);
  traj.lucas.push_back(Magnitude::from_linear(2.0));
  traj.lucas.push_back(Magnitude::from_linear(1.0));

  SeedStream rng(policy.rng_seed);
  switch (policy.mode) {
    case GammaMode::Deterministic:
    case GammaMode::FixedPerRun: {
      double alpha = 1.0;
      if (policy.mode == GammaMode::FixedPerRun) {
        const double gamma = policy.pinned_gamma ? *policy.pinned_gamma : draw_gamma(policy, rng);
        traj.gammas.push_back(gamma);
        alpha = 1.0 / gamma;
      }
      traj.fib = rglsa_fib(n + 1, alpha);
      for (std::size_t k = 2; k <= n; ++k) traj.lucas.push_back(lucas_term(traj.fib, k, alpha));
      break;
    }
    case GammaMode::RedrawnPerIndex: {
      // Each index reruns the whole auxiliary recurrence under its own draw.
      for (std::size_t k = 2; k <= n; ++k) {
        const double gamma = draw_gamma(policy, rng);
        traj.gammas.push_back(gamma);
        const double alpha = 1.0 / gamma;
        auto a = rglsa_fib(k + 1, alpha);
        traj.lucas.push_back(lucas_term(a, k, alpha));
        if (k == n) traj.fib = std::move(a);
      }
      if (n == 1) {
        const double gamma = draw_gamma(policy, rng);
        traj.gammas.push_back(gamma);
        traj.fib = rglsa_fib(2, 1.0 / gamma);
      }
      break;
    }
  }
  return traj;
}

namespace {

// log(phi^k + psi^k) and log(phi^k - psi^k) without overflow:
// phi^k (1 +/- (psi/phi)^k) with psi/phi = -1/phi^2.
double log_binet_sum(std::size_t k, bool plus) {
  using G = GoldenConstants<double>;
  const double kk = static_cast<double>(k);
  const double q = std::pow(G::psi / G::phi, kk);
  return kk * std::log(G::phi) + std::log1p(plus ? q : -q);
}

}  // namespace

SeedTrajectory closed_form_trajectory(std::size_t n, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("closed_form_trajectory: gamma must lie in (0, 1]");
  }
  using G = GoldenConstants<double>;
  const double log_gamma = std::log(gamma);

  SeedTrajectory traj;
  traj.n = n;
  traj.policy = GammaPolicy::pinned(gamma);
  traj.gammas = {gamma};
  traj.closed_form = true;
  traj.lucas.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    traj.lucas.push_back(Magnitude::from_log(log_gamma + log_binet_sum(k, true)));
  }
  traj.fib.reserve(n + 2);
  traj.fib.push_back(Magnitude::zero());
  for (std::size_t k = 1; k <= n + 1; ++k) {
    traj.fib.push_back(
        Magnitude::from_log(log_gamma + log_binet_sum(k, false) - std::log(G::sqrt5)));
  }
  return traj;
}

namespace {

// b_k = a_k / alpha^{k-1} satisfies b_k = b_{k-1} + b_{k-2} / alpha with
// b_0 = 0, b_1 = 1, and stays below F_k for alpha >= 1.
[[gnu::noinline]] double scaled_fib_naive(std::size_t k, double inv_alpha) {
  if (k < 2) return static_cast<double>(k);
  return scaled_fib_naive(k - 1, inv_alpha) + inv_alpha * scaled_fib_naive(k - 2, inv_alpha);
}

}  // namespace

TimedMagnitude naive_lucas_timed(std::size_t n, double alpha) {
  if (n > kNaiveMaxIndex) {
    throw std::invalid_argument("naive_lucas_timed: n = " + std::to_string(n) +
                                " exceeds the limit of " + std::to_string(kNaiveMaxIndex));
  }
  if (!(alpha >= 1.0)) throw std::invalid_argument("naive_lucas_timed: alpha must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  TimedMagnitude out;
  if (n == 0) {
    out.value = Magnitude::from_linear(2.0);
  } else if (n == 1) {
    out.value = Magnitude::from_linear(1.0);
  } else {
    const double inv_alpha = 1.0 / alpha;
    const double b_lo = scaled_fib_naive(n - 1, inv_alpha);
    const double b_hi = scaled_fib_naive(n + 1, inv_alpha);
    // L_n = alpha * (a_{n-1} + a_{n+1}) = alpha^{n-1} * (b_{n-1} + alpha^2 * b_{n+1})
    const double log_alpha = std::log(alpha);
    const auto sum = Magnitude::from_linear(b_lo) +
                     Magnitude::from_log(2.0 * log_alpha + std::log(b_hi));
    out.value = Magnitude::from_log(static_cast<double>(n - 1) * log_alpha) * sum;
  }
  out.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace rglsa
