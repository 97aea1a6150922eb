#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rglsa {

/// Exact nonnegative integer for the deterministic Fibonacci/Lucas tables.
using ExactInt = boost::multiprecision::cpp_int;

template <std::floating_point Scalar = double>
struct GoldenConstants {
  static inline const Scalar sqrt5 = std::sqrt(Scalar(5));
  static inline const Scalar phi = (Scalar(1) + sqrt5) / Scalar(2);
  static inline const Scalar psi = (Scalar(1) - sqrt5) / Scalar(2);
};

// Deterministic sequences, exact.

/// F_n with F_0 = 0, F_1 = 1.
ExactInt fib_iter(std::size_t n);

/// Lucas numbers 2, 1, 3, 4, 7, 11, ...
ExactInt lucas_iter(std::size_t n);

/// F_{n-1} + F_{n+1}. Throws std::domain_error for n == 0.
ExactInt lucas_from_fib(std::size_t n);

/// True iff sum_{i=1..n} F_i^2 == F_n * F_{n+1}, checked exactly.
/// Throws std::domain_error for n == 0.
bool verify_sum_of_squares(std::size_t n);

// Closed forms.

/// Binet form (phi^n - psi^n) / sqrt5. Full double precision up to n ~ 70.
template <std::floating_point Scalar = double>
Scalar fib_binet(std::size_t n) {
  using G = GoldenConstants<Scalar>;
  const auto k = static_cast<Scalar>(n);
  return (std::pow(G::phi, k) - std::pow(G::psi, k)) / G::sqrt5;
}

/// gamma * (phi^n + psi^n); gamma = 1 gives the Lucas numbers.
template <std::floating_point Scalar = double>
Scalar lucas_closed_scaled(std::size_t n, Scalar gamma) {
  using G = GoldenConstants<Scalar>;
  const auto k = static_cast<Scalar>(n);
  return gamma * (std::pow(G::phi, k) + std::pow(G::psi, k));
}

/// gamma * fib_binet(n); starts a_0 = 0, a_1 = gamma.
template <std::floating_point Scalar = double>
Scalar fib_closed_scaled(std::size_t n, Scalar gamma) {
  return gamma * fib_binet<Scalar>(n);
}

// Recurrence verification.

/// A closed form f(n, gamma) under test.
using ClosedFormEvaluator = std::function<double(std::size_t, double)>;

enum class RecurrenceForm {
  /// f(n) = f(n-1) + f(n-2)
  Plain,
  /// f(n) = (1/gamma) * (f(n-1) + f(n-2))
  InverseGammaScaled,
};

struct RecurrenceResidual {
  std::size_t n = 0;
  double value = 0.0;
  /// |f(n) - rhs(n)|
  double residual = 0.0;
  /// residual / |f(n)|
  double relative = 0.0;
  bool passed = false;
};

struct RecurrenceReport {
  RecurrenceForm form = RecurrenceForm::Plain;
  double gamma = 1.0;
  double tolerance = 0.0;
  std::vector<RecurrenceResidual> residuals;  // n = 2..n_max

  bool all_passed() const;
  bool none_passed() const;
};

/// Checks f against the chosen recurrence for 2 <= n <= n_max with a
/// relative tolerance. Throws std::domain_error when n_max < 2.
RecurrenceReport verify_recurrence(const ClosedFormEvaluator& closed_form, std::size_t n_max,
                                   double gamma, double tol, RecurrenceForm form);

inline RecurrenceReport verify_plain_recurrence(const ClosedFormEvaluator& closed_form,
                                                std::size_t n_max, double gamma, double tol) {
  return verify_recurrence(closed_form, n_max, gamma, tol, RecurrenceForm::Plain);
}

}  // namespace rglsa
