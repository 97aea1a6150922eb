#include "rglsa/sequence_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace rglsa {

namespace {

// (x_n, x_{n+1}) after n steps of x_{k+2} = x_{k+1} + x_k.
ExactInt iterate_pair(ExactInt first, ExactInt second, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    ExactInt next = first + second;
    first = std::move(second);
    second = std::move(next);
  }
  return first;
}

}  // namespace

ExactInt fib_iter(std::size_t n) { return iterate_pair(0, 1, n); }

ExactInt lucas_iter(std::size_t n) { return iterate_pair(2, 1, n); }

ExactInt lucas_from_fib(std::size_t n) {
  if (n == 0) throw std::domain_error("lucas_from_fib: n must be >= 1 (F_{-1} is undefined)");
  return fib_iter(n - 1) + fib_iter(n + 1);
}

bool verify_sum_of_squares(std::size_t n) {
  if (n == 0) throw std::domain_error("verify_sum_of_squares: n must be >= 1");
  ExactInt prev = 0;
  ExactInt cur = 1;  // F_1
  ExactInt sum = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    sum += cur * cur;
    ExactInt next = prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  // prev = F_n, cur = F_{n+1}
  return sum == prev * cur;
}

bool RecurrenceReport::all_passed() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const RecurrenceResidual& r) { return r.passed; });
}

bool RecurrenceReport::none_passed() const {
  return std::none_of(residuals.begin(), residuals.end(),
                      [](const RecurrenceResidual& r) { return r.passed; });
}

RecurrenceReport verify_recurrence(const ClosedFormEvaluator& closed_form, std::size_t n_max,
                                   double gamma, double tol, RecurrenceForm form) {
  if (n_max < 2) throw std::domain_error("verify_recurrence: n_max must be >= 2");

  RecurrenceReport report;
  report.form = form;
  report.gamma = gamma;
  report.tolerance = tol;
  report.residuals.reserve(n_max - 1);

  const double scale = form == RecurrenceForm::Plain ? 1.0 : 1.0 / gamma;
  double f_prev2 = closed_form(0, gamma);
  double f_prev1 = closed_form(1, gamma);
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double f = closed_form(n, gamma);
    RecurrenceResidual r;
    r.n = n;
    r.value = f;
    r.residual = std::abs(f - scale * (f_prev1 + f_prev2));
    r.relative = f != 0.0 ? r.residual / std::abs(f) : r.residual;
    r.passed = r.residual <= tol * std::abs(f);
    report.residuals.push_back(r);
    f_prev2 = f_prev1;
    f_prev1 = f;
  }
  return report;
}

}  // namespace rglsa
