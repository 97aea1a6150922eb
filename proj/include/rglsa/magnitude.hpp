#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace rglsa {

/// Nonnegative real held as its natural logarithm.
///
/// Seed counts grow like (alpha * phi)^n and leave the range of a double
/// after a few hundred terms; keeping the log lets sums, products and ratios
/// stay finite for any index the simulator uses.
class Magnitude {
 public:
  constexpr Magnitude() = default;

  static constexpr Magnitude zero() { return Magnitude{}; }

  static Magnitude from_log(double log_value) {
    Magnitude m;
    m.log_value_ = log_value;
    m.is_zero_ = false;
    return m;
  }

  /// `value` must be >= 0.
  static Magnitude from_linear(double value) {
    if (value == 0.0) return zero();
    return from_log(std::log(value));
  }

  constexpr bool is_zero() const { return is_zero_; }

  /// Natural log; -inf for zero.
  double log_value() const {
    return is_zero_ ? -std::numeric_limits<double>::infinity() : log_value_;
  }

  /// Linear value; +inf when it does not fit in a double.
  double to_linear() const { return is_zero_ ? 0.0 : std::exp(log_value_); }

  bool is_finite() const { return is_zero_ || std::isfinite(log_value_); }

  friend Magnitude operator+(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero_) return b;
    if (b.is_zero_) return a;
    const double hi = a.log_value_ > b.log_value_ ? a.log_value_ : b.log_value_;
    const double lo = a.log_value_ > b.log_value_ ? b.log_value_ : a.log_value_;
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero_ || b.is_zero_) return zero();
    return from_log(a.log_value_ + b.log_value_);
  }

  Magnitude& operator+=(const Magnitude& o) { return *this = *this + o; }
  Magnitude& operator*=(const Magnitude& o) { return *this = *this * o; }

  /// max(a - b, 0).
  friend Magnitude difference(const Magnitude& a, const Magnitude& b) {
    if (b.is_zero_) return a;
    if (a.is_zero_ || a.log_value_ <= b.log_value_) return zero();
    return from_log(a.log_value_ + std::log1p(-std::exp(b.log_value_ - a.log_value_)));
  }

  /// a / b as a plain double; b must be nonzero. May be > 1.
  friend double ratio(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero_) return 0.0;
    return std::exp(a.log_value_ - b.log_value_);
  }

  friend std::partial_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero_ || b.is_zero_) {
      return static_cast<int>(!a.is_zero_) <=> static_cast<int>(!b.is_zero_);
    }
    return a.log_value_ <=> b.log_value_;
  }

  friend bool operator==(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero_ || b.is_zero_) return a.is_zero_ == b.is_zero_;
    return a.log_value_ == b.log_value_;
  }

 private:
  double log_value_ = 0.0;
  bool is_zero_ = true;
};

}  // namespace rglsa
