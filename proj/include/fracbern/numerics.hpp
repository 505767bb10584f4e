#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace fracbern {

/// Arbitrary-precision real; precision is set per value at construction.
using BigReal = boost::multiprecision::mpfr_float;

/// Sets the default BigReal construction precision for the enclosing scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10)
      : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits10);
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Storage/reporting precision of a polynomial or expansion.
struct PrecisionMode {
  bool extended = false;
  unsigned digits = 0;  // decimal digits, meaningful when extended

  static PrecisionMode Double() { return {false, 0}; }
  static PrecisionMode Extended(unsigned d = 50) { return {true, d}; }
};

/// Degree ceiling for double-precision power-basis expansions (N_CANCEL).
inline constexpr int kCancelDegreeLimit = 25;

/// Artifact-wide tolerance constants.
struct Tolerances {
  static constexpr double partition_of_unity = 1e-14;
  static constexpr double linear_reproduction = 1e-14;
  static constexpr double expansion_consistency_double = 1e-10;
  static constexpr double expansion_consistency_extended = 1e-30;
  static constexpr double backend_agreement = 1e-9;
  static constexpr double integer_order_reduction = 1e-9;
  static constexpr double inversion_identity = 1e-8;
};

// The alternating sums behind the power-basis expansion lose digits in
// proportion to the degree; raise the working precision with n so that the
// requested output digits survive. Calibrated against a high-precision
// reference: residual noise scales like 10^(0.477 n - 2 d).
inline unsigned working_digits(int degree, unsigned requested) {
  unsigned needed = 32u + static_cast<unsigned>((degree + 3) / 4);
  return std::max(std::max(requested, 16u), needed);
}

/// Thrown when a Double-mode expansion would be cancellation-dominated.
class CancellationOverflow : public std::runtime_error {
 public:
  explicit CancellationOverflow(int degree)
      : std::runtime_error("cancellation overflow; use Extended (degree " +
                           std::to_string(degree) + " > " +
                           std::to_string(kCancelDegreeLimit) + ")") {}
};

/// Thrown when a series fails to meet its accuracy contract.
class AccuracyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Neumaier-compensated accumulation.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& v) {
    using std::abs;
    Real t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

// Gamma(a)/Gamma(b) for a > 0. b may be zero or negative: poles of Gamma(b)
// yield 0, otherwise the argument is lifted into (0,inf) by the recurrence
// Gamma(b) = Gamma(b+j)/(b (b+1) ... (b+j-1)).
template <class Real>
Real gamma_ratio(Real a, Real b) {
  using std::exp;
  using std::floor;
  using std::lgamma;
  if (b > 0) return exp(lgamma(a) - lgamma(b));
  if (b == floor(b)) return Real(0);
  Real lift(1);
  while (b <= 0) {
    lift *= b;
    b += 1;
  }
  return lift * exp(lgamma(a) - lgamma(b));
}

}  // namespace fracbern
