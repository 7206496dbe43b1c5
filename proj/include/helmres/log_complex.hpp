// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "helmres/errors.hpp"

namespace helmres {

using Cx = std::complex<double>;

inline double wrap_phase(double phi) {
  if (phi > -M_PI && phi <= M_PI) return phi;
  phi = std::remainder(phi, 2.0 * M_PI);  // lands in [-pi, pi]
  if (phi <= -M_PI) phi += 2.0 * M_PI;
  return phi;
}

// A complex value stored as (log of magnitude, phase).  Keeps quantities such
// as exp(-theta*L/eps) exact in the exponent far beyond double range.  The
// phase is wrapped to (-pi, pi] after every multiplication.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  LogComplex() = default;
  LogComplex(double lm, double ph) : log_mag(lm), phase(wrap_phase(ph)) {}

  static LogComplex zero() { return LogComplex(); }
  static LogComplex one() { return LogComplex(0.0, 0.0); }

  static LogComplex from(Cx z) {
    if (z == Cx(0.0, 0.0)) return zero();
    return LogComplex(std::log(std::abs(z)), std::arg(z));
  }

  static LogComplex from_real(double x) {
    if (x == 0.0) return zero();
    return LogComplex(std::log(std::fabs(x)), x > 0.0 ? 0.0 : M_PI);
  }

  // exp(w) for complex w, without forming exp(Re w).
  static LogComplex from_exponent(Cx w) { return LogComplex(w.real(), w.imag()); }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0.0; }

  // Largest log magnitude convertible to double without overflow.
  static constexpr double kOverflowLog = 709.0;

  Cx to_complex() const {
    if (is_zero()) return Cx(0.0, 0.0);
    require(log_mag <= kOverflowLog, ErrorCode::Overflow,
            "LogComplex magnitude exceeds double range in to_complex");
    return std::exp(log_mag) * Cx(std::cos(phase), std::sin(phase));
  }

  // Value of (*this) * exp(-scale), used to read mantissas off a common scale.
  Cx mantissa_at(double scale) const {
    if (is_zero()) return Cx(0.0, 0.0);
    double d = log_mag - scale;
    if (d < -745.0) return Cx(0.0, 0.0);
    require(d <= kOverflowLog, ErrorCode::Overflow, "mantissa overflow");
    return std::exp(d) * Cx(std::cos(phase), std::sin(phase));
  }

  LogComplex conj() const { return LogComplex(log_mag, -phase); }
  LogComplex negate() const { return LogComplex(log_mag, phase + M_PI); }
  LogComplex pow(double p) const {
    if (is_zero()) return zero();
    return LogComplex(p * log_mag, p * phase);
  }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return LogComplex(a.log_mag + b.log_mag, a.phase + b.phase);
  }
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    require(!b.is_zero(), ErrorCode::InvalidArgument, "LogComplex division by zero");
    if (a.is_zero()) return zero();
    return LogComplex(a.log_mag - b.log_mag, a.phase - b.phase);
  }

  // Addition aligns the smaller operand against the larger one.  Fine for the
  // few-term sums used here; not a substitute for compensated summation.
  friend LogComplex operator+(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const LogComplex& big = (a.log_mag >= b.log_mag) ? a : b;
    const LogComplex& small = (a.log_mag >= b.log_mag) ? b : a;
    Cx m = Cx(1.0, 0.0) * Cx(std::cos(big.phase), std::sin(big.phase));
    m += small.mantissa_at(big.log_mag);
    if (m == Cx(0.0, 0.0)) return zero();
    return LogComplex(big.log_mag + std::log(std::abs(m)), std::arg(m));
  }
};

// Accumulates a sum of LogComplex terms against a running maximum exponent.
class LogAccumulator {
 public:
  void add(const LogComplex& t) {
    if (t.is_zero()) return;
    if (empty_) {
      scale_ = t.log_mag;
      sum_ = t.mantissa_at(scale_);
      empty_ = false;
      return;
    }
    if (t.log_mag > scale_ + 40.0) {
      // Rescale: the new term dwarfs everything accumulated so far.
      sum_ *= std::exp(scale_ - t.log_mag);
      scale_ = t.log_mag;
    }
    sum_ += t.mantissa_at(scale_);
  }

  LogComplex value() const {
    if (empty_ || sum_ == Cx(0.0, 0.0)) return LogComplex::zero();
    return LogComplex(scale_ + std::log(std::abs(sum_)), std::arg(sum_));
  }

 private:
  bool empty_ = true;
  double scale_ = 0.0;
  Cx sum_{0.0, 0.0};
};

// Sign and natural-log magnitude of a real quantity; the carrier for widths.
struct SignedLog {
  int sign = 0;           // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();

  double to_double() const {
    if (sign == 0) return 0.0;
    require(log_abs <= LogComplex::kOverflowLog, ErrorCode::Overflow,
            "SignedLog magnitude exceeds double range");
    return sign * std::exp(log_abs);
  }
};

}  // namespace helmres
