#pragma once

#include <numbers>

namespace lrsim {

inline constexpr double kPi = std::numbers::pi;
/// Polarization settings and polarization-type hidden variables repeat every pi.
inline constexpr double kPolarizationPeriod = kPi;
/// Phase differences repeat every 2*pi.
inline constexpr double kPhasePeriod = 2.0 * kPi;

/// Maps x into [0, period). Idempotent on values already in range.
double wrap(double x, double period);

/// cos^2(x) evaluated as (1 + cos 2x) / 2, which is exactly 0 at x = pi/2.
double cos_sq(double x);
/// sin^2(x) evaluated as (1 - cos 2x) / 2, exactly 0 at x = 0.
double sin_sq(double x);

/// An analyzer, polarizer or modulator setting, in radians.
class Angle {
 public:
  constexpr Angle() = default;
  constexpr explicit Angle(double radians) : rad_(radians) {}

  constexpr double rad() const { return rad_; }

  /// Canonical representative in [0, period).
  Angle wrapped(double period) const { return Angle(wrap(rad_, period)); }
  Angle polarization() const { return wrapped(kPolarizationPeriod); }
  Angle phase() const { return wrapped(kPhasePeriod); }

  friend constexpr Angle operator+(Angle x, Angle y) { return Angle(x.rad_ + y.rad_); }
  friend constexpr Angle operator-(Angle x, Angle y) { return Angle(x.rad_ - y.rad_); }
  friend constexpr Angle operator*(double k, Angle x) { return Angle(k * x.rad_); }
  friend constexpr bool operator==(Angle, Angle) = default;

 private:
  double rad_ = 0.0;
};

constexpr Angle radians(double x) { return Angle(x); }

}  // namespace lrsim
