#pragma once

#include <optional>

#include "lrsim/angle.hpp"

namespace lrsim {

/// One pulse with vertical and horizontal field components.
///
/// Amplitudes are real and non-negative; the relative phase of the horizontal
/// component lives in `phase_diff`. A plane-polarized pulse additionally
/// records its polarization angle (measured from vertical) in `polarization`.
struct TwoComponentPulse {
  double amp_v = 0.0;
  double amp_h = 0.0;
  double phase_diff = 0.0;  ///< radians in [0, 2*pi)
  double frequency = 1.0;   ///< angular frequency, rad/s
  double emit_time = 0.0;   ///< seconds
  std::optional<double> polarization;

  double intensity() const { return amp_v * amp_v + amp_h * amp_h; }

  /// Equal-amplitude V+H pulse of unit intensity.
  static TwoComponentPulse balanced(double phase_diff, double emit_time = 0.0,
                                    double frequency = 1.0);
  /// Linearly polarized pulse at angle lambda from vertical.
  static TwoComponentPulse plane_polarized(Angle lambda, double intensity = 1.0,
                                           double emit_time = 0.0);

  /// Throws ConfigError on negative amplitudes, intensity above 1 or bad frequency.
  void validate() const;
};

struct ChannelIntensities {
  double plus = 0.0;
  double minus = 0.0;

  double total() const { return plus + minus; }
};

/// Adds the modulator's induced phase 2a (half-wave plate folded in).
TwoComponentPulse apply_modulator(const TwoComponentPulse& pulse, Angle two_a);

/// Wollaston prism fixed at 45 degrees: superposes the V and H projections.
///
/// Balanced input with phase difference 2a gives (cos^2 a, sin^2 a).
ChannelIntensities wollaston_project(const TwoComponentPulse& pulse);

/// Two-channel polarizer at `axis`, Malus law for plane-polarized input.
///
/// Accepts plane-polarized pulses (explicit polarization or a single nonzero
/// component) at any axis, and general two-component pulses only at 45
/// degrees, where it coincides with the prism. Anything else is a ConfigError.
ChannelIntensities polarizer_project(const TwoComponentPulse& pulse, Angle axis);

}  // namespace lrsim
