#include "lrsim/optics.hpp"

#include <algorithm>
#include <cmath>

#include "lrsim/errors.hpp"

namespace lrsim {
namespace {

ChannelIntensities malus(double intensity, double lambda, double axis) {
  return {intensity * cos_sq(lambda - axis), intensity * sin_sq(lambda - axis)};
}

}  // namespace

TwoComponentPulse TwoComponentPulse::balanced(double phase_diff, double emit_time,
                                              double frequency) {
  TwoComponentPulse p;
  p.amp_v = std::sqrt(0.5);
  p.amp_h = std::sqrt(0.5);
  p.phase_diff = wrap(phase_diff, kPhasePeriod);
  p.frequency = frequency;
  p.emit_time = emit_time;
  return p;
}

TwoComponentPulse TwoComponentPulse::plane_polarized(Angle lambda, double intensity,
                                                     double emit_time) {
  const double amp = std::sqrt(intensity);
  const double c = std::cos(lambda.rad());
  const double s = std::sin(lambda.rad());
  TwoComponentPulse p;
  p.amp_v = amp * std::abs(c);
  p.amp_h = amp * std::abs(s);
  p.phase_diff = (c * s < 0.0) ? kPi : 0.0;
  p.emit_time = emit_time;
  p.polarization = lambda.rad();
  return p;
}

void TwoComponentPulse::validate() const {
  if (!(amp_v >= 0.0) || !(amp_h >= 0.0)) throw ConfigError("pulse amplitudes must be >= 0");
  if (intensity() > 1.0 + 1e-12) throw ConfigError("pulse intensity exceeds the source normalization 1");
  if (!(frequency > 0.0)) throw ConfigError("pulse frequency must be > 0");
  if (!(emit_time >= 0.0)) throw ConfigError("pulse emit_time must be >= 0");
}

TwoComponentPulse apply_modulator(const TwoComponentPulse& pulse, Angle two_a) {
  TwoComponentPulse out = pulse;
  out.phase_diff = wrap(pulse.phase_diff + two_a.rad(), kPhasePeriod);
  const bool single_component = pulse.amp_v == 0.0 || pulse.amp_h == 0.0;
  if (!single_component && wrap(two_a.rad(), kPhasePeriod) != 0.0) out.polarization.reset();
  return out;
}

ChannelIntensities wollaston_project(const TwoComponentPulse& pulse) {
  const double total = pulse.intensity();
  if (pulse.amp_v == pulse.amp_h) {
    // |1 + e^{i phi}|^2 / 4 = cos^2(phi / 2)
    return {total * cos_sq(0.5 * pulse.phase_diff), total * sin_sq(0.5 * pulse.phase_diff)};
  }
  const double cross = 2.0 * pulse.amp_v * pulse.amp_h * std::cos(pulse.phase_diff);
  const double plus = std::clamp(0.5 * (total + cross), 0.0, total);
  return {plus, total - plus};
}

ChannelIntensities polarizer_project(const TwoComponentPulse& pulse, Angle axis) {
  const double total = pulse.intensity();
  if (pulse.polarization) return malus(total, *pulse.polarization, axis.rad());
  if (pulse.amp_h == 0.0) return malus(total, 0.0, axis.rad());
  if (pulse.amp_v == 0.0) return malus(total, 0.5 * kPi, axis.rad());
  if (std::abs(wrap(axis.rad(), kPolarizationPeriod) - 0.25 * kPi) < 1e-12)
    return wollaston_project(pulse);
  throw ConfigError(
      "polarizer_project: two-component pulse is only defined for a 45-degree axis");
}

}  // namespace lrsim
