#include "lrsim/detection.hpp"

#include <cmath>

#include "lrsim/errors.hpp"

namespace lrsim {

DetectorResponse DetectorResponse::linear(double efficiency) {
  return {ResponseKind::Linear, 0.0, 1.0, efficiency};
}

DetectorResponse DetectorResponse::threshold_at(double threshold, double efficiency) {
  return {ResponseKind::Threshold, threshold, 1.0, efficiency};
}

DetectorResponse DetectorResponse::power_law(double exponent, double efficiency) {
  return {ResponseKind::PowerLaw, 0.0, exponent, efficiency};
}

double DetectorResponse::operator()(double intensity) const {
  switch (kind) {
    case ResponseKind::Linear: return efficiency * intensity;
    case ResponseKind::Threshold: return intensity >= threshold ? efficiency * intensity : 0.0;
    case ResponseKind::PowerLaw: return efficiency * std::pow(intensity, exponent);
  }
  return 0.0;
}

void DetectorResponse::validate() const {
  if (!(efficiency > 0.0 && efficiency <= 1.0))
    throw ConfigError("detector efficiency must be in (0, 1]");
  if (kind == ResponseKind::Threshold && !(threshold >= 0.0 && threshold <= 1.0))
    throw ConfigError("detector threshold must be in [0, 1]");
  if (kind == ResponseKind::PowerLaw && !(exponent > 0.0 && std::isfinite(exponent)))
    throw ConfigError("power-law exponent must be > 0");
}

std::vector<double> DetectorResponse::kinks() const {
  switch (kind) {
    case ResponseKind::Linear: return {};
    case ResponseKind::Threshold: {
      if (threshold <= 0.0 || threshold >= 1.0) return {};
      const double x = std::acos(std::sqrt(threshold));
      return {x, kPi - x};
    }
    case ResponseKind::PowerLaw:
      if (exponent == 1.0) return {};
      return {0.5 * kPi};
  }
  return {};
}

DetectionOutcome detect(const ChannelIntensities& intensities, const DetectorResponse& response,
                        double jitter_sigma, double emit_time, RandomStream& rng,
                        double pulse_duration) {
  const double u_plus = rng.uniform();
  const double u_minus = rng.uniform();
  const double offset_plus = rng.uniform() * pulse_duration;
  const double offset_minus = rng.uniform() * pulse_duration;
  const double z_plus = rng.normal();
  const double z_minus = rng.normal();

  DetectionOutcome out;
  out.plus_fired = u_plus < response(intensities.plus);
  out.minus_fired = u_minus < response(intensities.minus);
  out.plus_time = emit_time + offset_plus + jitter_sigma * z_plus;
  out.minus_time = emit_time + offset_minus + jitter_sigma * z_minus;
  return out;
}

DetectionOutcome resolve_simultaneous(const DetectionOutcome& outcome, SimultaneousPolicy policy,
                                      RandomStream& rng) {
  const bool keep_plus = rng.coin();
  if (!outcome.both()) return outcome;
  DetectionOutcome out = outcome;
  switch (policy) {
    case SimultaneousPolicy::KeepBoth: break;
    case SimultaneousPolicy::DropBoth:
      out.plus_fired = false;
      out.minus_fired = false;
      break;
    case SimultaneousPolicy::PickRandom:
      out.plus_fired = keep_plus;
      out.minus_fired = !keep_plus;
      break;
  }
  return out;
}

std::pair<double, double> reported_probabilities(double g_plus, double g_minus,
                                                 SimultaneousPolicy policy) {
  switch (policy) {
    case SimultaneousPolicy::KeepBoth: return {g_plus, g_minus};
    case SimultaneousPolicy::DropBoth:
      return {g_plus * (1.0 - g_minus), g_minus * (1.0 - g_plus)};
    case SimultaneousPolicy::PickRandom:
      return {g_plus * (1.0 - g_minus) + 0.5 * g_plus * g_minus,
              g_minus * (1.0 - g_plus) + 0.5 * g_plus * g_minus};
  }
  return {g_plus, g_minus};
}

}  // namespace lrsim
