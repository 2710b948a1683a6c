#pragma once

#include <utility>
#include <vector>

#include "lrsim/angle.hpp"
#include "lrsim/optics.hpp"
#include "lrsim/rng.hpp"

namespace lrsim {

enum class Side { A, B };
enum class Channel { Plus, Minus };

enum class ResponseKind { Linear, Threshold, PowerLaw };

/// Detection probability as a function of incident intensity in [0, 1].
struct DetectorResponse {
  ResponseKind kind = ResponseKind::Linear;
  double threshold = 0.0;  ///< Threshold only
  double exponent = 1.0;   ///< PowerLaw only
  double efficiency = 1.0;

  static DetectorResponse linear(double efficiency = 1.0);
  static DetectorResponse threshold_at(double threshold, double efficiency = 1.0);
  static DetectorResponse power_law(double exponent, double efficiency = 1.0);

  double operator()(double intensity) const;
  void validate() const;

  /// Settings-relative offsets where the response is non-smooth as a function of
  /// a cos^2 intensity: for I(x) = cos^2(x) these are the x in [0, pi) where the
  /// curve jumps or has a cusp. Empty for the linear response.
  std::vector<double> kinks() const;
};

/// What the electronics does when both outputs of one prism fire in one pulse.
enum class SimultaneousPolicy { KeepBoth, DropBoth, PickRandom };

struct DetectionOutcome {
  bool plus_fired = false;
  bool minus_fired = false;
  double plus_time = 0.0;   ///< seconds; meaningful only when plus_fired
  double minus_time = 0.0;  ///< seconds; meaningful only when minus_fired

  bool both() const { return plus_fired && minus_fired; }
};

/// Fires each channel independently with probability g(I_channel).
///
/// Detection times are the emission time plus a uniform offset inside the
/// pulse (when `pulse_duration` > 0) plus Gaussian jitter. The number of
/// random draws is fixed, so runs that differ only in detector parameters stay
/// coupled draw for draw.
DetectionOutcome detect(const ChannelIntensities& intensities, const DetectorResponse& response,
                        double jitter_sigma, double emit_time, RandomStream& rng,
                        double pulse_duration = 0.0);

/// Applies the simultaneous-count policy. Always consumes one coin flip.
DetectionOutcome resolve_simultaneous(const DetectionOutcome& outcome, SimultaneousPolicy policy,
                                      RandomStream& rng);

/// Per-pulse probabilities that the + and - channels are *reported*, given
/// raw firing probabilities and the policy. Channels fire independently.
std::pair<double, double> reported_probabilities(double g_plus, double g_minus,
                                                 SimultaneousPolicy policy);

}  // namespace lrsim
