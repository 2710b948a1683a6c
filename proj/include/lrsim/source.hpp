#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "lrsim/angle.hpp"
#include "lrsim/hidden_variable.hpp"
#include "lrsim/optics.hpp"
#include "lrsim/rng.hpp"

namespace lrsim {

enum class SourceKind {
  CascadePolarized,  ///< both sides plane-polarized at a shared lambda
  DegeneratePDC,     ///< balanced V+H pulses with a shared binary phase class
};

struct SourceConfig {
  SourceKind kind = SourceKind::CascadePolarized;
  HiddenVariableModel hv_model;  ///< CascadePolarized only; must have period pi
  /// Probabilities of phase difference 0 and pi (DegeneratePDC only).
  std::array<double, 2> phase_class_weights{0.5, 0.5};
  double dispersion_sigma = 0.0;  ///< radians of phase, DegeneratePDC only
  bool independent_dispersion = false;
  double pair_rate = 1e4;       ///< pairs per second
  double pulse_duration = 0.0;  ///< seconds

  void validate() const;
};

struct EmittedPair {
  TwoComponentPulse side_a;
  TwoComponentPulse side_b;
  double lambda = 0.0;  ///< realized hidden variable (polarization angle or side-A phase)
  double emit_time = 0.0;
};

/// One draw from the hidden-variable distribution, in [0, period).
double sample_lambda(const HiddenVariableModel& model, RandomStream& rng);

/// Emits the next pair after `previous_time` (exponential inter-arrival at pair_rate).
EmittedPair emit_pair(const SourceConfig& config, RandomStream& rng, double previous_time);

/// Stateful pair generator; owns its stream and clock.
class PairSource {
 public:
  PairSource(SourceConfig config, std::uint64_t seed, double start_time = 0.0);

  EmittedPair next();
  double clock() const { return clock_; }
  RandomStream& rng() { return rng_; }

 private:
  SourceConfig config_;
  RandomStream rng_;
  double clock_;
};

/// The analytic hidden-variable model whose coincidence integrals describe this
/// source behind matching analyzers, when one exists in the catalogue. For a
/// cascade source this is hv_model itself; for PDC it is a phase-type (period
/// 2*pi) model built from the phase-class weights and shared dispersion.
std::optional<HiddenVariableModel> equivalent_model(const SourceConfig& config);

}  // namespace lrsim
