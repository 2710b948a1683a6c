#include "lrsim/source.hpp"

#include <cmath>

#include "lrsim/errors.hpp"

namespace lrsim {

void SourceConfig::validate() const {
  if (!(pair_rate > 0.0) || !std::isfinite(pair_rate)) throw ConfigError("pair_rate must be > 0");
  if (!(pulse_duration >= 0.0)) throw ConfigError("pulse_duration must be >= 0");
  if (kind == SourceKind::CascadePolarized) {
    hv_model.validate();
    if (hv_model.is_phase_type())
      throw ConfigError("cascade source needs a polarization-type (period pi) hidden variable");
    return;
  }
  const auto [w0, w1] = phase_class_weights;
  if (!(w0 >= 0.0) || !(w1 >= 0.0) || std::abs(w0 + w1 - 1.0) > 1e-12)
    throw ConfigError("phase_class_weights must be nonnegative and sum to 1");
  if (!(dispersion_sigma >= 0.0) || !std::isfinite(dispersion_sigma))
    throw ConfigError("dispersion_sigma must be >= 0");
}

double sample_lambda(const HiddenVariableModel& model, RandomStream& rng) {
  switch (model.kind) {
    case HvKind::UniformRI: return wrap(rng.uniform() * model.period, model.period);
    case HvKind::DeltaCRIF: return wrap(model.lambda0, model.period);
    case HvKind::BinaryBRIF:
      return wrap(model.lambda0 + (rng.coin() ? 0.5 * model.period : 0.0), model.period);
    case HvKind::SmearedBimodal: {
      const double peak = model.lambda0 + (rng.coin() ? 0.5 * model.period : 0.0);
      return wrap(peak + model.sigma * rng.normal(), model.period);
    }
  }
  return 0.0;
}

EmittedPair emit_pair(const SourceConfig& config, RandomStream& rng, double previous_time) {
  EmittedPair pair;
  pair.emit_time = previous_time + rng.exponential(config.pair_rate);

  if (config.kind == SourceKind::CascadePolarized) {
    pair.lambda = sample_lambda(config.hv_model, rng);
    pair.side_a = TwoComponentPulse::plane_polarized(Angle(pair.lambda), 1.0, pair.emit_time);
    pair.side_b = pair.side_a;
    return pair;
  }

  const double phase_class = rng.uniform() < config.phase_class_weights[0] ? 0.0 : kPi;
  const double shared = config.dispersion_sigma * rng.normal();
  const double own_b = config.dispersion_sigma * rng.normal();
  const double phase_a = wrap(phase_class + shared, kPhasePeriod);
  const double phase_b =
      config.independent_dispersion ? wrap(phase_class + own_b, kPhasePeriod) : phase_a;
  pair.side_a = TwoComponentPulse::balanced(phase_a, pair.emit_time);
  pair.side_b = TwoComponentPulse::balanced(phase_b, pair.emit_time);
  pair.lambda = phase_a;
  return pair;
}

PairSource::PairSource(SourceConfig config, std::uint64_t seed, double start_time)
    : config_(std::move(config)), rng_(seed), clock_(start_time) {
  config_.validate();
}

EmittedPair PairSource::next() {
  EmittedPair pair = emit_pair(config_, rng_, clock_);
  clock_ = pair.emit_time;
  return pair;
}

std::optional<HiddenVariableModel> equivalent_model(const SourceConfig& config) {
  if (config.kind == SourceKind::CascadePolarized) return config.hv_model;
  if (config.independent_dispersion && config.dispersion_sigma > 0.0) return std::nullopt;
  const auto [w0, w1] = config.phase_class_weights;
  if (w0 == 1.0 || w1 == 1.0) {
    if (config.dispersion_sigma > 0.0) return std::nullopt;
    return HiddenVariableModel::delta(Angle(w0 == 1.0 ? 0.0 : kPi), kPhasePeriod);
  }
  if (w0 != 0.5) return std::nullopt;
  if (config.dispersion_sigma == 0.0)
    return HiddenVariableModel::binary(Angle(0.0), kPhasePeriod);
  return HiddenVariableModel::smeared(Angle(0.0), config.dispersion_sigma, kPhasePeriod);
}

}  // namespace lrsim
