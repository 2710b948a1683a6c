#include "lrsim/hidden_variable.hpp"

#include <cmath>

#include "lrsim/errors.hpp"

namespace lrsim {

HiddenVariableModel HiddenVariableModel::uniform(double period) {
  return {HvKind::UniformRI, 0.0, period, 0.0};
}

HiddenVariableModel HiddenVariableModel::delta(Angle lambda0, double period) {
  return {HvKind::DeltaCRIF, lambda0.rad(), period, 0.0};
}

HiddenVariableModel HiddenVariableModel::binary(Angle lambda0, double period) {
  return {HvKind::BinaryBRIF, lambda0.rad(), period, 0.0};
}

HiddenVariableModel HiddenVariableModel::smeared(Angle lambda0, double sigma, double period) {
  return {HvKind::SmearedBimodal, lambda0.rad(), period, sigma};
}

void HiddenVariableModel::validate() const {
  if (!(period > 0.0) || !std::isfinite(period))
    throw ConfigError("hidden-variable period must be positive");
  if (!std::isfinite(lambda0)) throw ConfigError("lambda0 must be finite");
  if (kind == HvKind::SmearedBimodal && (!(sigma >= 0.0) || !std::isfinite(sigma)))
    throw ConfigError("smearing sigma must be finite and >= 0");
}

bool HiddenVariableModel::is_atomic() const {
  switch (kind) {
    case HvKind::UniformRI: return false;
    case HvKind::DeltaCRIF:
    case HvKind::BinaryBRIF: return true;
    case HvKind::SmearedBimodal: return sigma == 0.0;
  }
  return false;
}

std::vector<Atom> HiddenVariableModel::atoms() const {
  if (kind == HvKind::DeltaCRIF) return {{wrap(lambda0, period), 1.0}};
  if (is_atomic())
    return {{wrap(lambda0, period), 0.5}, {wrap(lambda0 + 0.5 * period, period), 0.5}};
  return {};
}

std::vector<double> HiddenVariableModel::peaks() const {
  if (kind == HvKind::UniformRI) return {};
  if (kind == HvKind::DeltaCRIF) return {wrap(lambda0, period)};
  return {wrap(lambda0, period), wrap(lambda0 + 0.5 * period, period)};
}

double HiddenVariableModel::density(double lambda) const {
  switch (kind) {
    case HvKind::UniformRI: return 1.0 / period;
    case HvKind::SmearedBimodal:
      if (sigma > 0.0)
        return 0.5 * wrapped_gaussian(lambda, lambda0, sigma, period) +
               0.5 * wrapped_gaussian(lambda, lambda0 + 0.5 * period, sigma, period);
      break;
    default: break;
  }
  throw ConfigError("density requested for an atomic hidden-variable model");
}

double wrapped_gaussian(double x, double mean, double sigma, double period) {
  const double d = wrap(x - mean, period);
  const double reach = 6.0 * sigma;
  const auto k_lo = static_cast<long>(std::floor((d - reach) / period));
  const auto k_hi = static_cast<long>(std::ceil((d + reach) / period));
  // renormalized so the truncated density still integrates to one
  static const double kept = std::erf(6.0 / std::sqrt(2.0));
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi) * kept);
  double sum = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double z = (d - static_cast<double>(k) * period) / sigma;
    if (std::abs(z) <= 6.0) sum += std::exp(-0.5 * z * z);
  }
  return norm * sum;
}

}  // namespace lrsim
