#include "lrsim/analytic.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "lrsim/errors.hpp"

namespace lrsim {
namespace {

// Apparent polarization angle of a hidden-variable value.
double apparent_angle(const HiddenVariableModel& model, double lambda) {
  return model.is_phase_type() ? -0.5 * lambda : lambda;
}

double lambda_from_apparent(const HiddenVariableModel& model, double apparent) {
  return model.is_phase_type() ? wrap(-2.0 * apparent, model.period)
                               : wrap(apparent, model.period);
}

void add_response_breaks(std::vector<double>& out, const HiddenVariableModel& model,
                         Angle setting, const DetectorResponse& response) {
  for (double x : response.kinks()) {
    out.push_back(lambda_from_apparent(model, setting.rad() + x));
    out.push_back(lambda_from_apparent(model, setting.rad() + x + 0.5 * kPi));
  }
}

std::vector<double> breakpoints(const HiddenVariableModel& model, Angle a, Angle b,
                                const DetectorResponse& ra, const DetectorResponse& rb) {
  std::vector<double> out;
  add_response_breaks(out, model, a, ra);
  add_response_breaks(out, model, b, rb);
  if (model.kind == HvKind::SmearedBimodal) {
    // Narrow peaks must be seen by the initial partition.
    for (double peak : model.peaks())
      for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0})
        if (std::abs(k) * model.sigma < 0.5 * model.period)
          out.push_back(wrap(peak + k * model.sigma, model.period));
  }
  return out;
}

// Expectation of h(lambda) under the model: atoms are evaluated pointwise,
// continuous densities are integrated over one period.
double expectation(const HiddenVariableModel& model, const std::function<double(double)>& h,
                   const std::vector<double>& breaks, const QuadratureOptions& opts) {
  model.validate();
  if (model.is_atomic()) {
    double sum = 0.0;
    for (const Atom& atom : model.atoms()) sum += atom.weight * h(atom.location);
    return sum;
  }
  auto integrand = [&](double lambda) { return model.density(lambda) * h(lambda); };
  return integrate(integrand, 0.0, model.period, breaks, opts).value;
}

}  // namespace

double channel_intensity(const HiddenVariableModel& model, double lambda, Angle setting,
                         Channel channel) {
  const double x = apparent_angle(model, lambda) - setting.rad();
  return channel == Channel::Plus ? cos_sq(x) : sin_sq(x);
}

double qt_coincidence(Angle a, Angle b) {
  return 0.25 * (1.0 + std::cos(2.0 * (a.rad() - b.rad())));
}

double blr_coincidence(Angle a, Angle b) {
  return 0.125 * (2.0 + std::cos(2.0 * (a.rad() - b.rad())));
}

double crif_coincidence(Angle a, Angle b, Angle lambda0) {
  return cos_sq(lambda0.rad() - a.rad()) * cos_sq(lambda0.rad() - b.rad());
}

double brif_coincidence(Angle a, Angle b) {
  return 0.25 * (1.0 + std::cos(2.0 * a.rad()) * std::cos(2.0 * b.rad()));
}

double qt_realist_gap(Angle a, Angle b) {
  return 0.25 * std::sin(2.0 * a.rad()) * std::sin(2.0 * b.rad());
}

double singles_rate(const HiddenVariableModel& model, Angle a, const DetectorResponse& response,
                    const QuadratureOptions& opts) {
  response.validate();
  std::vector<double> breaks = breakpoints(model, a, a, response, response);
  return expectation(
      model,
      [&](double lambda) { return response(channel_intensity(model, lambda, a, Channel::Plus)); },
      breaks, opts);
}

double general_coincidence(const HiddenVariableModel& model, Angle a, Angle b,
                           const DetectorResponse& response_a,
                           const DetectorResponse& response_b, const QuadratureOptions& opts) {
  response_a.validate();
  response_b.validate();
  std::vector<double> breaks = breakpoints(model, a, b, response_a, response_b);
  return expectation(
      model,
      [&](double lambda) {
        return response_a(channel_intensity(model, lambda, a, Channel::Plus)) *
               response_b(channel_intensity(model, lambda, b, Channel::Plus));
      },
      breaks, opts);
}

double smeared_coincidence(double sigma, Angle a, Angle b, const QuadratureOptions& opts) {
  if (!(sigma >= 0.0)) throw ConfigError("smearing sigma must be >= 0");
  const auto linear = DetectorResponse::linear();
  return general_coincidence(HiddenVariableModel::smeared(Angle(0.0), sigma), a, b, linear, linear,
                             opts);
}

ChannelProbabilities channel_probabilities(const HiddenVariableModel& model, Angle a, Angle b,
                                           const DetectorResponse& response_a,
                                           const DetectorResponse& response_b,
                                           SimultaneousPolicy policy,
                                           const QuadratureOptions& opts) {
  response_a.validate();
  response_b.validate();
  std::vector<double> breaks = breakpoints(model, a, b, response_a, response_b);

  auto side = [&](double lambda, Angle setting, const DetectorResponse& response) {
    return reported_probabilities(
        response(channel_intensity(model, lambda, setting, Channel::Plus)),
        response(channel_intensity(model, lambda, setting, Channel::Minus)), policy);
  };
  auto moment = [&](auto select) {
    return expectation(
        model,
        [&](double lambda) {
          return select(side(lambda, a, response_a), side(lambda, b, response_b));
        },
        breaks, opts);
  };

  ChannelProbabilities p;
  p.p_pp = moment([](auto pa, auto pb) { return pa.first * pb.first; });
  p.p_pm = moment([](auto pa, auto pb) { return pa.first * pb.second; });
  p.p_mp = moment([](auto pa, auto pb) { return pa.second * pb.first; });
  p.p_mm = moment([](auto pa, auto pb) { return pa.second * pb.second; });
  p.s_a = moment([](auto pa, auto) { return pa.first; });
  p.s_b = moment([](auto, auto pb) { return pb.first; });
  return p;
}

ChannelProbabilities qt_channel_probabilities(Angle a, Angle b) {
  ChannelProbabilities p;
  p.p_pp = qt_coincidence(a, b);
  p.p_mm = p.p_pp;
  p.p_pm = 0.5 - p.p_pp;
  p.p_mp = p.p_pm;
  p.s_a = 0.5;
  p.s_b = 0.5;
  return p;
}

}  // namespace lrsim
