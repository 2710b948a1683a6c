#pragma once

#include "lrsim/angle.hpp"
#include "lrsim/detection.hpp"
#include "lrsim/hidden_variable.hpp"
#include "lrsim/quadrature.hpp"

namespace lrsim {

/// Probabilities of the four coincidence outcomes and of the two + singles.
struct ChannelProbabilities {
  double p_pp = 0.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;
  double s_a = 0.0;
  double s_b = 0.0;

  double total() const { return p_pp + p_pm + p_mp + p_mm; }
};

/// Intensity reaching `channel` behind an analyzer at `setting` for hidden variable
/// lambda. Polarization-type models give cos^2(lambda - a); phase-type models
/// (period 2*pi) give the modulator-plus-prism pattern cos^2(lambda/2 + a).
double channel_intensity(const HiddenVariableModel& model, double lambda, Angle setting,
                         Channel channel);

// Closed forms. All are written through cos(2x) so that the
// textbook zeros (orthogonal settings) come out exactly zero.

/// (1/2) cos^2(a - b)
double qt_coincidence(Angle a, Angle b);
/// (1/8)(1 + 2 cos^2(a - b))
double blr_coincidence(Angle a, Angle b);
/// cos^2(lambda0 - a) cos^2(lambda0 - b)
double crif_coincidence(Angle a, Angle b, Angle lambda0);
/// (1/2)(cos^2 a cos^2 b + sin^2 a sin^2 b)
double brif_coincidence(Angle a, Angle b);
/// cos a cos b sin a sin b, so that qt = brif + gap identically.
double qt_realist_gap(Angle a, Angle b);

/// Integral over one period of rho(lambda) g(I_+(lambda)).
double singles_rate(const HiddenVariableModel& model, Angle a, const DetectorResponse& response,
                    const QuadratureOptions& opts = {});

/// Integral over one period of rho(lambda) g_a(I_+^a) g_b(I_+^b).
double general_coincidence(const HiddenVariableModel& model, Angle a, Angle b,
                           const DetectorResponse& response_a,
                           const DetectorResponse& response_b,
                           const QuadratureOptions& opts = {});

/// Coincidence rate for the BRIF atoms smeared by a wrapped Gaussian of width
/// sigma (polarization-type, lambda0 = 0). sigma = 0 is BRIF; large sigma is BLR.
double smeared_coincidence(double sigma, Angle a, Angle b, const QuadratureOptions& opts = {});

/// All four coincidence probabilities and the + singles for a model, with the
/// simultaneous-count policy applied per side.
ChannelProbabilities channel_probabilities(const HiddenVariableModel& model, Angle a, Angle b,
                                           const DetectorResponse& response_a,
                                           const DetectorResponse& response_b,
                                           SimultaneousPolicy policy = SimultaneousPolicy::KeepBoth,
                                           const QuadratureOptions& opts = {});

/// Quantum prediction for the four channels: p_pp = p_mm = cos^2(a-b)/2.
ChannelProbabilities qt_channel_probabilities(Angle a, Angle b);

}  // namespace lrsim
