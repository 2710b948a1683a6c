#pragma once

#include <vector>

#include "lrsim/angle.hpp"

namespace lrsim {

enum class HvKind {
  UniformRI,       ///< full rotational invariance, flat density
  DeltaCRIF,       ///< complete RI failure, all mass at lambda0
  BinaryBRIF,      ///< half the mass at lambda0, half at lambda0 + period/2
  SmearedBimodal,  ///< BinaryBRIF with each atom spread into a wrapped Gaussian
};

/// A point mass of a discrete hidden-variable distribution.
struct Atom {
  double location;
  double weight;
};

/// Distribution of the shared hidden variable lambda over one period.
///
/// Polarization-type variables use period pi; phase-difference variables use
/// period 2*pi. The period is carried explicitly because a phase difference of
/// pi shows up after 45-degree projection as an apparent angle of pi/2.
struct HiddenVariableModel {
  HvKind kind = HvKind::UniformRI;
  double lambda0 = 0.0;  ///< radians; ignored for UniformRI
  double period = kPolarizationPeriod;
  double sigma = 0.0;  ///< radians; SmearedBimodal only

  static HiddenVariableModel uniform(double period = kPolarizationPeriod);
  static HiddenVariableModel delta(Angle lambda0, double period = kPolarizationPeriod);
  static HiddenVariableModel binary(Angle lambda0, double period = kPolarizationPeriod);
  static HiddenVariableModel smeared(Angle lambda0, double sigma,
                                     double period = kPolarizationPeriod);

  /// Throws ConfigError on a non-positive period or negative sigma.
  void validate() const;

  /// True when the distribution is a finite set of atoms (including sigma == 0 smearing).
  bool is_atomic() const;
  /// Atoms of an atomic model, locations wrapped into [0, period).
  std::vector<Atom> atoms() const;
  /// Density on [0, period) for non-atomic models.
  double density(double lambda) const;
  /// Peak centres of the smeared density (empty for the uniform model).
  std::vector<double> peaks() const;

  bool is_phase_type() const { return period > 1.5 * kPolarizationPeriod; }
};

/// Wrapped Gaussian density with the image sum truncated at 6 sigma and renormalized.
double wrapped_gaussian(double x, double mean, double sigma, double period);

}  // namespace lrsim
