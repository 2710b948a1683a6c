#include "lrsim/angle.hpp"

#include <cmath>

namespace lrsim {

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  // -tiny + period rounds to period itself
  if (r >= period) r = 0.0;
  return r;
}

double cos_sq(double x) { return 0.5 * (1.0 + std::cos(2.0 * x)); }

double sin_sq(double x) { return 0.5 * (1.0 - std::cos(2.0 * x)); }

}  // namespace lrsim
