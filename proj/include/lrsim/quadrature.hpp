#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace lrsim {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_subintervals = std::size_t{1} << 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< summed Kronrod-Gauss error estimate
  std::size_t subintervals = 0;
  std::size_t evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `opts.abs_tol`. Breakpoints strictly inside (lo, hi)
/// seed the initial partition, which is how known discontinuities and narrow
/// peaks are handed to the integrator. Throws NumericalError when the
/// subinterval cap is reached or intervals shrink to roundoff before the
/// tolerance is met; the result is never silently truncated.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breakpoints = {},
                           const QuadratureOptions& opts = {});

}  // namespace lrsim
