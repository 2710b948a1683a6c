#include "lrsim/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "lrsim/errors.hpp"

namespace lrsim {
namespace {

// Kronrod 15-point nodes (non-negative half) and weights; the odd-indexed
// nodes are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  if (!std::isfinite(kronrod) || !std::isfinite(gauss)) {
    std::ostringstream msg;
    msg << "quadrature integrand is not finite on [" << lo << ", " << hi << "]";
    throw NumericalError(msg.str());
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           std::span<const double> breakpoints, const QuadratureOptions& opts) {
  if (!(opts.abs_tol > 0.0)) throw ConfigError("quadrature tolerance must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("quadrature bounds must be finite");
  QuadratureResult result;
  if (lo == hi) return result;
  const double sign = hi > lo ? 1.0 : -1.0;
  if (hi < lo) std::swap(lo, hi);

  std::vector<double> cuts{lo};
  for (double x : breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = kronrod15(f, cuts[i], cuts[i + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }
  result.evaluations = 15 * heap.size();

  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi - lo);
  while (total_error > opts.abs_tol) {
    if (heap.size() >= opts.max_subintervals) {
      std::ostringstream msg;
      msg << "quadrature did not converge: error estimate " << total_error << " > tolerance "
          << opts.abs_tol << " after " << heap.size() << " subintervals";
      throw NumericalError(msg.str());
    }
    Segment worst = heap.top();
    if (worst.hi - worst.lo < min_width) {
      std::ostringstream msg;
      msg << "quadrature hit roundoff near x = " << worst.lo << " with error estimate "
          << total_error << " > tolerance " << opts.abs_tol;
      throw NumericalError(msg.str());
    }
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left = kronrod15(f, worst.lo, mid);
    Segment right = kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    result.evaluations += 30;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from scratch so the running update's cancellation error does not leak out.
  total = 0.0;
  total_error = 0.0;
  result.subintervals = heap.size();
  while (!heap.empty()) {
    total += heap.top().value;
    total_error += heap.top().error;
    heap.pop();
  }
  result.value = sign * total;
  result.error = total_error;
  return result;
}

}  // namespace lrsim
