#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lrsim/errors.hpp"
#include "lrsim/quadrature.hpp"

using namespace lrsim;

TEST(Quadrature, PolynomialsAreExact) {
  const auto r = integrate([](double x) { return 3 * x * x; }, 0.0, 2.0);
  EXPECT_NEAR(r.value, 8.0, 1e-13);
  EXPECT_EQ(r.subintervals, 1u);
}

TEST(Quadrature, SmoothPeriodic) {
  const auto r = integrate([](double x) { return std::cos(x) * std::cos(x); }, 0.0, M_PI);
  EXPECT_NEAR(r.value, M_PI / 2, 1e-12);
}

TEST(Quadrature, StepWithBreakpointIsExact) {
  auto step = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  const std::vector<double> bp{0.3};
  const auto r = integrate(step, 0.0, 1.0, bp);
  EXPECT_NEAR(r.value, 0.7, 1e-14);
}

TEST(Quadrature, StepWithoutBreakpointStillConverges) {
  auto step = [](double x) { return x < 0.3 ? 0.0 : 1.0; };
  const auto r = integrate(step, 0.0, 1.0);
  EXPECT_NEAR(r.value, 0.7, 1e-9);
  EXPECT_GT(r.subintervals, 1u);
}

TEST(Quadrature, NarrowPeakNeedsHint) {
  const double s = 1e-3;
  auto peak = [s](double x) {
    return std::exp(-0.5 * (x - 0.4) * (x - 0.4) / (s * s)) / (s * std::sqrt(2 * M_PI));
  };
  const std::vector<double> bp{0.4 - 4 * s, 0.4, 0.4 + 4 * s};
  EXPECT_NEAR(integrate(peak, 0.0, 1.0, bp).value, 1.0, 1e-9);
}

TEST(Quadrature, CapIsReportedNotTruncated) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.max_subintervals = 4;
  auto f = [](double x) { return std::sqrt(std::abs(x - 0.377)); };
  EXPECT_THROW(integrate(f, 0.0, 1.0, {}, opts), NumericalError);
}

TEST(Quadrature, SingularIntegrandFails) {
  auto f = [](double x) { return 1.0 / std::abs(x - 0.5); };
  EXPECT_THROW(integrate(f, 0.0, 1.0), NumericalError);
  auto g = [](double x) { return 1.0 / std::abs(x - 0.377); };
  EXPECT_THROW(integrate(g, 0.0, 1.0), NumericalError);
}

TEST(Quadrature, EmptyInterval) {
  EXPECT_EQ(integrate([](double) { return 1.0; }, 1.0, 1.0).value, 0.0);
}
