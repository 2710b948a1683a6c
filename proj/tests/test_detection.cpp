#include <gtest/gtest.h>

#include "lrsim/detection.hpp"
#include "lrsim/errors.hpp"
#include "oracles.hpp"

using namespace lrsim;

namespace {

std::pair<double, double> firing_rates(ChannelIntensities in, DetectorResponse r, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  int plus = 0, minus = 0;
  for (int i = 0; i < n; ++i) {
    const auto o = detect(in, r, 0.0, 0.0, rng);
    plus += o.plus_fired;
    minus += o.minus_fired;
  }
  return {static_cast<double>(plus), static_cast<double>(minus)};
}

}  // namespace

TEST(Response, Families) {
  EXPECT_DOUBLE_EQ(DetectorResponse::linear(0.5)(0.4), 0.2);
  EXPECT_EQ(DetectorResponse::threshold_at(0.3)(0.2), 0.0);
  EXPECT_DOUBLE_EQ(DetectorResponse::threshold_at(0.3, 0.5)(0.8), 0.4);
  EXPECT_DOUBLE_EQ(DetectorResponse::power_law(2.0)(0.5), 0.25);
}

TEST(Response, MonotoneIntoUnitInterval) {
  for (const auto& r : {DetectorResponse::linear(0.7), DetectorResponse::threshold_at(0.4, 0.9),
                        DetectorResponse::power_law(0.5), DetectorResponse::power_law(3.0, 0.2)}) {
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double g = r(i / 1000.0);
      EXPECT_GE(g, prev);
      EXPECT_LE(g, 1.0);
      prev = g;
    }
  }
}

TEST(Response, Validation) {
  EXPECT_THROW(DetectorResponse::linear(0.0).validate(), ConfigError);
  EXPECT_THROW(DetectorResponse::linear(1.5).validate(), ConfigError);
  EXPECT_THROW(DetectorResponse::threshold_at(1.5).validate(), ConfigError);
  EXPECT_THROW(DetectorResponse::power_law(0.0).validate(), ConfigError);
}

TEST(Response, ThresholdKinks) {
  const auto k = DetectorResponse::threshold_at(0.5).kinks();
  ASSERT_EQ(k.size(), 2u);
  EXPECT_NEAR(k[0], kPi / 4, 1e-15);
  EXPECT_NEAR(k[1], 3 * kPi / 4, 1e-15);
  EXPECT_TRUE(DetectorResponse::linear().kinks().empty());
}

TEST(Detect, Examples) {
  const int n = 100000;
  auto [p, m] = firing_rates({1.0, 0.0}, DetectorResponse::linear(), n, 1);
  EXPECT_EQ(p, n);
  EXPECT_EQ(m, 0);
  std::tie(p, m) = firing_rates({0.5, 0.5}, DetectorResponse::linear(), n, 2);
  EXPECT_TRUE(oracle::binomial_agrees(p, n, 0.5, 3.0));
  EXPECT_TRUE(oracle::binomial_agrees(m, n, 0.5, 3.0));
  std::tie(p, m) = firing_rates({0.2, 0.8}, DetectorResponse::threshold_at(0.3), n, 3);
  EXPECT_EQ(p, 0);
  EXPECT_TRUE(oracle::binomial_agrees(m, n, 0.8, 3.0));
}

TEST(Detect, JitterAndPulseOffsets) {
  RandomStream rng(4);
  const int n = 50000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto o = detect({1.0, 0.0}, DetectorResponse::linear(), 1e-9, 5.0, rng);
    const double d = o.plus_time - 5.0;
    sum += d;
    sum2 += d * d;
  }
  EXPECT_NEAR(sum / n, 0.0, 5e-11);
  EXPECT_NEAR(std::sqrt(sum2 / n), 1e-9, 2e-11);

  RandomStream rng2(5);
  for (int i = 0; i < 1000; ++i) {
    const auto o = detect({1.0, 1.0}, DetectorResponse::linear(), 0.0, 1.0, rng2, 1e-6);
    EXPECT_GE(o.plus_time, 1.0);
    EXPECT_LT(o.plus_time, 1.0 + 1e-6);
  }
}

TEST(Detect, EfficiencyCouplingIsMonotone) {
  // Same seed, higher efficiency: every firing at low efficiency also fires at high.
  RandomStream lo(6), hi(6);
  for (int i = 0; i < 10000; ++i) {
    const ChannelIntensities in{0.6, 0.4};
    const auto a = detect(in, DetectorResponse::linear(0.3), 0.0, 0.0, lo);
    const auto b = detect(in, DetectorResponse::linear(0.9), 0.0, 0.0, hi);
    if (a.plus_fired) EXPECT_TRUE(b.plus_fired);
    if (a.minus_fired) EXPECT_TRUE(b.minus_fired);
  }
}

TEST(Simultaneous, Policies) {
  RandomStream rng(7);
  DetectionOutcome both{true, true, 1.0, 2.0};
  EXPECT_TRUE(resolve_simultaneous(both, SimultaneousPolicy::KeepBoth, rng).both());
  const auto dropped = resolve_simultaneous(both, SimultaneousPolicy::DropBoth, rng);
  EXPECT_FALSE(dropped.plus_fired);
  EXPECT_FALSE(dropped.minus_fired);
  DetectionOutcome one{true, false, 1.0, 0.0};
  for (auto p : {SimultaneousPolicy::KeepBoth, SimultaneousPolicy::DropBoth, SimultaneousPolicy::PickRandom}) {
    const auto r = resolve_simultaneous(one, p, rng);
    EXPECT_TRUE(r.plus_fired);
    EXPECT_FALSE(r.minus_fired);
  }
  int plus = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto r = resolve_simultaneous(both, SimultaneousPolicy::PickRandom, rng);
    EXPECT_NE(r.plus_fired, r.minus_fired);
    plus += r.plus_fired;
  }
  EXPECT_TRUE(oracle::binomial_agrees(plus, n, 0.5, 4.0));
}

TEST(Simultaneous, ReportedProbabilities) {
  const double gp = 0.6, gm = 0.3;
  auto [kp, km] = reported_probabilities(gp, gm, SimultaneousPolicy::KeepBoth);
  EXPECT_DOUBLE_EQ(kp, gp);
  EXPECT_DOUBLE_EQ(km, gm);
  auto [dp, dm] = reported_probabilities(gp, gm, SimultaneousPolicy::DropBoth);
  EXPECT_DOUBLE_EQ(dp, gp * (1 - gm));
  EXPECT_DOUBLE_EQ(dm, gm * (1 - gp));
  auto [rp, rm] = reported_probabilities(gp, gm, SimultaneousPolicy::PickRandom);
  EXPECT_DOUBLE_EQ(rp, gp * (1 - gm) + 0.5 * gp * gm);
  EXPECT_DOUBLE_EQ(rm, gm * (1 - gp) + 0.5 * gp * gm);
}
