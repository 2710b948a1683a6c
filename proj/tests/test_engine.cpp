#include <gtest/gtest.h>

#include <omp.h>

#include "lrsim/analytic.hpp"
#include "lrsim/belltests.hpp"
#include "lrsim/engine.hpp"
#include "lrsim/errors.hpp"
#include "oracles.hpp"

using namespace lrsim;

namespace {

ExperimentConfig cascade(HiddenVariableModel model, std::uint64_t n = 1'000'000) {
  ExperimentConfig c;
  c.source.hv_model = model;
  c.n_pairs = n;
  c.retain_events = false;
  return c;
}

ExperimentConfig pdc(std::uint64_t n = 1'000'000) {
  ExperimentConfig c;
  c.source.kind = SourceKind::DegeneratePDC;
  c.analyzer_a = AnalyzerKind::ModulatorPlusPrism45;
  c.analyzer_b = AnalyzerKind::ModulatorPlusPrism45;
  c.n_pairs = n;
  c.retain_events = false;
  return c;
}

std::vector<Angle> grid(double lo, double hi, int n) {
  std::vector<Angle> v;
  for (int i = 0; i < n; ++i) v.emplace_back(lo + (hi - lo) * i / (n - 1.0));
  return v;
}

double rate(const CoincidenceCounts& c) {
  return static_cast<double>(c.n_pp) / static_cast<double>(c.n_pairs_emitted);
}

}  // namespace

TEST(Engine, PdcFlatAtQuarterPi) {
  auto c = pdc(200'000);
  c.setting_b = Angle(kPi / 4);
  for (double a : {0.0, 0.4, 0.9, 1.5}) {
    c.setting_a = Angle(a);
    const auto r = run(c).counts;
    EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, 0.25, 3.0)) << a << " " << rate(r);
  }
}

TEST(Engine, PdcFollowsCosSquaredAtZero) {
  auto c = pdc(200'000);
  for (double a : {0.0, 0.4, 0.9, 1.5}) {
    c.setting_a = Angle(a);
    const auto r = run(c).counts;
    EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, 0.5 * oracle::cos2(a), 3.0)) << a;
  }
}

TEST(Engine, CascadeUniformAtZero) {
  const auto r = run(cascade(HiddenVariableModel::uniform())).counts;
  EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, 0.375, 3.0));
}

TEST(Engine, OracleEquivalenceLinearDetection) {
  // Every catalogue model against the analytic module at 19 points, 10^6 pairs each.
  const std::vector<std::pair<ExperimentConfig, HiddenVariableModel>> cases = {
      {cascade(HiddenVariableModel::uniform()), HiddenVariableModel::uniform()},
      {cascade(HiddenVariableModel::delta(Angle(0.3))), HiddenVariableModel::delta(Angle(0.3))},
      {cascade(HiddenVariableModel::binary(Angle(0.0))), HiddenVariableModel::binary(Angle(0.0))},
      {cascade(HiddenVariableModel::smeared(Angle(0.0), 0.2)), HiddenVariableModel::smeared(Angle(0.0), 0.2)},
  };
  for (auto [config, model] : cases) {
    config.setting_b = Angle(0.2);
    const auto values = grid(0.0, kPi, 19);
    const auto counts = sweep(config, Side::A, values);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double p = general_coincidence(model, values[i], config.setting_b,
                                           DetectorResponse::linear(), DetectorResponse::linear());
      EXPECT_TRUE(oracle::binomial_agrees(counts[i].n_pp, counts[i].n_pairs_emitted, p, 4.0))
          << "model " << static_cast<int>(model.kind) << " a=" << values[i].rad() << " mc "
          << rate(counts[i]) << " vs " << p;
    }
  }
}

TEST(Engine, PdcMatchesPhaseTypeModelWithDispersion) {
  auto c = pdc(500'000);
  c.source.dispersion_sigma = 0.5;
  const auto model = *equivalent_model(c.source);
  c.setting_b = Angle(0.3);
  for (double a : {0.0, 0.5, 1.2}) {
    c.setting_a = Angle(a);
    const auto r = run(c).counts;
    const auto p = channel_probabilities(model, Angle(a), c.setting_b, c.response_a, c.response_b);
    EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, p.p_pp, 4.0));
    EXPECT_TRUE(oracle::binomial_agrees(r.n_mp, r.n_pairs_emitted, p.p_mp, 4.0));
  }
}

TEST(Engine, ThresholdDetectionMatchesQuadrature) {
  auto c = cascade(HiddenVariableModel::uniform(), 500'000);
  c.response_a = c.response_b = DetectorResponse::threshold_at(0.5);
  c.window = 1e-12;  // keeps accidentals out of the zero-probability setting
  for (double a : {0.0, 0.5, kPi / 2}) {
    c.setting_a = Angle(a);
    const auto r = run(c).counts;
    const double p = general_coincidence(c.source.hv_model, c.setting_a, c.setting_b, c.response_a, c.response_b);
    EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, p, 4.0)) << a;
  }
}

TEST(Engine, ThresholdCurveBeatsLinearVisibility) {
  auto c = cascade(HiddenVariableModel::uniform(), 300'000);
  c.response_a = c.response_b = DetectorResponse::threshold_at(0.5);
  const auto values = grid(0.0, kPi / 2, 7);
  const auto counts = sweep(c, Side::A, values);
  const auto s = curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(counts));
  EXPECT_LT(s.min, 0.125);
  EXPECT_GT(s.visibility, 0.5);
}

TEST(Engine, BrifSweeps) {
  auto c = cascade(HiddenVariableModel::binary(Angle(0)));
  const auto values = grid(0.0, kPi / 2, 7);
  c.setting_b = Angle(kPi / 4);
  auto flat = sweep(c, Side::A, values);
  EXPECT_LT(curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(flat)).visibility, 0.02);
  c.setting_b = Angle(0);
  auto full = sweep(c, Side::A, values);
  const auto s = curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(full));
  EXPECT_GT(s.visibility, 0.98);
  EXPECT_NEAR(s.max, 0.5, 0.005);
  EXPECT_NEAR(curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(flat)).max, 0.25, 0.005);
  for (const auto& r : flat) {
    EXPECT_NEAR(static_cast<double>(r.singles_a_plus) / r.n_pairs_emitted, 0.5, 0.005);
  }
}

TEST(Engine, CrifMinimumAtHorizontal) {
  auto c = cascade(HiddenVariableModel::delta(Angle(0)), 100'000);
  const auto values = grid(0.0, kPi, 9);
  for (double b : {0.0, 0.3, kPi / 4, 1.2}) {
    c.setting_b = Angle(b);
    const auto counts = sweep(c, Side::A, values);
    const auto s = curve_summary(std::span<const Angle>(values), std::span<const CoincidenceCounts>(counts));
    EXPECT_DOUBLE_EQ(s.argmin, kPi / 2);
    EXPECT_EQ(s.min, 0.0);
  }
}

TEST(Engine, SinglesDiscriminator) {
  const auto values = grid(0.0, kPi, 7);
  for (const auto& m : {HiddenVariableModel::uniform(), HiddenVariableModel::binary(Angle(0))}) {
    const auto counts = sweep(cascade(m), Side::A, values);
    for (const auto& r : counts)
      EXPECT_NEAR(static_cast<double>(r.singles_a_plus) / r.n_pairs_emitted / 0.5, 1.0, 0.01);
  }
  const auto counts = sweep(cascade(HiddenVariableModel::delta(Angle(0)), 100'000), Side::A, values);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < values.size(); ++i) {
    x.push_back(values[i].rad());
    y.push_back(static_cast<double>(counts[i].singles_a_plus));
  }
  EXPECT_GT(curve_summary(x, y).visibility, 0.99);
}

TEST(Engine, UniformCurvesAreShiftedCopies) {
  auto c = cascade(HiddenVariableModel::uniform(), 400'000);
  const auto values = grid(0.0, kPi, 13);
  c.setting_b = Angle(0);
  const auto c0 = sweep(c, Side::A, values);
  c.setting_b = Angle(kPi / 4);
  const auto shifted_values = [&] {
    std::vector<Angle> v;
    for (auto x : values) v.push_back(x + Angle(kPi / 4));
    return v;
  }();
  const auto c1 = sweep(c, Side::A, shifted_values);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double sd = std::sqrt(2 * 0.375 * 0.625 / 400'000.0);
    EXPECT_NEAR(rate(c0[i]), rate(c1[i]), 4.5 * sd);
  }
}

TEST(Engine, WindowMonotonicity) {
  auto c = cascade(HiddenVariableModel::uniform(), 100'000);
  c.jitter_sigma = 2e-6;
  c.source.pair_rate = 1e5;
  CoincidenceCounts prev;
  for (double w : {1e-7, 1e-6, 3e-6, 1e-5, 1e-4}) {
    c.window = w;
    const auto r = run(c).counts;
    EXPECT_GE(r.n_pp, prev.n_pp);
    EXPECT_GE(r.n_pm, prev.n_pm);
    EXPECT_GE(r.n_mp, prev.n_mp);
    EXPECT_GE(r.n_mm, prev.n_mm);
    prev = r;
  }
}

TEST(Engine, EfficiencyMonotonicity) {
  auto c = cascade(HiddenVariableModel::uniform(), 100'000);
  CoincidenceCounts prev;
  for (double eff : {0.1, 0.3, 0.7, 1.0}) {
    c.response_a = c.response_b = DetectorResponse::linear(eff);
    const auto r = run(c).counts;
    EXPECT_GE(r.n_pp, prev.n_pp);
    EXPECT_GE(r.n_mm, prev.n_mm);
    EXPECT_GE(r.singles_a_plus, prev.singles_a_plus);
    EXPECT_GE(r.singles_b_minus, prev.singles_b_minus);
    prev = r;
  }
}

TEST(Engine, ReproducibleAndParallelEqualsReference) {
  auto c = cascade(HiddenVariableModel::smeared(Angle(0.1), 0.3), 200'000);
  c.retain_events = true;
  c.jitter_sigma = 1e-9;
  c.setting_a = Angle(0.4);
  const auto ref = run_reference(c);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const auto r = run(c);
    EXPECT_EQ(r.counts, ref.counts);
    EXPECT_EQ(r.events, ref.events);
  }
  c.seed = 2;
  EXPECT_NE(run(c).counts, ref.counts);
}

TEST(Engine, EventsAreSortedAndCounted) {
  auto c = cascade(HiddenVariableModel::uniform(), 70'000);
  c.retain_events = true;
  c.jitter_sigma = 1e-6;
  const auto r = run(c);
  for (const auto& s : r.events.times) EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(r.events.stream(Side::A, Channel::Plus).size(), r.counts.singles_a_plus);
  EXPECT_EQ(count_coincidences(r.events, c.window).n_pp, r.counts.n_pp);
}

TEST(Engine, EventCapOverflows) {
  auto c = cascade(HiddenVariableModel::uniform(), 10'000);
  c.retain_events = true;
  c.max_events = 100;
  EXPECT_THROW(run(c), EventOverflow);
  c.retain_events = false;
  EXPECT_NO_THROW(run(c));
}

TEST(Engine, ZeroPairsIsEmpty) {
  auto c = cascade(HiddenVariableModel::uniform(), 0);
  c.accidental_mode = AccidentalMode::Subtract;
  const auto r = run(c);
  EXPECT_EQ(r.counts.total_raw(), 0u);
  EXPECT_EQ(r.events.total(), 0u);
}

TEST(Engine, ConfigValidation) {
  auto c = cascade(HiddenVariableModel::uniform(), 10);
  c.window = 0.0;
  EXPECT_THROW(run(c), ConfigError);
  c = pdc(10);
  c.analyzer_a = AnalyzerKind::PolarizerAtSetting;
  EXPECT_THROW(run(c), ConfigError);
  c = cascade(HiddenVariableModel::uniform(), 10);
  c.jitter_sigma = -1.0;
  EXPECT_THROW(run(c), ConfigError);
  EXPECT_THROW(sweep(cascade(HiddenVariableModel::uniform(), 10), Side::A, {}), ConfigError);
}

TEST(Engine, SweepSeedsArePerPoint) {
  auto c = cascade(HiddenVariableModel::uniform(), 20'000);
  const std::vector<Angle> values{Angle(0.1), Angle(0.2)};
  const auto all = sweep(c, Side::B, values);
  c.setting_b = Angle(0.2);
  c.seed = derive_seed(1, 2);
  EXPECT_EQ(run(c).counts, all[1]);
}

TEST(Engine, AccidentalSubtraction) {
  auto c = cascade(HiddenVariableModel::uniform(), 200'000);
  c.window = 1e-6;
  c.accidental_mode = AccidentalMode::Subtract;
  const auto r = run(c).counts;
  const double expected = static_cast<double>(r.singles_a_plus) * r.singles_b_plus * c.window / r.duration_s;
  EXPECT_NEAR(r.accidentals.pp, expected, 1e-9 * expected);
  EXPECT_NEAR(r.net(Channel::Plus, Channel::Plus), r.n_pp - expected, 1e-6);
  c.accidental_mode = AccidentalMode::EstimateOnly;
  const auto e = run(c).counts;
  EXPECT_EQ(e.net(Channel::Plus, Channel::Plus), static_cast<double>(e.n_pp));
  EXPECT_GT(e.accidentals.pp, 0.0);
}

TEST(Engine, SimultaneousFiringsAreReported) {
  auto c = cascade(HiddenVariableModel::uniform(), 200'000);
  const auto r = run(c).counts;
  // P(both) = E[cos^2 sin^2] = 1/8 for a uniform angle
  EXPECT_TRUE(oracle::binomial_agrees(r.simultaneous_a, r.n_pairs_emitted, 0.125, 4.0));
  c.simultaneous_policy = SimultaneousPolicy::PickRandom;
  const auto p = run(c).counts;
  EXPECT_EQ(p.singles_a_plus + p.singles_a_minus + p.simultaneous_a,
            r.singles_a_plus + r.singles_a_minus);
}

TEST(Engine, DropBothAgreesWithAnalyticPolicy) {
  for (double eff : {0.05, 1.0}) {
    auto c = cascade(HiddenVariableModel::uniform(), 1'000'000);
    c.response_a = c.response_b = DetectorResponse::linear(eff);
    c.simultaneous_policy = SimultaneousPolicy::DropBoth;
    c.setting_a = Angle(0.3);
    const auto r = run(c).counts;
    const auto p = channel_probabilities(c.source.hv_model, c.setting_a, c.setting_b, c.response_a,
                                         c.response_b, SimultaneousPolicy::DropBoth);
    EXPECT_TRUE(oracle::binomial_agrees(r.n_pp, r.n_pairs_emitted, p.p_pp, 4.0)) << eff;
    EXPECT_TRUE(oracle::binomial_agrees(r.singles_a_plus, r.n_pairs_emitted, p.s_a, 4.0)) << eff;
  }
}

TEST(Engine, DropBothBiasScalesWithEfficiency) {
  // Relative change of the ++ curve from discarding double firings grows
  // roughly linearly in the efficiency and vanishes as it goes to zero.
  const auto u = HiddenVariableModel::uniform();
  auto rel = [&](double eff, double a) {
    const auto r = DetectorResponse::linear(eff);
    const double keep = channel_probabilities(u, Angle(a), Angle(0), r, r).p_pp;
    const double drop = channel_probabilities(u, Angle(a), Angle(0), r, r, SimultaneousPolicy::DropBoth).p_pp;
    return (keep - drop) / keep;
  };
  for (double a : {0.0, 0.5, kPi / 2}) {
    EXPECT_LT(rel(0.01, a), 0.01);
    EXPECT_LT(rel(0.05, a), 0.05);
    EXPECT_GT(rel(0.05, a), rel(0.01, a));
  }
}
