#pragma once

#include <array>
#include <span>
#include <vector>

#include "lrsim/analytic.hpp"
#include "lrsim/coincidence.hpp"

namespace lrsim {

/// Coincidence table in a form the statistics can share between Monte Carlo
/// counts and analytic probabilities.
struct ChannelTable {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;
  double singles_a_plus = 0.0;
  double singles_b_plus = 0.0;
  double duration = 1.0;
  /// Raw counts behind each entry for error propagation; all zero for exact
  /// (analytic) tables.
  double raw_pp = 0.0, raw_pm = 0.0, raw_mp = 0.0, raw_mm = 0.0;
  double raw_singles_a_plus = 0.0, raw_singles_b_plus = 0.0;

  double total() const { return pp + pm + mp + mm; }
  double raw_total() const { return raw_pp + raw_pm + raw_mp + raw_mm; }

  /// Uses net (accidental-subtracted, when enabled) coincidences.
  static ChannelTable from_counts(const CoincidenceCounts& counts);
  /// Exact table: probabilities per emitted pair, duration 1, zero errors.
  static ChannelTable from_probabilities(const ChannelProbabilities& p);
};

struct BellResult {
  double statistic = 0.0;
  double bound = 0.0;
  bool violated = false;
  double standard_error = 0.0;
};

/// E = (pp - pm - mp + mm) / total. Throws UndefinedStatistic on zero total.
double correlation(const ChannelTable& table);
double correlation(const CoincidenceCounts& counts);

/// S = |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|, bound 2.
/// Tables are ordered (a,b), (a,b'), (a',b), (a',b').
BellResult chsh(const std::array<ChannelTable, 4>& tables);

/// Clauser-Horne on unnormalised ++ data, per unit time:
/// N(a,b) - N(a,b') + N(a',b) + N(a',b') - N_A(a') - N_B(b) <= 0.
/// `singles_a_prime` supplies N_A(a') and `singles_b` supplies N_B(b).
/// All six inputs must share one duration (ConfigError otherwise).
BellResult ch74(const std::array<ChannelTable, 4>& tables, const ChannelTable& singles_a_prime,
                const ChannelTable& singles_b);

struct CurveSummary {
  std::vector<double> settings;
  std::vector<double> rates;
  double visibility = 0.0;
  double argmax = 0.0;
  double argmin = 0.0;
  double max = 0.0;
  double min = 0.0;
};

/// Visibility (max - min) / (max + min) from the sampled points, no fitting.
/// Needs at least two points and max + min > 0 (UndefinedStatistic otherwise).
CurveSummary curve_summary(std::span<const double> settings, std::span<const double> rates);

/// Curve of n_pp / n_pairs (net of accidentals when subtracted).
CurveSummary curve_summary(std::span<const Angle> settings,
                           std::span<const CoincidenceCounts> counts);

enum class RiDiagnosis { FullRI, BinaryRI, CompleteFailure, Indeterminate };

const char* to_string(RiDiagnosis d);

/// A coincidence curve over the variable setting with the other side held at
/// `fixed_setting`, plus the variable side's singles over the same settings.
struct FixedSettingCurve {
  double fixed_setting = 0.0;
  std::vector<double> settings;
  std::vector<double> coincidence_rates;
  std::vector<double> singles_rates;
};

struct RiThresholds {
  double singles_flatness = 0.02;        ///< relative (max - min) / mean
  double singles_failure_visibility = 0.95;
  double collapse_rms = 0.02;            ///< relative RMS after shifting by the fixed setting
  double maxima_variation = 0.05;        ///< relative spread of curve maxima
  std::size_t grid_points = 90;
  double period = kPolarizationPeriod;
};

/// Classifies the rotational-invariance regime from curves at several fixed settings.
RiDiagnosis ri_diagnostics(std::span<const FixedSettingCurve> curves,
                           const RiThresholds& thresholds = {});

}  // namespace lrsim
