#include "lrsim/belltests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrsim/errors.hpp"

namespace lrsim {
namespace {

// First-order binomial error of a correlation from n raw coincidences.
double correlation_variance(const ChannelTable& t, double e) {
  const double n = t.raw_total();
  return n > 0.0 ? std::max(0.0, 1.0 - e * e) / n : 0.0;
}

// Linear interpolation of a periodic curve sampled at unsorted points.
class PeriodicCurve {
 public:
  PeriodicCurve(std::span<const double> x, std::span<const double> y, double period)
      : period_(period) {
    for (std::size_t i = 0; i < x.size(); ++i) points_.push_back({wrap(x[i], period), y[i]});
    std::sort(points_.begin(), points_.end());
    // drop the duplicate that wrapping creates when both ends of a period are sampled
    points_.erase(std::unique(points_.begin(), points_.end(),
                              [](auto& p, auto& q) { return p.first == q.first; }),
                  points_.end());
  }

  double operator()(double x) const {
    x = wrap(x, period_);
    auto hi = std::lower_bound(points_.begin(), points_.end(), std::pair{x, -1e300});
    const auto& right = hi == points_.end() ? points_.front() : *hi;
    const auto& left = hi == points_.begin() ? points_.back() : *(hi - 1);
    double x0 = left.first;
    double x1 = right.first;
    if (x1 <= x0) x1 += period_;
    double xx = x < x0 ? x + period_ : x;
    if (x1 == x0) return left.second;
    const double t = (xx - x0) / (x1 - x0);
    return left.second + t * (right.second - left.second);
  }

 private:
  double period_;
  std::vector<std::pair<double, double>> points_;
};

double relative_spread(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return mean > 0.0 ? (*hi - *lo) / mean : 0.0;
}

}  // namespace

ChannelTable ChannelTable::from_counts(const CoincidenceCounts& c) {
  ChannelTable t;
  t.pp = c.net(Channel::Plus, Channel::Plus);
  t.pm = c.net(Channel::Plus, Channel::Minus);
  t.mp = c.net(Channel::Minus, Channel::Plus);
  t.mm = c.net(Channel::Minus, Channel::Minus);
  t.singles_a_plus = static_cast<double>(c.singles_a_plus);
  t.singles_b_plus = static_cast<double>(c.singles_b_plus);
  t.duration = c.duration_s;
  t.raw_pp = static_cast<double>(c.n_pp);
  t.raw_pm = static_cast<double>(c.n_pm);
  t.raw_mp = static_cast<double>(c.n_mp);
  t.raw_mm = static_cast<double>(c.n_mm);
  t.raw_singles_a_plus = t.singles_a_plus;
  t.raw_singles_b_plus = t.singles_b_plus;
  return t;
}

ChannelTable ChannelTable::from_probabilities(const ChannelProbabilities& p) {
  ChannelTable t;
  t.pp = p.p_pp;
  t.pm = p.p_pm;
  t.mp = p.p_mp;
  t.mm = p.p_mm;
  t.singles_a_plus = p.s_a;
  t.singles_b_plus = p.s_b;
  t.duration = 1.0;
  return t;
}

double correlation(const ChannelTable& t) {
  const double total = t.total();
  if (!(total > 0.0)) throw UndefinedStatistic("correlation undefined: zero total coincidences");
  return (t.pp - t.pm - t.mp + t.mm) / total;
}

double correlation(const CoincidenceCounts& counts) {
  return correlation(ChannelTable::from_counts(counts));
}

BellResult chsh(const std::array<ChannelTable, 4>& tables) {
  std::array<double, 4> e{};
  double variance = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    e[i] = correlation(tables[i]);
    variance += correlation_variance(tables[i], e[i]);
  }
  BellResult r;
  r.statistic = std::abs(e[0] - e[1]) + std::abs(e[2] + e[3]);
  r.bound = 2.0;
  r.violated = r.statistic > r.bound;
  r.standard_error = std::sqrt(variance);
  return r;
}

BellResult ch74(const std::array<ChannelTable, 4>& tables, const ChannelTable& singles_a_prime,
                const ChannelTable& singles_b) {
  const double duration = tables[0].duration;
  auto same = [&](const ChannelTable& t) {
    return std::abs(t.duration - duration) <= 1e-12 * std::max(1.0, std::abs(duration));
  };
  if (!std::all_of(tables.begin(), tables.end(), same) || !same(singles_a_prime) ||
      !same(singles_b))
    throw ConfigError("ch74: all runs must share one duration");
  if (!(duration > 0.0)) {
    // an empty run has no counts and cannot violate anything
    return {0.0, 0.0, false, 0.0};
  }

  const double numerator = tables[0].pp - tables[1].pp + tables[2].pp + tables[3].pp -
                           singles_a_prime.singles_a_plus - singles_b.singles_b_plus;
  const double raw_sum = tables[0].raw_pp + tables[1].raw_pp + tables[2].raw_pp +
                         tables[3].raw_pp + singles_a_prime.raw_singles_a_plus +
                         singles_b.raw_singles_b_plus;
  BellResult r;
  r.statistic = numerator / duration;
  r.bound = 0.0;
  r.violated = r.statistic > r.bound;
  r.standard_error = std::sqrt(raw_sum) / duration;
  return r;
}

CurveSummary curve_summary(std::span<const double> settings, std::span<const double> rates) {
  if (settings.size() != rates.size()) throw ConfigError("curve_summary: size mismatch");
  if (rates.size() < 2) throw ConfigError("curve_summary needs at least two points");
  const auto lo = std::min_element(rates.begin(), rates.end());
  const auto hi = std::max_element(rates.begin(), rates.end());
  CurveSummary s;
  s.settings.assign(settings.begin(), settings.end());
  s.rates.assign(rates.begin(), rates.end());
  s.max = *hi;
  s.min = *lo;
  s.argmax = settings[static_cast<std::size_t>(hi - rates.begin())];
  s.argmin = settings[static_cast<std::size_t>(lo - rates.begin())];
  if (!(s.max + s.min > 0.0)) throw UndefinedStatistic("visibility undefined: all-zero curve");
  s.visibility = s.max == s.min ? 0.0 : (s.max - s.min) / (s.max + s.min);
  return s;
}

CurveSummary curve_summary(std::span<const Angle> settings,
                           std::span<const CoincidenceCounts> counts) {
  if (settings.size() != counts.size()) throw ConfigError("curve_summary: size mismatch");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    x.push_back(settings[i].rad());
    const auto n = static_cast<double>(counts[i].n_pairs_emitted);
    y.push_back(n > 0.0 ? counts[i].net(Channel::Plus, Channel::Plus) / n : 0.0);
  }
  return curve_summary(x, y);
}

const char* to_string(RiDiagnosis d) {
  switch (d) {
    case RiDiagnosis::FullRI: return "FullRI";
    case RiDiagnosis::BinaryRI: return "BinaryRI";
    case RiDiagnosis::CompleteFailure: return "CompleteFailure";
    case RiDiagnosis::Indeterminate: return "Indeterminate";
  }
  return "?";
}

RiDiagnosis ri_diagnostics(std::span<const FixedSettingCurve> curves, const RiThresholds& th) {
  if (curves.size() < 2) throw ConfigError("ri_diagnostics needs at least two fixed-setting curves");
  for (const auto& c : curves) {
    if (c.settings.size() < 2 || c.coincidence_rates.size() != c.settings.size() ||
        c.singles_rates.size() != c.settings.size())
      throw ConfigError("ri_diagnostics: each curve needs >= 2 points with singles");
  }

  double singles_visibility = 0.0;
  double singles_spread = 0.0;
  for (const auto& c : curves) {
    const auto [lo, hi] = std::minmax_element(c.singles_rates.begin(), c.singles_rates.end());
    if (*hi + *lo > 0.0) singles_visibility = std::max(singles_visibility, (*hi - *lo) / (*hi + *lo));
    singles_spread = std::max(singles_spread, relative_spread(c.singles_rates));
  }
  if (singles_visibility >= th.singles_failure_visibility) return RiDiagnosis::CompleteFailure;
  if (singles_spread > th.singles_flatness) return RiDiagnosis::Indeterminate;

  // Translation collapse: every curve as a function of (setting - fixed) on a common grid.
  std::vector<PeriodicCurve> shifted;
  for (const auto& c : curves) {
    std::vector<double> delta;
    for (double x : c.settings) delta.push_back(x - c.fixed_setting);
    shifted.emplace_back(delta, c.coincidence_rates, th.period);
  }
  double worst_rms = 0.0;
  for (std::size_t k = 1; k < shifted.size(); ++k) {
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t g = 0; g < th.grid_points; ++g) {
      const double x = th.period * static_cast<double>(g) / static_cast<double>(th.grid_points);
      const double r = shifted[0](x);
      diff2 += (shifted[k](x) - r) * (shifted[k](x) - r);
      ref2 += r * r;
    }
    worst_rms = std::max(worst_rms, ref2 > 0.0 ? std::sqrt(diff2 / ref2) : 0.0);
  }
  if (worst_rms <= th.collapse_rms) return RiDiagnosis::FullRI;

  std::vector<double> maxima;
  for (const auto& c : curves)
    maxima.push_back(*std::max_element(c.coincidence_rates.begin(), c.coincidence_rates.end()));
  if (relative_spread(maxima) > th.maxima_variation) return RiDiagnosis::BinaryRI;
  return RiDiagnosis::Indeterminate;
}

}  // namespace lrsim
