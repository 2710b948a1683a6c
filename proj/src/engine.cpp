#include "lrsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lrsim/errors.hpp"
#include "lrsim/rng.hpp"

namespace lrsim {
namespace {

struct BlockResult {
  EventStreams events;  // block-local times, each stream sorted
  double end_time = 0.0;
  std::uint64_t simultaneous_a = 0;
  std::uint64_t simultaneous_b = 0;
};

void record(EventStreams& events, Side side, const DetectionOutcome& d) {
  if (d.plus_fired) events.stream(side, Channel::Plus).push_back(d.plus_time);
  if (d.minus_fired) events.stream(side, Channel::Minus).push_back(d.minus_time);
}

BlockResult simulate_block(const ExperimentConfig& config, std::uint64_t block) {
  const std::uint64_t first = block * kBlockPairs;
  const std::uint64_t count = std::min(kBlockPairs, config.n_pairs - first);
  RandomStream rng(derive_seed(config.seed, 0, block));

  BlockResult out;
  for (auto& s : out.events.times) s.reserve(count);
  double clock = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const EmittedPair pair = emit_pair(config.source, rng, clock);
    clock = pair.emit_time;

    const ChannelIntensities ia = analyze(pair.side_a, config.analyzer_a, config.setting_a);
    DetectionOutcome da = detect(ia, config.response_a, config.jitter_sigma, pair.emit_time, rng,
                                 config.source.pulse_duration);
    out.simultaneous_a += da.both();
    da = resolve_simultaneous(da, config.simultaneous_policy, rng);

    const ChannelIntensities ib = analyze(pair.side_b, config.analyzer_b, config.setting_b);
    DetectionOutcome db = detect(ib, config.response_b, config.jitter_sigma, pair.emit_time, rng,
                                 config.source.pulse_duration);
    out.simultaneous_b += db.both();
    db = resolve_simultaneous(db, config.simultaneous_policy, rng);

    record(out.events, Side::A, da);
    record(out.events, Side::B, db);
  }
  for (auto& s : out.events.times)
    if (!std::is_sorted(s.begin(), s.end())) std::sort(s.begin(), s.end());
  out.end_time = clock;
  return out;
}

std::uint64_t block_count(const ExperimentConfig& config) {
  return (config.n_pairs + kBlockPairs - 1) / kBlockPairs;
}

RunResult assemble(const ExperimentConfig& config, std::vector<BlockResult>& blocks) {
  std::uint64_t total_events = 0;
  for (const auto& b : blocks) total_events += b.events.total();
  if (config.retain_events && total_events > config.max_events) {
    std::ostringstream msg;
    msg << "event stream overflow: " << total_events << " events exceed max_events "
        << config.max_events;
    throw EventOverflow(msg.str());
  }

  EventStreams events;
  std::uint64_t simultaneous_a = 0;
  std::uint64_t simultaneous_b = 0;
  for (std::size_t k = 0; k < events.times.size(); ++k) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.events.times[k].size();
    events.times[k].reserve(n);
  }
  double offset = 0.0;
  for (auto& b : blocks) {
    for (std::size_t k = 0; k < events.times.size(); ++k)
      for (double t : b.events.times[k]) events.times[k].push_back(offset + t);
    offset += b.end_time;
    simultaneous_a += b.simultaneous_a;
    simultaneous_b += b.simultaneous_b;
    b.events = {};
  }
  // jitter can push events across block boundaries
  for (auto& s : events.times)
    if (!std::is_sorted(s.begin(), s.end())) std::sort(s.begin(), s.end());

  RunResult result;
  result.counts = count_coincidences(events, config.window);
  result.counts.n_pairs_emitted = config.n_pairs;
  result.counts.simultaneous_a = simultaneous_a;
  result.counts.simultaneous_b = simultaneous_b;
  result.counts.duration_s = config.duration();
  if (config.accidental_mode != AccidentalMode::None && result.counts.duration_s > 0.0) {
    result.counts.accidentals =
        estimate_accidentals(result.counts, result.counts.duration_s, config.window);
    result.counts.accidentals_subtracted = config.accidental_mode == AccidentalMode::Subtract;
  }
  if (config.retain_events) result.events = std::move(events);
  return result;
}

}  // namespace

void ExperimentConfig::validate() const {
  source.validate();
  response_a.validate();
  response_b.validate();
  if (!std::isfinite(setting_a.rad()) || !std::isfinite(setting_b.rad()))
    throw ConfigError("settings must be finite");
  if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma))
    throw ConfigError("jitter_sigma must be >= 0");
  if (!(window > 0.0) || !std::isfinite(window)) throw ConfigError("window must be > 0");
  if (max_events == 0) throw ConfigError("max_events must be > 0");
  if (source.kind == SourceKind::DegeneratePDC &&
      (analyzer_a == AnalyzerKind::PolarizerAtSetting ||
       analyzer_b == AnalyzerKind::PolarizerAtSetting))
    throw ConfigError(
        "a degenerate-PDC source needs the modulator + 45-degree prism analyzer on both sides");
}

double ExperimentConfig::duration() const {
  return static_cast<double>(n_pairs) / source.pair_rate;
}

void ExperimentConfig::set_setting(Side side, Angle value) {
  (side == Side::A ? setting_a : setting_b) = value;
}

ChannelIntensities analyze(const TwoComponentPulse& pulse, AnalyzerKind kind, Angle setting) {
  if (kind == AnalyzerKind::PolarizerAtSetting) return polarizer_project(pulse, setting);
  return wollaston_project(apply_modulator(pulse, 2.0 * setting));
}

RunResult run(const ExperimentConfig& config) {
  config.validate();
  const auto n_blocks = static_cast<std::int64_t>(block_count(config));
  std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < n_blocks; ++b)
    blocks[static_cast<std::size_t>(b)] = simulate_block(config, static_cast<std::uint64_t>(b));
  return assemble(config, blocks);
}

RunResult run_reference(const ExperimentConfig& config) {
  config.validate();
  std::vector<BlockResult> blocks;
  for (std::uint64_t b = 0; b < block_count(config); ++b)
    blocks.push_back(simulate_block(config, b));
  return assemble(config, blocks);
}

std::vector<CoincidenceCounts> sweep(const ExperimentConfig& config, Side side,
                                     std::span<const Angle> values) {
  if (values.empty()) throw ConfigError("sweep needs at least one setting");
  config.validate();
  std::vector<CoincidenceCounts> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    ExperimentConfig point = config;
    point.set_setting(side, values[i]);
    point.seed = derive_seed(config.seed, i + 1);
    point.retain_events = false;
    out.push_back(run(point).counts);
  }
  return out;
}

}  // namespace lrsim
