#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrsim/angle.hpp"
#include "lrsim/coincidence.hpp"
#include "lrsim/detection.hpp"
#include "lrsim/source.hpp"

namespace lrsim {

enum class AnalyzerKind {
  PolarizerAtSetting,    ///< setting is a polarizer axis
  ModulatorPlusPrism45,  ///< setting is the modulator half-phase a (induced phase 2a)
};

enum class AccidentalMode { None, EstimateOnly, Subtract };

struct ExperimentConfig {
  SourceConfig source;
  Angle setting_a;
  Angle setting_b;
  AnalyzerKind analyzer_a = AnalyzerKind::PolarizerAtSetting;
  AnalyzerKind analyzer_b = AnalyzerKind::PolarizerAtSetting;
  DetectorResponse response_a;
  DetectorResponse response_b;
  double jitter_sigma = 0.0;  ///< seconds
  double window = 1e-9;       ///< seconds
  std::uint64_t n_pairs = 1'000'000;
  std::uint64_t seed = 1;
  SimultaneousPolicy simultaneous_policy = SimultaneousPolicy::KeepBoth;
  AccidentalMode accidental_mode = AccidentalMode::None;
  bool retain_events = true;
  std::uint64_t max_events = 50'000'000;

  /// Throws ConfigError; called by every entry point before any simulation.
  void validate() const;
  /// n_pairs / pair_rate
  double duration() const;

  Angle setting(Side side) const { return side == Side::A ? setting_a : setting_b; }
  void set_setting(Side side, Angle value);
};

struct RunResult {
  EventStreams events;  ///< empty unless retain_events
  CoincidenceCounts counts;
};

/// Pairs simulated per RNG substream. Fixed, so results do not depend on the
/// number of threads.
inline constexpr std::uint64_t kBlockPairs = 1 << 15;

/// Source -> analyzers -> detectors -> time tags -> windowed coincidences.
/// Blocks of pairs run under OpenMP; the result is identical for any thread count.
RunResult run(const ExperimentConfig& config);

/// Single-threaded reference of `run`: same kernel, blocks in order.
RunResult run_reference(const ExperimentConfig& config);

/// Re-runs the experiment at each value of one side's setting, holding the other
/// fixed. Point i uses seed derive_seed(config.seed, i + 1).
std::vector<CoincidenceCounts> sweep(const ExperimentConfig& config, Side side,
                                     std::span<const Angle> values);

/// Channel intensities behind one side's analyzer chain.
ChannelIntensities analyze(const TwoComponentPulse& pulse, AnalyzerKind kind, Angle setting);

}  // namespace lrsim
