#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lrsim/detection.hpp"

namespace lrsim {

/// One time-tagged detection.
struct Event {
  Side side;
  Channel channel;
  double time_s;
};

/// Time-sorted detection times, one stream per (side, channel).
struct EventStreams {
  std::array<std::vector<double>, 4> times;

  static constexpr std::size_t index(Side side, Channel channel) {
    return 2 * static_cast<std::size_t>(side) + static_cast<std::size_t>(channel);
  }
  std::span<const double> stream(Side side, Channel channel) const {
    return times[index(side, channel)];
  }
  std::vector<double>& stream(Side side, Channel channel) { return times[index(side, channel)]; }

  std::size_t total() const;
  /// All events ordered by (time, side, channel).
  std::vector<Event> merged() const;

  bool operator==(const EventStreams&) const = default;
};

/// Estimated accidental coincidences per channel pair (counts, not rates).
struct AccidentalEstimate {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double get(Channel a, Channel b) const;
  bool operator==(const AccidentalEstimate&) const = default;
};

/// The 2x2 coincidence table at one setting pair, with singles per channel.
struct CoincidenceCounts {
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t singles_a_plus = 0;
  std::uint64_t singles_a_minus = 0;
  std::uint64_t singles_b_plus = 0;
  std::uint64_t singles_b_minus = 0;
  std::uint64_t n_pairs_emitted = 0;
  /// Pulses in which both outputs of a prism fired, counted before the policy.
  std::uint64_t simultaneous_a = 0;
  std::uint64_t simultaneous_b = 0;
  double duration_s = 0.0;
  double window_s = 0.0;
  AccidentalEstimate accidentals;
  bool accidentals_subtracted = false;

  std::uint64_t raw(Channel a, Channel b) const;
  /// Raw count, minus the accidental estimate when subtraction is enabled.
  double net(Channel a, Channel b) const;
  std::uint64_t singles(Side side, Channel channel) const;
  std::uint64_t total_raw() const { return n_pp + n_pm + n_mp + n_mm; }

  bool operator==(const CoincidenceCounts&) const = default;
};

/// Greedy earliest-first matching of two time-sorted streams: pairs are formed
/// when |t_a - t_b| <= window and each event is used at most once. This is a
/// maximum matching, so the count never decreases as the window grows.
std::uint64_t match_coincidences(std::span<const double> a, std::span<const double> b,
                                 double window);

/// Runs the matcher for all four channel pairs and fills in singles.
CoincidenceCounts count_coincidences(const EventStreams& events, double window);

/// Singles-product estimate S_i * S_j * window, accumulated over `duration`:
/// N_i * N_j * window / duration counts for channel pair (i, j).
AccidentalEstimate estimate_accidentals(const CoincidenceCounts& counts, double duration,
                                        double window);

}  // namespace lrsim
