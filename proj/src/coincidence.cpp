#include "lrsim/coincidence.hpp"

#include <algorithm>
#include <tuple>

#include "lrsim/errors.hpp"

namespace lrsim {

std::size_t EventStreams::total() const {
  std::size_t n = 0;
  for (const auto& s : times) n += s.size();
  return n;
}

std::vector<Event> EventStreams::merged() const {
  std::vector<Event> out;
  out.reserve(total());
  for (Side side : {Side::A, Side::B})
    for (Channel channel : {Channel::Plus, Channel::Minus})
      for (double t : stream(side, channel)) out.push_back({side, channel, t});
  std::stable_sort(out.begin(), out.end(), [](const Event& x, const Event& y) {
    return std::tie(x.time_s, x.side, x.channel) < std::tie(y.time_s, y.side, y.channel);
  });
  return out;
}

double AccidentalEstimate::get(Channel a, Channel b) const {
  if (a == Channel::Plus) return b == Channel::Plus ? pp : pm;
  return b == Channel::Plus ? mp : mm;
}

std::uint64_t CoincidenceCounts::raw(Channel a, Channel b) const {
  if (a == Channel::Plus) return b == Channel::Plus ? n_pp : n_pm;
  return b == Channel::Plus ? n_mp : n_mm;
}

double CoincidenceCounts::net(Channel a, Channel b) const {
  const double r = static_cast<double>(raw(a, b));
  return accidentals_subtracted ? r - accidentals.get(a, b) : r;
}

std::uint64_t CoincidenceCounts::singles(Side side, Channel channel) const {
  if (side == Side::A) return channel == Channel::Plus ? singles_a_plus : singles_a_minus;
  return channel == Channel::Plus ? singles_b_plus : singles_b_minus;
}

std::uint64_t match_coincidences(std::span<const double> a, std::span<const double> b,
                                 double window) {
  std::uint64_t count = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j] - window) {
      ++i;  // a[i] is too early for every remaining b
    } else if (b[j] < a[i] - window) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

CoincidenceCounts count_coincidences(const EventStreams& events, double window) {
  if (!(window > 0.0)) throw ConfigError("coincidence window must be > 0");
  auto match = [&](Channel ca, Channel cb) {
    return match_coincidences(events.stream(Side::A, ca), events.stream(Side::B, cb), window);
  };
  CoincidenceCounts c;
  c.n_pp = match(Channel::Plus, Channel::Plus);
  c.n_pm = match(Channel::Plus, Channel::Minus);
  c.n_mp = match(Channel::Minus, Channel::Plus);
  c.n_mm = match(Channel::Minus, Channel::Minus);
  c.singles_a_plus = events.stream(Side::A, Channel::Plus).size();
  c.singles_a_minus = events.stream(Side::A, Channel::Minus).size();
  c.singles_b_plus = events.stream(Side::B, Channel::Plus).size();
  c.singles_b_minus = events.stream(Side::B, Channel::Minus).size();
  c.window_s = window;
  return c;
}

AccidentalEstimate estimate_accidentals(const CoincidenceCounts& counts, double duration,
                                        double window) {
  if (!(duration > 0.0)) throw ConfigError("accidental estimate needs duration > 0");
  if (!(window > 0.0)) throw ConfigError("accidental estimate needs window > 0");
  auto acc = [&](Channel a, Channel b) {
    return static_cast<double>(counts.singles(Side::A, a)) *
           static_cast<double>(counts.singles(Side::B, b)) * window / duration;
  };
  return {acc(Channel::Plus, Channel::Plus), acc(Channel::Plus, Channel::Minus),
          acc(Channel::Minus, Channel::Plus), acc(Channel::Minus, Channel::Minus)};
}

}  // namespace lrsim
