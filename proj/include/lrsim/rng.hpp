#pragma once

#include <cstdint>
#include <random>

namespace lrsim {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed derivation: the same (master, stream, substream)
/// always gives the same seed, independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t substream = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ (substream * 0xd6e8feb86659fd93ULL));
}

/// A single random substream. Owns its state; not shareable across threads.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return normal_(engine_); }
  double exponential(double rate) { return exponential_(engine_) / rate; }
  bool coin() { return (engine_() >> 63) != 0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace lrsim
