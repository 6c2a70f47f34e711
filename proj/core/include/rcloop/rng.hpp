#pragma once

#include <cstdint>
#include <random>

namespace rcloop {

// SplitMix64 finaliser; used as a counter-based hash.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replica, std::uint64_t stream) {
  return mix64(mix64(mix64(seed) ^ replica) ^ (stream * 0xd1b54a32d192ed03ULL));
}

inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// Uniform in [0,1) as a pure function of the counters.
inline double counter_uniform(std::uint64_t seed, std::uint64_t replica, std::uint64_t index) {
  return to_unit(mix64(stream_key(seed, replica, 0x5eedULL) ^ mix64(index)));
}

// Sequential generator for Markov chains; one per (seed, replica, stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t replica, std::uint64_t stream = 0)
      : eng_(stream_key(seed, replica, stream)) {}
  std::uint64_t next() { return eng_(); }
  double uniform() { return to_unit(eng_()); }
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rcloop
