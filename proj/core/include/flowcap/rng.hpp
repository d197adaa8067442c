#ifndef FLOWCAP_RNG_HPP
#define FLOWCAP_RNG_HPP

#include <cstdint>

namespace flowcap {

// Counter-based generator: sample i is a pure function of (seed, i),
// so Monte Carlo results do not depend on evaluation order.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from (seed, counter, stream).
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter,
                              std::uint64_t stream = 0) {
  std::uint64_t h = splitmix64(seed ^ splitmix64(counter ^ splitmix64(stream)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter,
                              std::uint64_t stream, double lo, double hi) {
  return lo + (hi - lo) * counter_uniform(seed, counter, stream);
}

/// Small sequential helper for places where a stream of draws is clearer.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return counter_uniform(seed_, counter_++, 0, lo, hi);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace flowcap

#endif
