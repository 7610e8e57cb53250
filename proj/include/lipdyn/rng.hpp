#pragma once

#include <cstdint>

namespace lipdyn {

/// Counter-based generator (splitmix64 stream). Draw i is a pure function of
/// (seed, i), so extending a sample never changes an already-drawn prefix and
/// parallel consumers can index disjoint counter ranges.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + uniform(counter) * (hi - lo);
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

}  // namespace lipdyn
