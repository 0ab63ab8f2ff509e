#pragma once

#include <cstdint>

#include "signal.hpp"

namespace tflat {

// splitmix64
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // inclusive range; modulo bias is below 2^-40 for the ranges used here
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// entries with real and imaginary parts uniform in [-1, 1)
inline Window random_window(SplitMix64& rng, std::size_t L) {
    Window w(L);
    for (auto& v : w) {
        double re = rng.uniform(-1.0, 1.0);
        double im = rng.uniform(-1.0, 1.0);
        v = {re, im};
    }
    return w;
}

}  // namespace tflat
