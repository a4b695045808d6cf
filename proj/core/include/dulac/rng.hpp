#pragma once

// Deterministic random helpers. All randomness in the library flows through
// mt19937_64 seeded explicitly, so runs with equal seeds are reproducible.

#include "dulac/rational.hpp"

#include <cstdint>
#include <random>

namespace dulac {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // exact rational on a 2^20 grid over [lo, hi]
    Rational rational_in(const Rational& lo, const Rational& hi) {
        const std::uint64_t grid = 1u << 20;
        std::uint64_t t = gen_() % (grid + 1);
        return lo + (hi - lo) * Rational(t) / Rational(grid);
    }

    double real_in(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen_);
    }

    std::uint64_t below(std::uint64_t n) { return n ? gen_() % n : 0; }

  private:
    std::mt19937_64 gen_;
};

// stable mixing for per-candidate seeds
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t rank) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (rank + 1);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

} // namespace dulac
