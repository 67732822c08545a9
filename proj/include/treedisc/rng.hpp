#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace treedisc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded 64-bit generator. Every randomized operation in the library takes an
// explicit seed or one of these, and all derived values go through the fixed
// formulas below, so identical seeds give identical results on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // 53-bit double in [0,1). Avoids std::uniform_real_distribution, whose
    // output is implementation-defined.
    double next_double() { return double(engine_() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool() { return (engine_() >> 63) != 0; }

    // Independent child stream; the same (seed, tag) pair always yields the
    // same stream regardless of how much the parent has been consumed.
    Rng split(std::uint64_t tag) const {
        return Rng(splitmix64(seed_ ^ (0x51ed2701ULL + tag * 0x9e3779b97f4a7c15ULL)));
    }

    template <class It>
    void shuffle(It first, It last) {
        auto n = std::uint64_t(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            std::uint64_t j = next_below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace treedisc
