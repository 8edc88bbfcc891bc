#pragma once

#include <cstdint>

namespace quadric {

// Deterministic generator (splitmix64). Test fixtures and golden outputs
// depend on the exact stream, so no std::uniform_* anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via 128-bit multiply-shift.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool chance(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return next() < static_cast<std::uint64_t>(p * 18446744073709551615.0);
    }

private:
    std::uint64_t state_;
};

} // namespace quadric
