#pragma once

#include <cstdint>
#include <random>

namespace qrec {

/// Seeded deterministic generator. All sampling goes through the helpers
/// below so results are reproducible across platforms (no
/// implementation-defined distributions).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    /// Deterministic per-row seed for parameter sweeps (splitmix64 step).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qrec
