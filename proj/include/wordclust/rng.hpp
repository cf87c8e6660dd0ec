#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace wordclust {

/// Deterministic random source. The engine (mt19937_64) is fully specified by
/// the standard; all sampling on top of it is hand-rolled here because the
/// standard *distributions* are implementation-defined and would break
/// bit-for-bit reproducibility across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 bits of randomness.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t zone = bound * (UINT64_MAX / bound);
        std::uint64_t r = next_u64();
        while (r >= zone) r = next_u64();
        return static_cast<std::size_t>(r % bound);
    }

    /// Index drawn with probability weights[i] / sum(weights).
    /// Zero-weight entries are never selected. Total weight must be > 0.
    std::size_t weighted_index(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        const double target = uniform01() * total;
        double cum = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            cum += weights[i];
            last_positive = i;
            if (cum > target) return i;
        }
        return last_positive; // target == total up to rounding
    }

    /// Fisher-Yates shuffle, deterministic given the seed.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace wordclust
