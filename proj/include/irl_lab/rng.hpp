#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace irl_lab {

// Seedable, bit-portable RNG. mt19937_64 output is fixed by the standard;
// the distributions below avoid std::uniform_*_distribution, whose results
// vary between standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1), 53-bit mantissa.
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    int next_below(int n) {
        const int v = static_cast<int>(next_unit() * n);
        return v >= n ? n - 1 : v;
    }

    // Standard normal via Box-Muller (always consumes two draws).
    double next_gaussian() {
        double u1 = next_unit();
        const double u2 = next_unit();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Index sampled from an unnormalized nonnegative weight row by inverse CDF.
    int sample_categorical(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_unit() * total;
        for (size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace irl_lab
