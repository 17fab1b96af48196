#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sdcrank {

// splitmix64 finalizer; full-period bijection on 64-bit values.
constexpr std::uint64_t mix_bits(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic sub-seed for a numbered stream (column, grid point,
// replication). Mixing both arguments keeps streams stable when unrelated
// indices change.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    return mix_bits(base ^ mix_bits(stream + 0x632BE59BD9B4E019ULL));
}

// Seeded generator with samplers implemented on top of the raw 64-bit
// stream, so sequences do not depend on the standard library's
// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (~std::uint64_t{0} / bound) * bound;
        std::uint64_t x = next_u64();
        while (x >= threshold) x = next_u64();
        return x % bound;
    }

    // Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.below(i)]);
    }
}

}  // namespace sdcrank
