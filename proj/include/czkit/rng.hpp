#pragma once

#include <cstdint>
#include <random>

namespace czkit {

// Deterministic RNG. Raw engine output is mapped to doubles/ints by hand so
// that streams do not depend on the standard library's distribution
// implementations; reports generated from the same seed are byte-identical.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, bound), bound > 0
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling keeps the draw unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    int index(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    bool coin(double p = 0.5) { return uniform() < p; }

    // uniform on the dyadic lattice k/2^bits within [lo, hi]
    double dyadic(double lo, double hi, int bits = 10) {
        const double scale = static_cast<double>(1 << bits);
        const auto steps = static_cast<std::uint64_t>((hi - lo) * scale);
        return lo + static_cast<double>(below(steps + 1)) / scale;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace czkit
