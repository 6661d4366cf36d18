#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gsd {

// Mixes a base seed with stream tags so each consumer (dialogue, speaker,
// epoch, noise stream, ...) gets an independent substream. SplitMix64 finalizer.
inline std::uint64_t derive_seed(std::uint64_t base) { return base; }

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, Tags... rest) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL + tag * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return derive_seed(z, rest...);
}

// Deterministic RNG wrapper. All randomness in the project flows through this
// class so the consumption order is explicit and reproducible: uniform() draws
// one engine value, normal() draws two on every second call (Box-Muller pair,
// the spare is cached).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        // 53-bit mantissa from one 64-bit draw
        return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        // rejection sampling to kill modulo bias
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % n;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Fisher-Yates; std::shuffle is implementation-defined, this is pinned.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gsd
