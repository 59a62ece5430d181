// Seeded random stream used by every stochastic component.
//
// mt19937_64 output is bit-exact across platforms; the distribution
// transforms are done by hand because the std:: distributions are
// implementation-defined and would invalidate frozen test values.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace uavloc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return (engine_() >> 11) * (1.0 / 9007199254740992.0); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive integer range.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform() * (static_cast<double>(hi) - lo + 1.0));
    }

    // Standard normal via Box-Muller (pairs cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double rayleigh(double sigma) {
        double u = 1.0 - uniform();  // (0, 1]
        return sigma * std::sqrt(-2.0 * std::log(u));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            std::swap(v[static_cast<std::size_t>(i)],
                      v[static_cast<std::size_t>(uniform_int(0, i))]);
        }
    }

    // Stateless substream derivation (splitmix64 of base ^ stream id), so
    // per-sample streams stay independent of iteration order.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
        std::uint64_t z = base ^ (stream + 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    Rng fork(std::uint64_t stream) { return Rng(derive_seed(next_u64(), stream)); }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace uavloc
