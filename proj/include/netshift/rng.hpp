#pragma once

#include <cmath>
#include <cstdint>

namespace netshift {

// Deterministic splittable RNG. Every consumer derives its own stream from a
// single master seed plus a stream index, so replicate r of experiment e sees
// the same draws no matter what ran before it.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {
        // decorrelate trivially related seeds before first use
        next_u64();
        next_u64();
    }

    // Child stream; mixing is one-way so siblings do not collide.
    Rng split(uint64_t stream) const {
        uint64_t s = mix(state_ ^ mix(stream ^ 0x9e3779b97f4a7c15ULL));
        return Rng(s, 0);
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // uniform on [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer on [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        // rejection sampling to kill modulo bias
        uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    // standard normal via Box-Muller, one spare cached
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Poisson via inversion for small mean, PTRS-free simple loop is fine here
    int poisson(double mean) {
        double l = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > l);
        return k - 1;
    }

private:
    Rng(uint64_t raw_state, int) : state_(raw_state) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace netshift
