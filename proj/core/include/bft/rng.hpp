#pragma once

#include <cstdint>

namespace bft {

// Counter-based pseudorandom generator. Every draw is a pure function of
// (key, counter), so substreams derived per trial are independent of
// execution order and results are reproducible under parallel execution.
class Rng {
public:
    explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

    // Derived stream; injective in idx for a fixed parent key.
    Rng stream(uint64_t idx) const {
        Rng r(0);
        r.key_ = mix(key_ ^ mix(idx + 0x632be59bd9b4e019ULL));
        r.ctr_ = 0;
        return r;
    }

    uint64_t next() {
        uint64_t z = key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL;
        return mix(z);
    }

    // Uniform in [0, m); rejection sampling to avoid modulo bias.
    uint64_t below(uint64_t m) {
        if (m <= 1) return 0;
        uint64_t mask = ~uint64_t(0) >> __builtin_clzll(m | 1);
        for (;;) {
            uint64_t v = next() & mask;
            if (v < m) return v;
        }
    }

    bool bit() { return next() & 1; }

    // Uniform double in [0, 1).
    double real() { return double(next() >> 11) * 0x1.0p-53; }

    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

}  // namespace bft
