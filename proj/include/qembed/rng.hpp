#pragma once

#include <cstdint>

namespace qembed {

// Deterministic, platform-independent generator. All randomness in the
// toolkit flows through this so that fixed seeds give bit-identical runs
// regardless of standard library implementation.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(splitmix(seed + 0x9e3779b97f4a7c15ULL)) {
        if (state_ == 0) state_ = 0x2545f4914f6cdd1dULL;
    }

    // xorshift64*
    uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dULL;
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    uint64_t below(uint64_t n) { return next() % n; }

    // Derive an independent stream, e.g. per thread or per word id.
    static uint64_t derive(uint64_t seed, uint64_t stream) {
        return splitmix(seed ^ splitmix(stream + 0x632be59bd9b4e019ULL));
    }

  private:
    static uint64_t splitmix(uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    uint64_t state_;
};

} // namespace qembed
