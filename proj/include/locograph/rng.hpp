#pragma once

// Seeded randomness for the samplers. xoshiro256** (Blackman & Vigna,
// public-domain reference implementation) seeded through splitmix64, so
// streams are identical across platforms and standard libraries. All draws
// used in probabilities are integer threshold comparisons; no floating
// point enters any sampling decision.

#include <gmpxx.h>

#include <cstdint>

namespace loco {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Xoshiro256ss {
  public:
    explicit Xoshiro256ss(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased uniform draw from [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform big integer in [0, bound), bound >= 1. Draws ceil(bits/64)
    // words, masks the excess top bits, rejects values >= bound; the
    // acceptance probability exceeds 1/2 per round.
    mpz_class below(const mpz_class& bound) {
        if (bound <= 1) return 0;
        const size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const size_t words = (bits + 63) / 64;
        const int top_shift = static_cast<int>(words * 64 - bits);
        mpz_class x, tmp;
        while (true) {
            x = 0;
            for (size_t i = 0; i < words; ++i) {
                uint64_t w = next();
                if (i == 0) w >>= top_shift;
                mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 64);
                mpz_import(tmp.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &w);
                x += tmp;
            }
            if (x < bound) return x;
        }
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

// Per-sample stream derivation: mixes (seed, index) so batch samples are
// order-independent and reproducible.
inline uint64_t derive_stream(uint64_t seed, uint64_t index) {
    uint64_t st = seed ^ (0x632be59bd9b4e019ULL + index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(st);
}

}  // namespace loco
