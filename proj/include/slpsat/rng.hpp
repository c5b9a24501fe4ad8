#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace slpsat {

// Deterministic counter-based random stream keyed by a 64-bit seed.
// Output i is a SplitMix64-style mix of (key, i), so the stream is a pure
// function of (seed, counter): identical seeds reproduce identical draws on
// every platform, and child streams obtained via split() are independent of
// how much of the parent has been consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(seed), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_, counter_++); }

    // Independent child stream labelled by `label`.
    Rng split(std::uint64_t label) const {
        return Rng(mix(key_, 0x9e3779b97f4a7c15ULL ^ label));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    // Uniform in [0, n), n >= 1. Unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        for (;;) {
            std::uint64_t r = next_u64();
            if (r < limit) return r % n;
        }
    }

    // Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, n), n >= 1, for big integers. Rejection sampling on
    // bitlen(n-1)-bit draws.
    mpz_class mpz_below(const mpz_class& n) {
        if (n <= 1) return 0;
        mpz_class top = n - 1;
        const std::size_t bits = mpz_sizeinbase(top.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        for (;;) {
            mpz_class r = 0;
            for (std::size_t w = 0; w < words; ++w) {
                r <<= 64;
                mpz_class chunk;
                std::uint64_t u = next_u64();
                mpz_import(chunk.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
                r |= chunk;
            }
            r >>= words * 64 - bits;
            if (r < n) return r;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t key, std::uint64_t ctr) {
        std::uint64_t z = key + 0x9e3779b97f4a7c15ULL * (ctr + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace slpsat
