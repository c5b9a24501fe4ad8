#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "slpsat/errors.hpp"

namespace slpsat {

// Deterministic Miller-Rabin for 64-bit inputs. The fixed base set below is
// a proven witness set for every n < 3.3 * 10^24, so the answer is exact for
// the whole uint64 range. Modular arithmetic runs through GMP to avoid
// 128-bit overflow concerns.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    mpz_class nz(static_cast<unsigned long>(n));
    mpz_class nm1 = nz - 1;
    mpz_class dz(static_cast<unsigned long>(d));
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        mpz_class x;
        mpz_class az(static_cast<unsigned long>(a));
        mpz_powm(x.get_mpz_t(), az.get_mpz_t(), dz.get_mpz_t(), nz.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = (x * x) % nz;
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// The n smallest odd primes that are >= floor.
inline std::vector<long> smallest_odd_primes(std::size_t n, long floor = 3) {
    require(n >= 1, errc::invalid_argument, "need at least one prime");
    std::vector<long> out;
    long cand = floor < 3 ? 3 : floor;
    if (cand % 2 == 0) ++cand;
    while (out.size() < n) {
        if (is_prime_u64(static_cast<std::uint64_t>(cand))) out.push_back(cand);
        cand += 2;
    }
    return out;
}

// Euler's totient by trial-division factorization; desk-scale inputs.
inline mpz_class euler_totient(const mpz_class& n) {
    require(n >= 1, errc::invalid_argument, "totient needs n >= 1");
    mpz_class m = n;
    mpz_class phi = 1;
    mpz_class p = 2;
    while (p * p <= m) {
        if (m % p == 0) {
            mpz_class pk = 1;
            while (m % p == 0) {
                m /= p;
                pk *= p;
            }
            phi *= pk / p * (p - 1);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) phi *= m - 1;
    return phi;
}

} // namespace slpsat
