#pragma once

// Chebyshev polynomials T_k and the root-index combinatorics built on them.
//
// The roots of T_M are cos(t*pi/2M) for odd t in Odd(M) = {1, 3, ..., 2M-1}.
// With M a product of n distinct odd primes, the prime divisors of t encode a
// Boolean assignment: variable i is true iff p_i divides t. The fiber of an
// assignment subset phi is {t : gcd(t, M) = alpha(phi)} where alpha is the
// product of the selected primes. Grouping Odd(ell) by gcd yields the
// cyclotomic-analog factors C_ell of the monic Chebyshev polynomial, with
// deg C_ell = totient(ell); C_ell is computed here by exact divisor recursion
// (its roots are irrational, so expanding root products is not an option).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "slpsat/densepoly.hpp"
#include "slpsat/errors.hpp"
#include "slpsat/interval.hpp"
#include "slpsat/primes.hpp"
#include "slpsat/slp.hpp"

namespace slpsat {

// ---- Chebyshev values, coefficients, programs -------------------------------

// T_k(a), exactly, by the two-term recursion (linear in k).
inline mpq_class cheb_value(unsigned long k, const mpq_class& a) {
    if (k == 0) return 1;
    mpq_class prev = 1, cur = a;
    for (unsigned long i = 2; i <= k; ++i) {
        mpq_class next = 2 * a * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Exact coefficients of T_k; degree k, leading coefficient 2^(k-1) for k >= 1.
inline DensePoly cheb_dense(unsigned long k) {
    DensePoly prev = DensePoly::one();
    if (k == 0) return prev;
    DensePoly cur = DensePoly::x();
    const DensePoly two_x = DensePoly::term(2, 1);
    for (unsigned long i = 2; i <= k; ++i) {
        DensePoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

// Monic form T_k / 2^(k-1), k >= 1.
inline DensePoly monic_cheb_dense(unsigned long k) {
    require(k >= 1, errc::invalid_argument, "monic Chebyshev needs k >= 1");
    mpq_class scale(mpz_class(1) << (k - 1)); // 2^(k-1)
    return mpq_class(1 / scale) * cheb_dense(k);
}

// Program for T_k via the recursion with node sharing: three derived nodes
// per step, so length 3(k-1) for k >= 2.
inline Slp cheb_slp(unsigned long k) {
    if (k == 0) return one_program();
    if (k == 1) return x_program();
    SlpBuilder b;
    std::uint32_t prev = b.one(), cur = b.x();
    for (unsigned long i = 2; i <= k; ++i) {
        std::uint32_t xc = b.mul(b.x(), cur);
        std::uint32_t twoxc = b.add(xc, xc);
        std::uint32_t next = b.sub(twoxc, prev);
        prev = cur;
        cur = next;
    }
    return b.take(cur);
}

// Program for T_{f1*f2*...} as the composition of the factor programs,
// using T_p o T_q = T_pq; length is bounded by 3 * (sum of factors).
inline Slp cheb_slp_factored(const std::vector<unsigned long>& factors) {
    require(!factors.empty(), errc::invalid_argument, "factor list is empty");
    for (unsigned long f : factors)
        require(f >= 2, errc::invalid_argument, "factors must be >= 2");
    Slp acc = cheb_slp(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = compose(acc, cheb_slp(factors[i]));
    return acc;
}

// ---- root indexing -----------------------------------------------------------

// Index (M, t) of the Chebyshev root cos(t*pi/(2M)), t odd, 1 <= t <= 2M-1.
struct RootIndex {
    mpz_class M;
    mpz_class t;
};

inline RootIndex make_root_index(const mpz_class& M, const mpz_class& t) {
    require(M >= 1 && mpz_odd_p(M.get_mpz_t()), errc::invalid_argument, "M must be odd >= 1");
    require(mpz_odd_p(t.get_mpz_t()), errc::even_t, "root index t must be odd");
    require(t >= 1 && t <= 2 * M - 1, errc::t_out_of_range, "t outside [1, 2M-1]");
    return RootIndex{M, t};
}

namespace detail {

// Enclosure of cos(t*pi/(2M)) at the context precision. The argument lies in
// (0, pi) where cos is monotone decreasing.
inline Ival cheb_root_ival(const mpz_class& t, const mpz_class& two_M, const IvalCtx& ctx) {
    mpq_class ratio(t, two_M);
    ratio.canonicalize();
    Ival theta = ctx.mul(ctx.pi(), ctx.from_q(ratio));
    return ctx.cos_0_pi(theta);
}

} // namespace detail

// Certified enclosure of cos(t*pi/(2M)) with width <= 2^(-precision_bits+2).
inline Enclosure root_enclosure(const RootIndex& ri, mpfr_prec_t precision_bits) {
    require(precision_bits >= 16, errc::invalid_argument, "precision below 16 bits");
    mpq_class max_width(1);
    max_width /= mpq_class(mpz_class(1) << static_cast<unsigned long>(precision_bits - 2));
    for (mpfr_prec_t work = precision_bits + 8;; work *= 2) {
        IvalCtx ctx(work);
        Enclosure e = detail::cheb_root_ival(ri.t, 2 * ri.M, ctx).to_enclosure();
        if (e.width() <= max_width) return e;
    }
}

// ---- prime assignments and fibers ---------------------------------------------

// The odd primes p_1..p_n attached to the n literals, and their product M.
class PrimeAssignment {
public:
    explicit PrimeAssignment(std::vector<long> primes) : primes_(std::move(primes)) {
        require(!primes_.empty(), errc::invalid_argument, "need at least one prime");
        require(primes_.size() <= 63, errc::too_many_variables, "more than 63 literals");
        M_ = 1;
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            long p = primes_[i];
            require(p >= 3 && p % 2 == 1 && is_prime_u64(static_cast<std::uint64_t>(p)),
                    errc::invalid_argument, "entries must be odd primes", static_cast<long>(i));
            for (std::size_t j = 0; j < i; ++j)
                require(primes_[j] != p, errc::invalid_argument, "primes must be distinct",
                        static_cast<long>(i));
            M_ *= p;
        }
    }

    std::size_t n() const { return primes_.size(); }
    const std::vector<long>& primes() const { return primes_; }
    long prime(std::size_t i) const { return primes_.at(i); }
    const mpz_class& M() const { return M_; }
    long p_min() const { return *std::min_element(primes_.begin(), primes_.end()); }
    long p_max() const { return *std::max_element(primes_.begin(), primes_.end()); }

private:
    std::vector<long> primes_;
    mpz_class M_;
};

// Subset of the literal index set [n], i.e. a subset phi of the prime set;
// bit i selects p_{i+1}.
struct AssignmentSubset {
    std::uint64_t mask = 0;

    bool contains(std::size_t i) const { return (mask >> i) & 1; }
    bool operator==(const AssignmentSubset&) const = default;
};

// alpha(phi): product of the selected primes; 1 for the empty set.
inline mpz_class alpha(const AssignmentSubset& phi, const PrimeAssignment& pa) {
    mpz_class prod = 1;
    for (std::size_t i = 0; i < pa.n(); ++i)
        if (phi.contains(i)) prod *= pa.prime(i);
    return prod;
}

// The assignment encoded by root index t: variable i true iff p_i | t.
inline AssignmentSubset root_assignment(const PrimeAssignment& pa, const mpz_class& t) {
    require(mpz_odd_p(t.get_mpz_t()), errc::even_t, "root index t must be odd");
    require(t >= 1 && t <= 2 * pa.M() - 1, errc::t_out_of_range, "t outside [1, 2M-1]");
    AssignmentSubset phi;
    for (std::size_t i = 0; i < pa.n(); ++i)
        if (t % pa.prime(i) == 0) phi.mask |= std::uint64_t{1} << i;
    return phi;
}

// Fiber of phi: all odd t in [1, 2M-1] with gcd(t, M) = alpha(phi),
// ascending. |fiber(phi)| = totient(M / alpha(phi)).
inline std::vector<mpz_class> fiber(const PrimeAssignment& pa, const AssignmentSubset& phi) {
    require(pa.M() <= (1L << 26), errc::invalid_argument,
            "fiber enumeration is desk-scale only");
    const long M = static_cast<long>(pa.M().get_si());
    const long a = static_cast<long>(alpha(phi, pa).get_si());
    std::vector<mpz_class> out;
    for (long t = 1; t < 2 * M; t += 2) {
        if (std::gcd(t, M) == a) out.emplace_back(t);
    }
    return out;
}

// ---- cyclotomic-analog polynomials --------------------------------------------

namespace detail {

inline std::vector<long> sorted_divisors(long n) {
    std::vector<long> divs;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d != n / d) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

// C_ell: the monic factor of T~_ell whose roots are cos(t*pi/(2*ell)) with
// gcd(t, ell) = 1; deg C_ell = totient(ell). Computed by the exact divisor
// recursion C_ell = T~_ell / prod_{d | ell, d < ell} C_d, which follows from
// grouping Odd(ell) by gcd with ell. A nonzero remainder in the division is a
// hard internal error.
inline DensePoly cyclotomic_analog_dense(long ell) {
    require(ell >= 1, errc::invalid_argument, "need ell >= 1");
    require(ell % 2 == 1, errc::even_argument, "ell must be odd");
    std::map<long, DensePoly> memo;
    for (long d : detail::sorted_divisors(ell)) {
        DensePoly c = monic_cheb_dense(static_cast<unsigned long>(d));
        for (const auto& [e, ce] : memo)
            if (d % e == 0) c = exact_div(c, ce);
        memo.emplace(d, std::move(c));
    }
    return memo.at(ell);
}

} // namespace slpsat
