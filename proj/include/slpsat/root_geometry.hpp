#pragma once

// Interval geometry of Chebyshev root sets: the subdivision of (-1,1) by the
// roots r_N(t), simple/non-simple classification, certified mass bookkeeping,
// and exact success counting on the sampling grid [-M^4, M^4] / M^4.
//
// Everything here works on root INDICES (N, t) and certified cosine
// enclosures, never on expanded polynomials; that keeps instances with huge M
// feasible. Root lists follow the decreasing-t convention: t_j > t_{j+1}, so
// the roots r_N(t_j) ascend and interval I_j lies between the j-th and
// (j+1)-th smallest roots, with I_0 starting at -1 and I_K ending at +1.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slpsat/cheb.hpp"
#include "slpsat/errors.hpp"
#include "slpsat/interval.hpp"
#include "slpsat/slp_eval.hpp"

namespace slpsat {

struct IntervalPartition {
    mpz_class N;                    // odd >= 1
    std::vector<mpz_class> root_ts; // strictly decreasing odd t in [1, 2N-1]

    std::size_t root_count() const { return root_ts.size(); }
    std::size_t interval_count() const { return root_ts.size() + 1; }
};

inline IntervalPartition build_partition(const mpz_class& N, std::vector<mpz_class> root_ts) {
    require(N >= 1 && mpz_odd_p(N.get_mpz_t()), errc::invalid_argument, "N must be odd >= 1");
    for (const auto& t : root_ts) {
        require(mpz_odd_p(t.get_mpz_t()), errc::even_t, "root index t must be odd");
        require(t >= 1 && t <= 2 * N - 1, errc::t_out_of_range, "t outside [1, 2N-1]");
    }
    std::sort(root_ts.begin(), root_ts.end(), [](const mpz_class& a, const mpz_class& b) {
        return a > b;
    });
    for (std::size_t i = 1; i < root_ts.size(); ++i)
        require(root_ts[i] != root_ts[i - 1], errc::duplicate_root, "duplicate root index",
                static_cast<long>(i));
    return IntervalPartition{N, std::move(root_ts)};
}

// I_j is simple iff both endpoints are subsequent roots of T_N, i.e. both are
// of the form r_N(s) with s_1 - s_2 = 2. The boundary intervals I_0 and I_K
// touch -1 / +1 and are never simple.
inline bool classify_simple(const IntervalPartition& p, std::size_t j) {
    require(j < p.interval_count(), errc::index_out_of_range, "interval index out of range",
            static_cast<long>(j));
    if (j == 0 || j == p.root_count()) return false;
    return p.root_ts[j - 1] - p.root_ts[j] == 2;
}

namespace detail {

// Enclosure of the length of I_j at the context precision.
inline Ival interval_length_ival(const IntervalPartition& p, std::size_t j, const IvalCtx& ctx) {
    const mpz_class two_N = 2 * p.N;
    Ival left = (j == 0) ? ctx.from_long(-1) : cheb_root_ival(p.root_ts[j - 1], two_N, ctx);
    Ival right = (j == p.root_count()) ? ctx.from_long(1)
                                       : cheb_root_ival(p.root_ts[j], two_N, ctx);
    return ctx.sub(right, left);
}

inline mpfr_prec_t precision_for_tolerance(const mpq_class& tol, std::size_t terms) {
    require(tol > 0, errc::invalid_argument, "tolerance must be positive");
    const long num_bits = static_cast<long>(mpz_sizeinbase(tol.get_num().get_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(tol.get_den().get_mpz_t(), 2));
    long bits = den_bits - num_bits + 8; // ~ log2(1/tol)
    std::size_t t = terms + 2;
    while (t >>= 1) ++bits;
    return static_cast<mpfr_prec_t>(std::max(bits + 8, 32L));
}

// Sum interval lengths selected by `keep`, certified to within tol.
template <typename Pred>
Enclosure summed_mass(const IntervalPartition& p, const mpq_class& tol, Pred keep) {
    for (mpfr_prec_t prec = precision_for_tolerance(tol, p.interval_count());; prec *= 2) {
        IvalCtx ctx(prec);
        mpq_class lo = 0, hi = 0;
        for (std::size_t j = 0; j < p.interval_count(); ++j) {
            if (!keep(j)) continue;
            Enclosure len = interval_length_ival(p, j, ctx).to_enclosure();
            lo += len.lo;
            hi += len.hi;
        }
        if (hi - lo <= tol) {
            // Lengths partition (-1,1), so the exact value is within [0, 2];
            // tightening the reported bounds to that range keeps them valid.
            if (lo < 0) lo = 0;
            if (hi > 2) hi = 2;
            return Enclosure{lo, hi};
        }
    }
}

} // namespace detail

// Summed length of the non-simple intervals, width <= tol.
inline Enclosure non_simple_mass(const IntervalPartition& p, const mpq_class& tol) {
    return detail::summed_mass(p, tol, [&](std::size_t j) { return !classify_simple(p, j); });
}

// Summed length of the odd-indexed intervals, width <= tol.
inline Enclosure odd_mass(const IntervalPartition& p, const mpq_class& tol) {
    return detail::summed_mass(p, tol, [&](std::size_t j) { return j % 2 == 1; });
}

// The three masses used by the odd-mass lower-bound argument: simple
// even-indexed, simple odd-indexed, and all odd-indexed intervals.
struct MassReport {
    Enclosure simple_even;
    Enclosure simple_odd;
    Enclosure odd_all;
};

inline MassReport mass_report(const IntervalPartition& p, const mpq_class& tol) {
    MassReport r;
    r.simple_even = detail::summed_mass(
        p, tol, [&](std::size_t j) { return j % 2 == 0 && classify_simple(p, j); });
    r.simple_odd = detail::summed_mass(
        p, tol, [&](std::size_t j) { return j % 2 == 1 && classify_simple(p, j); });
    r.odd_all = odd_mass(p, tol);
    return r;
}

// Certified enclosure of length(I)/length(J) for the adjacent simple
// intervals I = (r_N(t), r_N(t+2)) and J = (r_N(t+2), r_N(t+4)). Computed via
// the sine form sin((t+1)pi/2N) / sin((t+3)pi/2N) of the cosine differences.
inline Enclosure adjacent_simple_ratio(const mpz_class& N, const mpz_class& t,
                                       mpfr_prec_t precision_bits = 96) {
    require(N >= 3, errc::invalid_argument, "need N >= 3");
    require(mpz_odd_p(t.get_mpz_t()), errc::even_t, "t must be odd");
    require(t >= 1 && t + 4 <= 2 * N - 1, errc::t_out_of_range,
            "need t, t+2, t+4 inside [1, 2N-1]");
    IvalCtx ctx(precision_bits);
    const mpz_class two_N = 2 * N;
    auto sin_at = [&](const mpz_class& k) {
        mpq_class ratio(k, two_N);
        ratio.canonicalize();
        return ctx.sin_0_pi(ctx.mul(ctx.pi(), ctx.from_q(ratio)));
    };
    return ctx.div(sin_at(t + 1), sin_at(t + 3)).to_enclosure();
}

// Sweep helper: certify 1/pi <= length(I)/length(J) <= pi for every pair of
// adjacent simple intervals of T_N. Streams enclosures of sin(k*pi/2N) for
// even k through preallocated MPFR scratch, checking consecutive ratios on
// the fly; the true ratios live in [1/2, 2], so a modest precision certifies
// the pi bounds with a wide margin.
inline bool simple_ratios_within_pi(long N, mpfr_prec_t precision_bits = 48) {
    require(N >= 3, errc::invalid_argument, "need N >= 3");
    mpfr_t pi_lo, pi_hi, half_pi_lo, half_pi_hi, th_lo, th_hi, s1, s2, cur_lo, cur_hi,
        prev_lo, prev_hi, lhs;
    mpfr_inits2(precision_bits, pi_lo, pi_hi, half_pi_lo, half_pi_hi, th_lo, th_hi, s1, s2,
                cur_lo, cur_hi, prev_lo, prev_hi, lhs, (mpfr_ptr)0);
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    mpfr_div_2ui(half_pi_lo, pi_lo, 1, MPFR_RNDD);
    mpfr_div_2ui(half_pi_hi, pi_hi, 1, MPFR_RNDU);
    bool ok = true;
    bool have_prev = false;
    for (long k = 2; ok && k <= 2 * N - 2; k += 2) {
        mpfr_mul_si(th_lo, pi_lo, k, MPFR_RNDD);
        mpfr_div_si(th_lo, th_lo, 2 * N, MPFR_RNDD);
        mpfr_mul_si(th_hi, pi_hi, k, MPFR_RNDU);
        mpfr_div_si(th_hi, th_hi, 2 * N, MPFR_RNDU);
        mpfr_sin(s1, th_lo, MPFR_RNDD);
        mpfr_sin(s2, th_hi, MPFR_RNDD);
        mpfr_min(cur_lo, s1, s2, MPFR_RNDD);
        if (mpfr_cmp(th_lo, half_pi_hi) <= 0 && mpfr_cmp(th_hi, half_pi_lo) >= 0) {
            mpfr_set_si(cur_hi, 1, MPFR_RNDU); // theta may straddle pi/2
        } else {
            // endpoint sines were rounded down; two ulps cover the upper bound
            mpfr_max(cur_hi, s1, s2, MPFR_RNDU);
            mpfr_nextabove(cur_hi);
            mpfr_nextabove(cur_hi);
        }
        if (mpfr_sgn(cur_lo) <= 0) {
            ok = false;
            break;
        }
        if (have_prev) {
            // ratio = prev/cur >= 1/pi certified by prev_lo * pi_lo >= cur_hi
            mpfr_mul(lhs, prev_lo, pi_lo, MPFR_RNDD);
            if (mpfr_cmp(lhs, cur_hi) < 0) ok = false;
            // ratio <= pi certified by cur_lo * pi_lo >= prev_hi
            mpfr_mul(lhs, cur_lo, pi_lo, MPFR_RNDD);
            if (mpfr_cmp(lhs, prev_hi) < 0) ok = false;
        }
        mpfr_set(prev_lo, cur_lo, MPFR_RNDD);
        mpfr_set(prev_hi, cur_hi, MPFR_RNDU);
        have_prev = true;
    }
    mpfr_clears(pi_lo, pi_hi, half_pi_lo, half_pi_hi, th_lo, th_hi, s1, s2, cur_lo, cur_hi,
                prev_lo, prev_hi, lhs, (mpfr_ptr)0);
    return ok;
}

// ---- sampling grid -------------------------------------------------------------

struct GridReport {
    mpz_class M;
    mpz_class grid_size;     // 2M^4 + 1
    mpz_class success_count; // grid points with sign(F(K/M^4)) * sign(F(1)) < 0
    unsigned long zero_hits; // grid points exactly equal to a root
};

struct GridOptions {
    mpfr_prec_t start_bits = 64;
    mpfr_prec_t cap_bits = 1 << 20;
};

// Exact count of grid points K in [-M^4, M^4] whose sign product against F(1)
// is negative, for an F whose real roots are exactly the partition roots, all
// simple. The sign product at a point a equals (-1)^(#roots above a), so the
// counting is purely combinatorial once each boundary count
// #{K : K < M^4 * r_N(t)} is resolved; boundaries are irrational except for
// the root 0 (t = N), which is where zero_hits can come from.
inline GridReport grid_success_count(const IntervalPartition& p, const mpz_class& M,
                                     Sign sign_at_one, const GridOptions& opt = {}) {
    require(M >= 3, errc::invalid_argument, "need M >= 3");
    require(sign_at_one != Sign::zero, errc::invalid_argument,
            "F(1) must be nonzero on root-free [largest root, 1]");
    const mpz_class M4 = M * M * M * M;
    const mpz_class grid_size = 2 * M4 + 1;
    const mpz_class two_N = 2 * p.N;
    const std::size_t K = p.root_count();

    std::vector<mpz_class> below(K);
    std::vector<bool> on_grid(K, false);
    for (std::size_t i = 0; i < K; ++i) {
        const mpz_class& t = p.root_ts[i];
        if (t == p.N) {
            below[i] = M4; // root is exactly 0; K in [-M^4, -1] lie below
            on_grid[i] = true;
            continue;
        }
        bool resolved = false;
        for (mpfr_prec_t prec = opt.start_bits; prec <= opt.cap_bits && !resolved; prec *= 2) {
            IvalCtx ctx(prec);
            Ival x = ctx.mul(detail::cheb_root_ival(t, two_N, ctx), ctx.from_q(mpq_class(M4)));
            Enclosure e = x.to_enclosure();
            mpz_class flo, fhi;
            mpz_fdiv_q(flo.get_mpz_t(), e.lo.get_num().get_mpz_t(), e.lo.get_den().get_mpz_t());
            mpz_fdiv_q(fhi.get_mpz_t(), e.hi.get_num().get_mpz_t(), e.hi.get_den().get_mpz_t());
            if (flo == fhi) {
                below[i] = flo + M4 + 1;
                resolved = true;
            }
        }
        require(resolved, errc::precision_exhausted,
                "grid boundary not separated within the precision cap", static_cast<long>(i));
    }

    GridReport rep;
    rep.M = M;
    rep.grid_size = grid_size;
    rep.zero_hits = static_cast<unsigned long>(std::count(on_grid.begin(), on_grid.end(), true));
    rep.success_count = 0;
    for (std::size_t j = 0; j <= K; ++j) {
        if ((K - j) % 2 == 0) continue; // even number of roots above: same sign as F(1)
        mpz_class points;
        if (j == 0) {
            points = K == 0 ? grid_size : below[0];
        } else if (j == K) {
            points = grid_size - below[K - 1] - (on_grid[K - 1] ? 1 : 0);
        } else {
            points = below[j] - below[j - 1] - (on_grid[j - 1] ? 1 : 0);
        }
        rep.success_count += points;
    }
    return rep;
}

// ---- CSV export ---------------------------------------------------------------
// Columns: index,t_left,t_right,simple,approx_length (length to ~1e-12).

inline void write_partition_csv(const IntervalPartition& p, std::ostream& os) {
    const mpq_class tol(1, mpz_class("1000000000000")); // 1e-12
    const mpfr_prec_t prec = detail::precision_for_tolerance(tol, 2);
    IvalCtx ctx(prec);
    os << "index,t_left,t_right,simple,approx_length\n";
    for (std::size_t j = 0; j < p.interval_count(); ++j) {
        Enclosure len = detail::interval_length_ival(p, j, ctx).to_enclosure();
        const mpq_class mid = (len.lo + len.hi) / 2;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g", mid.get_d());
        os << j << ',';
        if (j > 0) os << p.root_ts[j - 1];
        os << ',';
        if (j < p.root_count()) os << p.root_ts[j];
        os << ',' << (classify_simple(p, j) ? 1 : 0) << ',' << buf << '\n';
    }
}

} // namespace slpsat
