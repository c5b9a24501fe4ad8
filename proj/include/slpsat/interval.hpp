#pragma once

// Outward-rounded interval arithmetic on MPFR floats. Every operation rounds
// the lower bound toward -inf and the upper bound toward +inf, so an Ival
// always contains the exact real value it tracks. Endpoints are convertible
// to exact rationals (every finite MPFR number is m * 2^e).

#include <algorithm>
#include <cstdint>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "slpsat/errors.hpp"

namespace slpsat {

// Certified enclosure with exact rational endpoints.
struct Enclosure {
    mpq_class lo;
    mpq_class hi;

    mpq_class width() const { return hi - lo; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }

    // -1 / 0 / +1 when certain, +2 when the enclosure straddles zero.
    int certified_sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        return 2;
    }
};

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN); // same precision: exact
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    mpq_class to_mpq() const {
        require(is_finite(), errc::internal, "non-finite float in exact conversion");
        if (mpfr_zero_p(v_)) return mpq_class(0);
        mpz_class m;
        mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
        mpq_class q(m);
        if (e >= 0) {
            mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(),
                         static_cast<mp_bitcnt_t>(e));
        } else {
            mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(),
                         static_cast<mp_bitcnt_t>(-e));
        }
        q.canonicalize();
        return q;
    }

private:
    mpfr_t v_;
};

struct Ival {
    BigFloat lo;
    BigFloat hi;

    Enclosure to_enclosure() const { return Enclosure{lo.to_mpq(), hi.to_mpq()}; }

    // -1 / 0 / +1 when certain, +2 when undecided at this precision.
    int certified_sign() const {
        if (mpfr_sgn(lo.raw()) > 0) return 1;
        if (mpfr_sgn(hi.raw()) < 0) return -1;
        if (mpfr_zero_p(lo.raw()) && mpfr_zero_p(hi.raw())) return 0;
        return 2;
    }
};

// Fixed-precision interval context. All endpoint computations run at `prec`
// bits with directed rounding.
class IvalCtx {
public:
    explicit IvalCtx(mpfr_prec_t prec) : prec_(prec) {
        require(prec >= 2, errc::invalid_argument, "precision too small");
    }

    mpfr_prec_t precision() const { return prec_; }

    Ival make() const { return Ival{BigFloat(prec_), BigFloat(prec_)}; }

    Ival from_q(const mpq_class& a) const {
        Ival r = make();
        mpfr_set_q(r.lo.raw(), a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi.raw(), a.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    Ival from_long(long a) const {
        Ival r = make();
        mpfr_set_si(r.lo.raw(), a, MPFR_RNDD);
        mpfr_set_si(r.hi.raw(), a, MPFR_RNDU);
        return r;
    }

    Ival add(const Ival& a, const Ival& b) const {
        Ival r = make();
        mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
        mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
        return r;
    }

    Ival sub(const Ival& a, const Ival& b) const {
        Ival r = make();
        mpfr_sub(r.lo.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
        mpfr_sub(r.hi.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
        return r;
    }

    Ival mul(const Ival& a, const Ival& b) const {
        Ival r = make();
        BigFloat t(prec_);
        // lo: min of the four endpoint products rounded down.
        mpfr_mul(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
        mpfr_mul(t.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_mul(t.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_mul(t.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        // hi: max of the four rounded up.
        mpfr_mul(r.hi.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDU);
        mpfr_mul(t.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        mpfr_mul(t.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        mpfr_mul(t.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        return r;
    }

    // Division; the divisor interval must not contain zero.
    Ival div(const Ival& a, const Ival& b) const {
        require(mpfr_sgn(b.lo.raw()) > 0 || mpfr_sgn(b.hi.raw()) < 0,
                errc::invalid_argument, "interval division by interval containing zero");
        Ival r = make();
        BigFloat t(prec_);
        mpfr_div(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
        mpfr_div(t.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_div(t.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_div(t.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_div(r.hi.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDU);
        mpfr_div(t.raw(), a.lo.raw(), b.hi.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        mpfr_div(t.raw(), a.hi.raw(), b.lo.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        mpfr_div(t.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
        mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        return r;
    }

    Ival pi() const {
        Ival r = make();
        mpfr_const_pi(r.lo.raw(), MPFR_RNDD);
        mpfr_const_pi(r.hi.raw(), MPFR_RNDU);
        return r;
    }

    // cos over an argument interval contained in [0, pi], where cos is
    // monotone decreasing.
    Ival cos_0_pi(const Ival& theta) const {
        Ival r = make();
        mpfr_cos(r.lo.raw(), theta.hi.raw(), MPFR_RNDD);
        mpfr_cos(r.hi.raw(), theta.lo.raw(), MPFR_RNDU);
        return r;
    }

    // sin over an argument interval contained in [0, pi]. If the interval may
    // straddle pi/2 the upper bound falls back to 1.
    Ival sin_0_pi(const Ival& theta) const {
        Ival half_pi = pi();
        mpfr_div_2ui(half_pi.lo.raw(), half_pi.lo.raw(), 1, MPFR_RNDD);
        mpfr_div_2ui(half_pi.hi.raw(), half_pi.hi.raw(), 1, MPFR_RNDU);
        Ival r = make();
        BigFloat t(prec_);
        mpfr_sin(r.lo.raw(), theta.lo.raw(), MPFR_RNDD);
        mpfr_sin(t.raw(), theta.hi.raw(), MPFR_RNDD);
        mpfr_min(r.lo.raw(), r.lo.raw(), t.raw(), MPFR_RNDD);
        const bool may_contain_max =
            mpfr_cmp(theta.lo.raw(), half_pi.hi.raw()) <= 0 &&
            mpfr_cmp(theta.hi.raw(), half_pi.lo.raw()) >= 0;
        if (may_contain_max) {
            mpfr_set_si(r.hi.raw(), 1, MPFR_RNDU);
        } else {
            mpfr_sin(r.hi.raw(), theta.lo.raw(), MPFR_RNDU);
            mpfr_sin(t.raw(), theta.hi.raw(), MPFR_RNDU);
            mpfr_max(r.hi.raw(), r.hi.raw(), t.raw(), MPFR_RNDU);
        }
        return r;
    }

private:
    mpfr_prec_t prec_;
};

inline int sign_of(const mpq_class& v) { return sgn(v); }
inline int sign_of(const mpz_class& v) { return sgn(v); }

} // namespace slpsat
