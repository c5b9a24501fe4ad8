#pragma once

// Evaluation of straight-line programs: exact over Q, modular over Z/m, and
// as certified enclosures at a fixed working precision. sign_at_rational is
// the desk-scale PosSLP oracle: adaptive-precision intervals with doubling
// precision, and an exact rational fallback when the enclosure straddles 0,
// so the returned sign always equals the exact one.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "slpsat/errors.hpp"
#include "slpsat/interval.hpp"
#include "slpsat/slp.hpp"

namespace slpsat {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline int sign_int(Sign s) { return static_cast<int>(s); }

inline Sign sign_from_int(int s) {
    require(s >= -1 && s <= 1, errc::invalid_argument, "sign must be -1, 0 or +1");
    return static_cast<Sign>(s);
}

inline mpq_class eval_rational(const Slp& slp, const mpq_class& a) {
    validate_or_throw(slp);
    std::vector<mpq_class> val(slp.nodes.size());
    for (std::uint32_t i : reachable_nodes(slp)) {
        const SlpNode& n = slp.nodes[i];
        switch (n.op) {
        case SlpOp::One: val[i] = 1; break;
        case SlpOp::X: val[i] = a; break;
        case SlpOp::Add: val[i] = val[n.lhs] + val[n.rhs]; break;
        case SlpOp::Sub: val[i] = val[n.lhs] - val[n.rhs]; break;
        case SlpOp::Mul: val[i] = val[n.lhs] * val[n.rhs]; break;
        }
    }
    return val[slp.out];
}

inline mpz_class eval_mod(const Slp& slp, const mpz_class& a, const mpz_class& m) {
    validate_or_throw(slp);
    require(m != 0, errc::zero_modulus, "modulus must be nonzero");
    const mpz_class mm = abs(m);
    std::vector<mpz_class> val(slp.nodes.size());
    mpz_class tmp;
    auto reduce = [&](mpz_class v) {
        mpz_mod(tmp.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
        return tmp;
    };
    for (std::uint32_t i : reachable_nodes(slp)) {
        const SlpNode& n = slp.nodes[i];
        switch (n.op) {
        case SlpOp::One: val[i] = reduce(1); break;
        case SlpOp::X: val[i] = reduce(a); break;
        case SlpOp::Add: val[i] = reduce(val[n.lhs] + val[n.rhs]); break;
        case SlpOp::Sub: val[i] = reduce(val[n.lhs] - val[n.rhs]); break;
        case SlpOp::Mul: val[i] = reduce(val[n.lhs] * val[n.rhs]); break;
        }
    }
    return val[slp.out];
}

namespace detail {

inline Ival eval_ival(const Slp& slp, const mpq_class& a, const IvalCtx& ctx) {
    std::vector<Ival> val(slp.nodes.size(), ctx.make());
    for (std::uint32_t i : reachable_nodes(slp)) {
        const SlpNode& n = slp.nodes[i];
        switch (n.op) {
        case SlpOp::One: val[i] = ctx.from_long(1); break;
        case SlpOp::X: val[i] = ctx.from_q(a); break;
        case SlpOp::Add: val[i] = ctx.add(val[n.lhs], val[n.rhs]); break;
        case SlpOp::Sub: val[i] = ctx.sub(val[n.lhs], val[n.rhs]); break;
        case SlpOp::Mul: val[i] = ctx.mul(val[n.lhs], val[n.rhs]); break;
        }
    }
    return std::move(val[slp.out]);
}

} // namespace detail

// Certified enclosure of f(a) at the stated working precision (>= 16 bits).
inline Enclosure eval_interval(const Slp& slp, const mpq_class& a, mpfr_prec_t precision_bits) {
    validate_or_throw(slp);
    require(precision_bits >= 16, errc::invalid_argument, "precision below 16 bits");
    IvalCtx ctx(precision_bits);
    return detail::eval_ival(slp, a, ctx).to_enclosure();
}

struct SignConfig {
    mpfr_prec_t start_bits = 64;
    mpfr_prec_t cap_bits = 1 << 16;
};

// Exact sign of f(p/q). Interval evaluation with doubling precision up to the
// cap, then exact rational evaluation if still undecided.
inline Sign sign_at_rational(const Slp& slp, const mpz_class& p, const mpz_class& q,
                             const SignConfig& cfg = {}) {
    validate_or_throw(slp);
    require(q != 0, errc::zero_denominator, "denominator is zero");
    mpq_class a(p, q);
    a.canonicalize();
    for (mpfr_prec_t prec = cfg.start_bits; prec <= cfg.cap_bits; prec *= 2) {
        IvalCtx ctx(prec);
        int s = detail::eval_ival(slp, a, ctx).certified_sign();
        if (s != 2) return static_cast<Sign>(s);
    }
    return static_cast<Sign>(sgn(eval_rational(slp, a)));
}

} // namespace slpsat
