#pragma once

// Exact dense univariate polynomial algebra over the rationals: ring
// arithmetic, monic gcd/lcm, squarefree part (the desk-scale radical oracle),
// Sturm sequences and real-root counting with multiplicity. No rounding
// happens anywhere in this module.
//
// gcd runs the Euclidean algorithm with monic normalization at every step.
// That favors correctness over speed; for large degrees a subresultant or
// modular PRS would be the faster alternative.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slpsat/errors.hpp"

namespace slpsat {

class DensePoly {
public:
    DensePoly() = default;

    explicit DensePoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static DensePoly zero() { return DensePoly{}; }
    static DensePoly constant(const mpq_class& v) { return DensePoly({v}); }
    static DensePoly one() { return constant(1); }
    static DensePoly x() { return DensePoly({0, 1}); }

    // Single term c * x^k.
    static DensePoly term(const mpq_class& c, std::size_t k) {
        std::vector<mpq_class> v(k + 1, mpq_class(0));
        v[k] = c;
        return DensePoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }

    // Degree, -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const std::vector<mpq_class>& coeffs() const { return c_; }

    mpq_class coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : mpq_class(0);
    }

    mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

    bool operator==(const DensePoly&) const = default;

    DensePoly operator-() const {
        DensePoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend DensePoly operator+(const DensePoly& f, const DensePoly& g) {
        std::vector<mpq_class> r(std::max(f.c_.size(), g.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) + g.coeff(i);
        return DensePoly(std::move(r));
    }

    friend DensePoly operator-(const DensePoly& f, const DensePoly& g) {
        std::vector<mpq_class> r(std::max(f.c_.size(), g.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeff(i) - g.coeff(i);
        return DensePoly(std::move(r));
    }

    friend DensePoly operator*(const DensePoly& f, const DensePoly& g) {
        if (f.is_zero() || g.is_zero()) return zero();
        std::vector<mpq_class> r(f.c_.size() + g.c_.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (f.c_[i] == 0) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j) r[i + j] += f.c_[i] * g.c_[j];
        }
        return DensePoly(std::move(r));
    }

    friend DensePoly operator*(const mpq_class& s, const DensePoly& f) {
        if (s == 0) return zero();
        DensePoly r = f;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    mpq_class eval(const mpq_class& a) const {
        mpq_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
        return acc;
    }

    DensePoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<mpq_class> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = mpq_class(i) * c_[i];
        return DensePoly(std::move(r));
    }

    DensePoly monic() const {
        require(!is_zero(), errc::zero_polynomial, "monic of zero polynomial");
        return mpq_class(1 / leading()) * *this;
    }

    bool is_integer() const {
        for (const auto& c : c_)
            if (c.get_den() != 1) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpq_class> c_; // c_[i] is the coefficient of x^i
};

// Quotient and remainder with deg r < deg g.
inline std::pair<DensePoly, DensePoly> divrem(const DensePoly& f, const DensePoly& g) {
    require(!g.is_zero(), errc::division_by_zero_poly, "division by zero polynomial");
    if (f.degree() < g.degree()) return {DensePoly::zero(), f};
    std::vector<mpq_class> rem(f.coeffs());
    const long dg = g.degree();
    const mpq_class inv_lead = 1 / g.leading();
    std::vector<mpq_class> quot(static_cast<std::size_t>(f.degree() - dg + 1), mpq_class(0));
    for (long i = f.degree(); i >= dg; --i) {
        mpq_class& top = rem[static_cast<std::size_t>(i)];
        if (top == 0) continue;
        mpq_class q = top * inv_lead;
        quot[static_cast<std::size_t>(i - dg)] = q;
        for (long j = 0; j <= dg; ++j)
            rem[static_cast<std::size_t>(i - dg + j)] -= q * g.coeff(static_cast<std::size_t>(j));
    }
    return {DensePoly(std::move(quot)), DensePoly(std::move(rem))};
}

// Exact quotient; nonzero remainder is an internal inconsistency.
inline DensePoly exact_div(const DensePoly& f, const DensePoly& g) {
    auto [q, r] = divrem(f, g);
    require(r.is_zero(), errc::exact_division_failed, "division left a remainder");
    return q;
}

// Monic gcd over Q. Euclidean remainders, each normalized to monic.
inline DensePoly gcd(const DensePoly& f, const DensePoly& g) {
    require(!(f.is_zero() && g.is_zero()), errc::both_zero, "gcd of two zero polynomials");
    DensePoly a = f, b = g;
    while (!b.is_zero()) {
        DensePoly r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? DensePoly::zero() : r.monic();
    }
    return a.monic();
}

// Monic lcm; gcd(f,g) * lcm(f,g) equals the monic normalization of f*g.
inline DensePoly lcm(const DensePoly& f, const DensePoly& g) {
    require(!(f.is_zero() && g.is_zero()), errc::both_zero, "lcm of two zero polynomials");
    if (f.is_zero() || g.is_zero()) return DensePoly::zero();
    return exact_div((f * g).monic(), gcd(f, g));
}

// f = content * primitive_part: content is rational and carries the sign,
// primitive_part has coprime integer coefficients and positive leading term.
inline mpq_class content(const DensePoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "content of zero polynomial");
    mpz_class den_lcm = 1;
    for (const auto& c : f.coeffs())
        if (c != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    for (const auto& c : f.coeffs()) {
        mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    mpq_class cont(num_gcd, den_lcm);
    cont.canonicalize();
    if (f.leading() < 0) cont = -cont;
    return cont;
}

inline DensePoly primitive_part(const DensePoly& f) {
    return mpq_class(1 / content(f)) * f;
}

// Radical oracle: the primitive integer polynomial proportional to
// f / gcd(f, f'), normalized to a positive leading coefficient. Same root
// set as f, every root simple.
inline DensePoly squarefree_part(const DensePoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "squarefree part of zero polynomial");
    if (f.degree() == 0) return DensePoly::one();
    DensePoly d = gcd(f, f.derivative());
    return primitive_part(exact_div(f.monic(), d));
}

namespace detail {

// Canonical Sturm chain of f; remainders rescaled by positive constants only,
// which leaves every sign-variation count intact.
inline std::vector<DensePoly> sturm_chain(const DensePoly& f) {
    std::vector<DensePoly> chain;
    chain.push_back(f);
    DensePoly d = f.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.back().degree() > 0) {
        DensePoly r = divrem(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        r = mpq_class(-1 / abs(r.leading())) * r;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<DensePoly>& chain, const mpq_class& a) {
    int count = 0;
    int prev = 0;
    for (const auto& p : chain) {
        int s = sgn(p.eval(a));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

} // namespace detail

// Number of distinct real roots of f in the open interval (a, b). Works for
// non-squarefree f as well: the chain below the shared gcd factor carries the
// variations of the squarefree part.
inline unsigned long sturm_count(const DensePoly& f, const mpq_class& a, const mpq_class& b) {
    require(!f.is_zero(), errc::zero_polynomial, "Sturm count of zero polynomial");
    require(a < b, errc::invalid_argument, "need a < b");
    require(f.eval(a) != 0 && f.eval(b) != 0, errc::root_at_endpoint,
            "interval endpoint is a root");
    if (f.degree() == 0) return 0;
    auto chain = detail::sturm_chain(f);
    int va = detail::sign_variations(chain, a);
    int vb = detail::sign_variations(chain, b);
    require(va >= vb, errc::internal, "sign variation count decreased the wrong way");
    return static_cast<unsigned long>(va - vb);
}

// Strict bound B with every real root of f inside (-B, B): Cauchy's
// 1 + max |c_i / c_d|.
inline mpq_class cauchy_root_bound(const DensePoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "root bound of zero polynomial");
    mpq_class m = 0;
    for (long i = 0; i < f.degree(); ++i) {
        mpq_class r = abs(f.coeff(static_cast<std::size_t>(i)) / f.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

// Total number of distinct real roots of f (anywhere on the line).
inline unsigned long count_distinct_real_roots(const DensePoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "root count of zero polynomial");
    if (f.degree() == 0) return 0;
    mpq_class bound = cauchy_root_bound(f);
    while (f.eval(-bound) == 0 || f.eval(bound) == 0) bound += 1; // cannot happen; belt
    return sturm_count(f, -bound, bound);
}

// Z_R(f): real roots counted with multiplicity. Iterated gcd with the
// derivative peels one multiplicity layer at a time; a root of multiplicity m
// appears in exactly the first m layers, so summing distinct-root counts per
// layer yields the multiplicity-weighted total.
inline unsigned long count_real_roots_with_multiplicity(const DensePoly& f) {
    require(!f.is_zero(), errc::zero_polynomial, "root count of zero polynomial");
    unsigned long total = 0;
    DensePoly layer = f;
    while (layer.degree() > 0) {
        total += count_distinct_real_roots(layer);
        layer = gcd(layer, layer.derivative());
    }
    return total;
}

// ---- text format -------------------------------------------------------------
// One line, comma-separated exact rationals c0,c1,...,cd in lowest terms.

inline std::string serialize_densepoly(const DensePoly& f) {
    std::ostringstream os;
    if (f.is_zero()) {
        os << "0";
        return os.str();
    }
    for (long i = 0; i <= f.degree(); ++i) {
        if (i) os << ',';
        os << f.coeff(static_cast<std::size_t>(i));
    }
    return os.str();
}

inline DensePoly parse_densepoly(const std::string& text) {
    std::vector<mpq_class> coeffs;
    std::string tok;
    std::istringstream is(text);
    long field = 0;
    while (std::getline(is, tok, ',')) {
        ++field;
        while (!tok.empty() && (tok.back() == '\n' || tok.back() == '\r')) tok.pop_back();
        require(!tok.empty(), errc::syntax_error, "empty coefficient", field);
        mpq_class v;
        require(v.set_str(tok, 10) == 0, errc::syntax_error,
                "bad coefficient '" + tok + "'", field);
        v.canonicalize();
        coeffs.push_back(std::move(v));
    }
    require(!coeffs.empty(), errc::syntax_error, "empty polynomial line", 1);
    return DensePoly(std::move(coeffs));
}

} // namespace slpsat
