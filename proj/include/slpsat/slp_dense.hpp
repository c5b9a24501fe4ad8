#pragma once

// Bridges between straight-line programs and dense polynomials: brute-force
// expansion of a program into exact coefficients, and Horner re-emission of an
// integer polynomial as a program.

#include <cstdint>
#include <vector>

#include "slpsat/densepoly.hpp"
#include "slpsat/errors.hpp"
#include "slpsat/slp.hpp"

namespace slpsat {

// Exact coefficient vector of the polynomial computed by `slp`. Expansion
// aborts with DegreeExceeded as soon as any reachable intermediate exceeds
// max_degree, so runaway programs are cut off before their coefficients blow
// up.
inline DensePoly slp_to_dense(const Slp& slp, std::size_t max_degree) {
    validate_or_throw(slp);
    std::vector<DensePoly> val(slp.nodes.size());
    for (std::uint32_t i : reachable_nodes(slp)) {
        const SlpNode& n = slp.nodes[i];
        switch (n.op) {
        case SlpOp::One: val[i] = DensePoly::one(); break;
        case SlpOp::X: val[i] = DensePoly::x(); break;
        case SlpOp::Add: val[i] = val[n.lhs] + val[n.rhs]; break;
        case SlpOp::Sub: val[i] = val[n.lhs] - val[n.rhs]; break;
        case SlpOp::Mul: val[i] = val[n.lhs] * val[n.rhs]; break;
        }
        if (val[i].degree() > static_cast<long>(max_degree))
            fail(errc::degree_exceeded, "intermediate degree " +
                     std::to_string(val[i].degree()) + " exceeds cap " +
                     std::to_string(max_degree), val[i].degree());
    }
    return val[slp.out];
}

// Horner program for an integer polynomial. Length O(deg f * max coefficient
// bit length); the unit leading coefficient is folded away so that the
// programs for 1 and x come out as the bare base nodes.
inline Slp horner_slp(const DensePoly& f) {
    require(f.is_integer(), errc::non_integer_coefficients,
            "Horner emission needs integer coefficients");
    SlpBuilder b;
    if (f.is_zero()) return b.take(b.constant(0));
    std::uint32_t acc = b.constant(mpz_class(f.leading().get_num()));
    for (long i = f.degree(); i-- > 0;) {
        acc = b.mul_opt(acc, b.x());
        const mpz_class c = f.coeff(static_cast<std::size_t>(i)).get_num();
        if (c > 0) acc = b.add(acc, b.constant(c));
        else if (c < 0) acc = b.sub(acc, b.constant(-c));
    }
    return b.take(acc);
}

} // namespace slpsat
