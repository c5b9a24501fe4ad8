#pragma once

// 3CNF data model, DIMACS ingestion, brute-force SAT/#SAT oracles, and the
// Valiant-Vazirani randomized isolation reduction.
//
// vv_reduce draws k uniform in {0..n} and adds k random GF(2) affine
// constraints from the pairwise-independent family (uniform subset, uniform
// right-hand side). XOR chains are encoded into 3CNF with fresh chaining
// variables; the chaining variables are functionally determined by the
// original ones, so model counts over the original variables are preserved by
// the added constraints, and uniqueness over all variables coincides with
// uniqueness over the originals.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slpsat/errors.hpp"
#include "slpsat/rng.hpp"

namespace slpsat {

// A clause is 1..3 signed DIMACS-style literals (+v / -v, 1-based variables).
using Clause = std::vector<int>;

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;
    // When > 0, variables 1..num_original_vars are the original ones and the
    // rest are auxiliary (set by vv_reduce and carried through DIMACS as a
    // comment).
    int num_original_vars = 0;

    bool operator==(const Cnf&) const = default;
};

struct BoolAssignment {
    std::vector<bool> bits; // bits[i] is the value of variable i+1
};

inline void validate_cnf(const Cnf& cnf) {
    require(cnf.num_vars >= 0, errc::invalid_argument, "negative variable count");
    for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
        const Clause& cl = cnf.clauses[ci];
        require(!cl.empty(), errc::invalid_argument, "empty clause", static_cast<long>(ci));
        require(cl.size() <= 3, errc::clause_too_long, "clause has more than 3 literals",
                static_cast<long>(ci));
        for (int lit : cl)
            require(lit != 0 && std::abs(lit) <= cnf.num_vars, errc::invalid_argument,
                    "literal out of range", static_cast<long>(ci));
    }
}

namespace detail {

inline bool clause_satisfied(const Clause& cl, std::uint64_t bits) {
    for (int lit : cl) {
        const bool v = (bits >> (std::abs(lit) - 1)) & 1;
        if (lit > 0 ? v : !v) return true;
    }
    return false;
}

inline bool cnf_satisfied(const Cnf& cnf, std::uint64_t bits) {
    for (const Clause& cl : cnf.clauses)
        if (!clause_satisfied(cl, bits)) return false;
    return true;
}

} // namespace detail

inline bool assignment_satisfies(const Cnf& cnf, const BoolAssignment& a) {
    require(a.bits.size() == static_cast<std::size_t>(cnf.num_vars), errc::invalid_argument,
            "assignment length mismatch");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i)
        if (a.bits[i]) bits |= std::uint64_t{1} << i;
    return detail::cnf_satisfied(cnf, bits);
}

// Exact model count by enumeration; num_vars <= cap.
inline unsigned long brute_force_count(const Cnf& cnf, int cap = 24) {
    validate_cnf(cnf);
    require(cnf.num_vars <= cap, errc::too_many_variables, "formula above brute-force cap");
    unsigned long count = 0;
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits)
        if (detail::cnf_satisfied(cnf, bits)) ++count;
    return count;
}

inline std::optional<BoolAssignment> brute_force_sat(const Cnf& cnf, int cap = 24) {
    validate_cnf(cnf);
    require(cnf.num_vars <= cap, errc::too_many_variables, "formula above brute-force cap");
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (detail::cnf_satisfied(cnf, bits)) {
            BoolAssignment a;
            a.bits.resize(static_cast<std::size_t>(cnf.num_vars));
            for (int i = 0; i < cnf.num_vars; ++i) a.bits[i] = (bits >> i) & 1;
            return a;
        }
    }
    return std::nullopt;
}

// Does the all-true assignment satisfy every clause? (True iff each clause
// contains a positive literal.)
inline bool all_true_check(const Cnf& cnf) {
    validate_cnf(cnf);
    for (const Clause& cl : cnf.clauses) {
        bool has_positive = false;
        for (int lit : cl) has_positive |= lit > 0;
        if (!has_positive) return false;
    }
    return true;
}

// ---- Valiant-Vazirani --------------------------------------------------------

struct XorConstraint {
    std::vector<int> vars; // original variable indices, 1-based
    bool rhs = false;      // parity the selected variables must take
};

struct VvReduction {
    Cnf cnf;                 // W': original clauses plus XOR encodings
    int num_original_vars = 0;
    std::vector<XorConstraint> constraints;
};

inline VvReduction vv_reduce(const Cnf& cnf, Rng& rng) {
    validate_cnf(cnf);
    require(cnf.num_vars >= 1, errc::invalid_argument, "need at least one variable");
    const int n = cnf.num_vars;

    VvReduction out;
    out.num_original_vars = n;
    out.cnf = cnf;
    out.cnf.num_original_vars = n;

    const std::uint64_t k = rng.below(static_cast<std::uint64_t>(n) + 1);
    int next_var = n;
    for (std::uint64_t c = 0; c < k; ++c) {
        XorConstraint xc;
        for (int v = 1; v <= n; ++v)
            if (rng.coin()) xc.vars.push_back(v);
        xc.rhs = rng.coin();
        out.constraints.push_back(xc);

        if (xc.vars.empty()) {
            if (xc.rhs) {
                // 0 = 1: contradiction; pin a fresh variable both ways.
                const int a = ++next_var;
                out.cnf.clauses.push_back({a});
                out.cnf.clauses.push_back({-a});
            }
            continue;
        }
        if (xc.vars.size() == 1) {
            out.cnf.clauses.push_back({xc.rhs ? xc.vars[0] : -xc.vars[0]});
            continue;
        }
        // Chain: w <-> v_1 xor v_2, then fresh w' <-> w xor v_j, unit-pin the
        // final parity.
        int prev = xc.vars[0];
        for (std::size_t j = 1; j < xc.vars.size(); ++j) {
            const int v = xc.vars[j];
            const int w = ++next_var;
            out.cnf.clauses.push_back({-w, prev, v});
            out.cnf.clauses.push_back({-w, -prev, -v});
            out.cnf.clauses.push_back({w, -prev, v});
            out.cnf.clauses.push_back({w, prev, -v});
            prev = w;
        }
        out.cnf.clauses.push_back({xc.rhs ? prev : -prev});
    }
    out.cnf.num_vars = next_var;
    return out;
}

// Model count of W' computed over original assignments only: enumerate the
// originals, check W and every XOR constraint. Because the chaining variables
// are forced, this equals the full model count of vv.cnf.
inline unsigned long vv_projected_count(const Cnf& original, const VvReduction& vv, int cap = 24) {
    validate_cnf(original);
    require(original.num_vars == vv.num_original_vars, errc::invalid_argument,
            "reduction does not belong to this formula");
    require(original.num_vars <= cap, errc::too_many_variables,
            "formula above brute-force cap");
    unsigned long count = 0;
    const std::uint64_t total = std::uint64_t{1} << original.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (!detail::cnf_satisfied(original, bits)) continue;
        bool ok = true;
        for (const XorConstraint& xc : vv.constraints) {
            bool parity = false;
            for (int v : xc.vars) parity ^= (bits >> (v - 1)) & 1;
            if (parity != xc.rhs) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

// Exactly one satisfying assignment? With auxiliary-variable metadata present,
// assignments are first projected to the original variables and deduplicated.
inline bool unique_sat_check(const Cnf& cnf, int cap = 24) {
    validate_cnf(cnf);
    require(cnf.num_vars <= cap, errc::too_many_variables, "formula above brute-force cap");
    const bool project = cnf.num_original_vars > 0 && cnf.num_original_vars < cnf.num_vars;
    if (!project) return brute_force_count(cnf, cap) == 1;
    std::set<std::uint64_t> projections;
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    const std::uint64_t mask = (std::uint64_t{1} << cnf.num_original_vars) - 1;
    for (std::uint64_t bits = 0; bits < total; ++bits)
        if (detail::cnf_satisfied(cnf, bits)) projections.insert(bits & mask);
    return projections.size() == 1;
}

// ---- DIMACS ------------------------------------------------------------------
// Standard "p cnf V C" format; clauses longer than 3 literals are rejected.
// Auxiliary-variable metadata round-trips through a "c original N" comment.

inline std::string serialize_dimacs(const Cnf& cnf) {
    validate_cnf(cnf);
    std::ostringstream os;
    if (cnf.num_original_vars > 0) os << "c original " << cnf.num_original_vars << '\n';
    os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& cl : cnf.clauses) {
        for (int lit : cl) os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

inline Cnf parse_dimacs(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    long lineno = 0;
    bool saw_header = false;
    long declared_clauses = 0;
    Cnf cnf;
    Clause current;

    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == 'c') {
            std::istringstream cs(line);
            std::string c, word;
            long v = 0;
            if (cs >> c >> word >> v && word == "original") cnf.num_original_vars = static_cast<int>(v);
            continue;
        }
        std::istringstream ls(line);
        if (!saw_header) {
            std::string p, fmt;
            long v = 0, c = 0;
            require(static_cast<bool>(ls >> p >> fmt >> v >> c) && p == "p" && fmt == "cnf" &&
                        v >= 0 && c >= 0,
                    errc::syntax_error, "expected 'p cnf V C' header", lineno);
            std::string extra;
            require(!(ls >> extra), errc::syntax_error, "trailing tokens after header", lineno);
            cnf.num_vars = static_cast<int>(v);
            declared_clauses = c;
            saw_header = true;
            continue;
        }
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                require(!current.empty(), errc::syntax_error, "empty clause", lineno);
                require(current.size() <= 3, errc::clause_too_long,
                        "clause has more than 3 literals",
                        static_cast<long>(cnf.clauses.size()));
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                require(std::abs(lit) <= cnf.num_vars, errc::syntax_error,
                        "literal out of range", lineno);
                current.push_back(static_cast<int>(lit));
            }
        }
        require(ls.eof(), errc::syntax_error, "bad token in clause", lineno);
    }
    require(saw_header, errc::syntax_error, "missing DIMACS header", lineno);
    require(current.empty(), errc::syntax_error, "unterminated clause", lineno);
    require(static_cast<long>(cnf.clauses.size()) == declared_clauses, errc::syntax_error,
            "clause count does not match header", lineno);
    require(cnf.num_original_vars <= cnf.num_vars, errc::syntax_error,
            "original-variable count exceeds variable count", lineno);
    return cnf;
}

} // namespace slpsat
