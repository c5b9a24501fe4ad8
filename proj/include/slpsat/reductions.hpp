#pragma once

// The end-to-end pipelines: PolySAT construction (dense and per-assignment),
// per-clause programs lifted by Chebyshev composition, the sum-of-squares
// program, the radical step backed by the exact squarefree oracle, the
// randomized PosSLP satisfiability decision, and #3SAT recovery from real
// root counts via primes in arithmetic progression and Chinese remaindering.

#include <chrono>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "slpsat/cheb.hpp"
#include "slpsat/densepoly.hpp"
#include "slpsat/errors.hpp"
#include "slpsat/primes.hpp"
#include "slpsat/rng.hpp"
#include "slpsat/sat.hpp"
#include "slpsat/slp.hpp"
#include "slpsat/slp_dense.hpp"
#include "slpsat/slp_eval.hpp"

namespace slpsat {

// ---- PolySAT, dense route ------------------------------------------------------
//
// PolySAT_M(literal x_i) is the monic Chebyshev polynomial of degree M/p_i;
// negation divides it out of the monic T_M, disjunction is lcm, conjunction
// is gcd. The resulting polynomial is monic with root set exactly the fibers
// of the satisfying assignments.

namespace detail {

class LiteralPolyTable {
public:
    LiteralPolyTable(const PrimeAssignment& pa, unsigned long m) : pa_(pa), m_(m) {}

    const DensePoly& monic_cheb_m() {
        if (t_m_.is_zero()) t_m_ = monic_cheb_dense(m_);
        return t_m_;
    }

    const DensePoly& literal(int lit) {
        auto it = memo_.find(lit);
        if (it != memo_.end()) return it->second;
        const std::size_t var = static_cast<std::size_t>(std::abs(lit)) - 1;
        const unsigned long sub = m_ / static_cast<unsigned long>(pa_.prime(var));
        DensePoly poly = monic_cheb_dense(sub);
        if (lit < 0) poly = exact_div(monic_cheb_m(), poly);
        return memo_.emplace(lit, std::move(poly)).first->second;
    }

private:
    const PrimeAssignment& pa_;
    unsigned long m_;
    DensePoly t_m_;
    std::map<int, DensePoly> memo_;
};

inline unsigned long checked_small_m(const PrimeAssignment& pa, std::size_t degree_cap) {
    require(mpz_fits_ulong_p(pa.M().get_mpz_t()) && pa.M() <= static_cast<long>(degree_cap),
            errc::degree_cap_exceeded, "M exceeds the dense degree cap");
    return mpz_get_ui(pa.M().get_mpz_t());
}

} // namespace detail

// Monic polynomial whose roots encode the satisfying assignments of `cnf`.
// Empty clause lists (the always-true formula) yield the full monic T_M;
// unsatisfiable formulas collapse to the constant 1.
inline DensePoly polysat_dense(const Cnf& cnf, const PrimeAssignment& pa,
                               std::size_t degree_cap = 4096) {
    validate_cnf(cnf);
    require(static_cast<std::size_t>(cnf.num_vars) == pa.n(), errc::invalid_argument,
            "prime assignment does not match variable count");
    const unsigned long m = detail::checked_small_m(pa, degree_cap);
    detail::LiteralPolyTable table(pa, m);
    DensePoly acc;
    bool first = true;
    for (const Clause& cl : cnf.clauses) {
        DensePoly clause_poly = table.literal(cl[0]);
        for (std::size_t i = 1; i < cl.size(); ++i)
            clause_poly = lcm(clause_poly, table.literal(cl[i]));
        acc = first ? std::move(clause_poly) : gcd(acc, clause_poly);
        first = false;
        if (acc.degree() == 0) return DensePoly::one();
    }
    return first ? table.monic_cheb_m() : acc;
}

// Same polynomial assembled from the other end: the product of the
// cyclotomic-analog factors C_{M/alpha(psi)} over the satisfying assignments.
inline DensePoly polysat_via_assignments(const Cnf& cnf, const PrimeAssignment& pa,
                                         int bf_cap = 24, std::size_t degree_cap = 4096) {
    validate_cnf(cnf);
    require(static_cast<std::size_t>(cnf.num_vars) == pa.n(), errc::invalid_argument,
            "prime assignment does not match variable count");
    require(cnf.num_vars <= bf_cap, errc::too_many_variables,
            "formula above brute-force cap");
    detail::checked_small_m(pa, degree_cap);
    std::map<long, DensePoly> memo;
    DensePoly acc = DensePoly::one();
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        if (!detail::cnf_satisfied(cnf, bits)) continue;
        long ell = 1;
        for (std::size_t i = 0; i < pa.n(); ++i)
            if (!((bits >> i) & 1)) ell *= pa.prime(i);
        auto it = memo.find(ell);
        if (it == memo.end()) it = memo.emplace(ell, cyclotomic_analog_dense(ell)).first;
        acc = acc * it->second;
        require(acc.degree() <= static_cast<long>(degree_cap), errc::degree_cap_exceeded,
                "assignment product exceeds the dense degree cap");
    }
    return acc;
}

// ---- per-clause programs -------------------------------------------------------

// A clause C lifted to the full prime set: PolySAT is built densely over the
// clause's local primes only (N = product of at most three primes), cleared
// to a primitive integer polynomial G, emitted as a Horner program, and
// composed with T_{M/N}. The result computes I_M(C) * PolySAT_M(C) with
// I_M(C) = lc(G) * 2^((M/N - 1) deg G), held in mantissa/exponent form
// because the power of two is astronomically large for big M.
struct ClausePolynomial {
    Clause clause;
    std::vector<long> local_primes;
    mpz_class local_m;         // N = product of the local primes
    DensePoly polysat_local;   // monic PolySAT_N(C)
    DensePoly integer_multiple; // primitive integer G proportional to it
    Slp slp;                   // computes G o T_{M/N}
    mpz_class scalar_mantissa; // I_M(C) = mantissa * 2^scalar_exp2
    mpz_class scalar_exp2;
};

inline ClausePolynomial clause_slp(const Clause& clause, const PrimeAssignment& pa,
                                   std::size_t degree_cap = 4096) {
    require(!clause.empty() && clause.size() <= 3, errc::invalid_argument,
            "clause must have 1..3 literals");
    for (int lit : clause)
        require(lit != 0 && static_cast<std::size_t>(std::abs(lit)) <= pa.n(),
                errc::invalid_argument, "literal out of range");

    ClausePolynomial out;
    out.clause = clause;

    std::vector<int> vars;
    for (int lit : clause) {
        const int v = std::abs(lit);
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::sort(vars.begin(), vars.end());
    for (int v : vars) out.local_primes.push_back(pa.prime(static_cast<std::size_t>(v) - 1));

    PrimeAssignment local(out.local_primes);
    out.local_m = local.M();

    // Clause remapped onto the local variable indexing.
    Clause local_clause;
    for (int lit : clause) {
        const int v = std::abs(lit);
        const int local_v =
            static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin()) + 1;
        local_clause.push_back(lit > 0 ? local_v : -local_v);
    }
    Cnf local_cnf;
    local_cnf.num_vars = static_cast<int>(vars.size());
    local_cnf.clauses.push_back(local_clause);
    out.polysat_local = polysat_dense(local_cnf, local, degree_cap);
    out.integer_multiple = primitive_part(out.polysat_local);

    std::vector<unsigned long> rest;
    mpz_class rest_prod = 1;
    for (std::size_t i = 0; i < pa.n(); ++i) {
        const int v = static_cast<int>(i) + 1;
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
            rest.push_back(static_cast<unsigned long>(pa.prime(i)));
            rest_prod *= pa.prime(i);
        }
    }
    Slp horner = horner_slp(out.integer_multiple);
    out.slp = rest.empty() ? std::move(horner) : compose(horner, cheb_slp_factored(rest));
    out.scalar_mantissa = out.integer_multiple.leading().get_num();
    out.scalar_exp2 = (rest_prod - 1) * out.integer_multiple.degree();
    return out;
}

// ---- sum of squares ------------------------------------------------------------

struct SosProgram {
    Slp slp; // computes sum over clauses of (clause program)^2
    std::vector<ClausePolynomial> clause_programs;
};

inline SosProgram sos_slp(const Cnf& cnf, const PrimeAssignment& pa,
                          std::size_t degree_cap = 4096) {
    validate_cnf(cnf);
    require(static_cast<std::size_t>(cnf.num_vars) == pa.n(), errc::invalid_argument,
            "prime assignment does not match variable count");
    SosProgram out;
    SlpBuilder b;
    bool first = true;
    std::uint32_t acc = 0;
    for (const Clause& cl : cnf.clauses) {
        ClausePolynomial cp = clause_slp(cl, pa, degree_cap);
        std::uint32_t f = b.append(cp.slp);
        std::uint32_t sq = b.mul(f, f);
        acc = first ? sq : b.add(acc, sq);
        first = false;
        out.clause_programs.push_back(std::move(cp));
    }
    if (first) acc = b.constant(0); // no clauses: the zero program
    out.slp = b.take(acc);
    return out;
}

// ---- radical -------------------------------------------------------------------

// Desk-scale stand-in for a constructive radical: expand the program, take
// the exact squarefree part, re-emit a Horner program. The result's real
// roots are exactly the distinct real roots of the input, each simple.
struct RadicalResult {
    Slp slp;
    DensePoly dense;                   // primitive integer, squarefree
    unsigned long real_part_degree = 0; // number of (simple) real roots
};

namespace detail {

// Expand, take the exact squarefree part, re-emit as a program. The real-root
// count is reporting only and costs a full Sturm chain, so callers that only
// need the program (the decision loop) skip it.
inline RadicalResult radical_core(const SosProgram& sos, std::size_t degree_cap) {
    DensePoly expanded;
    try {
        expanded = slp_to_dense(sos.slp, degree_cap);
    } catch (const error& e) {
        if (e.code() == errc::degree_exceeded)
            fail(errc::degree_cap_exceeded, "sum-of-squares program exceeds desk scale",
                 e.index());
        throw;
    }
    RadicalResult out;
    out.dense = squarefree_part(expanded);
    out.slp = horner_slp(out.dense);
    return out;
}

} // namespace detail

inline RadicalResult radical_slp(const SosProgram& sos, std::size_t degree_cap = 4096) {
    RadicalResult out = detail::radical_core(sos, degree_cap);
    out.real_part_degree = count_distinct_real_roots(out.dense);
    return out;
}

// ---- combinatorial root counting ------------------------------------------------

// Sum over satisfying assignments of totient(M/alpha(psi)); equals the number
// of real roots of PolySAT_M(W), i.e. half of Z_R(P_M(W)).
inline mpz_class z_combinatorial(const Cnf& cnf, const PrimeAssignment& pa, int bf_cap = 24) {
    validate_cnf(cnf);
    require(static_cast<std::size_t>(cnf.num_vars) == pa.n(), errc::invalid_argument,
            "prime assignment does not match variable count");
    require(cnf.num_vars <= bf_cap, errc::too_many_variables, "formula above brute-force cap");
    mpz_class total = 0;
    const std::uint64_t all = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < all; ++bits) {
        if (!detail::cnf_satisfied(cnf, bits)) continue;
        mpz_class phi = 1;
        for (std::size_t i = 0; i < pa.n(); ++i)
            if (!((bits >> i) & 1)) phi *= pa.prime(i) - 1;
        total += phi;
    }
    return total;
}

// ---- Chinese remaindering --------------------------------------------------------

inline mpz_class crt_recover(const std::vector<mpz_class>& residues,
                             const std::vector<mpz_class>& moduli) {
    require(!moduli.empty() && residues.size() == moduli.size(), errc::invalid_argument,
            "residue/modulus lists must be nonempty and equally long");
    mpz_class x = 0, prod = 1;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const mpz_class& m = moduli[i];
        require(m >= 2, errc::invalid_argument, "modulus below 2");
        mpz_class g, inv, dummy;
        mpz_gcdext(g.get_mpz_t(), inv.get_mpz_t(), dummy.get_mpz_t(), prod.get_mpz_t(),
                   m.get_mpz_t());
        require(g == 1, errc::non_coprime_moduli, "moduli are not pairwise coprime",
                static_cast<long>(i));
        mpz_class delta = ((residues[i] - x) % m + m) % m;
        x += prod * ((delta * inv) % m);
        prod *= m;
        x = ((x % prod) + prod) % prod;
    }
    return x;
}

// ---- primes in arithmetic progression --------------------------------------------

// Moduli q_1..q_n and an n x n matrix of distinct odd primes with
// p_ij = 2 mod q_i. Each row serves as a prime assignment whose totients are
// all = 1 mod q_i.
struct CountingSetup {
    std::size_t n = 0;
    std::vector<long> moduli;                    // q_1..q_n, distinct odd primes
    std::vector<std::vector<long>> prime_matrix; // row i: p_i1..p_in
};

inline CountingSetup primes_in_ap(std::size_t n) {
    require(n >= 1, errc::invalid_argument, "need n >= 1");
    CountingSetup setup;
    setup.n = n;
    setup.moduli = smallest_odd_primes(n);
    // The recovery invariant needs prod q_i > 2^(n+1); the first n odd primes
    // only miss it at n = 1, where the window slides from (3) to (5).
    auto product_ok = [&]() {
        mpz_class prod = 1;
        for (long q : setup.moduli) prod *= q;
        return prod > (mpz_class(1) << (n + 1));
    };
    while (!product_ok()) {
        long next = setup.moduli.back() + 2;
        while (!is_prime_u64(static_cast<std::uint64_t>(next))) next += 2;
        setup.moduli.erase(setup.moduli.begin());
        setup.moduli.push_back(next);
    }
    std::set<long> used;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> row;
        for (long a = 1; row.size() < n; ++a) {
            const long cand = a * setup.moduli[i] + 2;
            if (!is_prime_u64(static_cast<std::uint64_t>(cand))) continue;
            if (used.count(cand)) continue;
            used.insert(cand);
            row.push_back(cand);
        }
        setup.prime_matrix.push_back(std::move(row));
    }
    return setup;
}

// ---- #3SAT from root counts -------------------------------------------------------

enum class RootCountOracle { combinatorial, sturm };

// Z_R(P_M(W)) through the dense Sturm machinery: expand every clause program,
// square and sum densely, count with multiplicity. Tiny instances only.
inline mpz_class z_sturm(const Cnf& cnf, const PrimeAssignment& pa,
                         std::size_t degree_cap = 4096) {
    validate_cnf(cnf);
    if (cnf.clauses.empty()) {
        // Always-true formula: P = 0 is degenerate, but PolySAT = monic T_M.
        return 2 * mpz_class(detail::checked_small_m(pa, degree_cap));
    }
    DensePoly p = DensePoly::zero();
    for (const Clause& cl : cnf.clauses) {
        ClausePolynomial cp = clause_slp(cl, pa, degree_cap);
        DensePoly f = slp_to_dense(cp.slp, degree_cap);
        p = p + f * f;
        require(p.degree() <= 2 * static_cast<long>(degree_cap), errc::degree_cap_exceeded,
                "sum of squares exceeds the dense degree cap");
    }
    return mpz_class(count_real_roots_with_multiplicity(p));
}

// Recover #W by Chinese remaindering the per-row residues (Z_i / 2) mod q_i.
inline mpz_class sharp_sat_via_root_counting(const Cnf& cnf, RootCountOracle oracle,
                                             int bf_cap = 24, std::size_t degree_cap = 4096) {
    validate_cnf(cnf);
    require(cnf.num_vars >= 1, errc::invalid_argument, "need at least one variable");
    const std::size_t n = static_cast<std::size_t>(cnf.num_vars);
    CountingSetup setup = primes_in_ap(n);
    std::vector<mpz_class> residues, moduli;
    for (std::size_t i = 0; i < n; ++i) {
        PrimeAssignment pa(setup.prime_matrix[i]);
        mpz_class z = oracle == RootCountOracle::combinatorial
                          ? 2 * z_combinatorial(cnf, pa, bf_cap)
                          : z_sturm(cnf, pa, degree_cap);
        require(mpz_even_p(z.get_mpz_t()), errc::odd_root_count,
                "oracle returned an odd real-root count", static_cast<long>(i));
        residues.push_back((z / 2) % setup.moduli[i]);
        moduli.push_back(setup.moduli[i]);
    }
    return crt_recover(residues, moduli);
}

// ---- succinct integer inequality ---------------------------------------------------

// Constant program computing prod a_i^{b_i} - prod c_j^{d_j}; the inequality
// holds iff its sign at any point is >= 0.
inline Slp build_succinct_inequality_slp(const std::vector<mpz_class>& a,
                                         const std::vector<unsigned long>& b,
                                         const std::vector<mpz_class>& c,
                                         const std::vector<unsigned long>& d) {
    require(!a.empty() && a.size() == b.size(), errc::invalid_argument,
            "left side lists must be nonempty and equally long");
    require(!c.empty() && c.size() == d.size(), errc::invalid_argument,
            "right side lists must be nonempty and equally long");
    for (const auto& v : a) require(v >= 1, errc::invalid_argument, "entries must be positive");
    for (const auto& v : c) require(v >= 1, errc::invalid_argument, "entries must be positive");
    SlpBuilder bd;
    auto side = [&](const std::vector<mpz_class>& bases, const std::vector<unsigned long>& exps) {
        std::uint32_t acc = 0;
        for (std::size_t i = 0; i < bases.size(); ++i) {
            std::uint32_t pw = bd.power(bd.constant(bases[i]), exps[i]);
            acc = i == 0 ? pw : bd.mul_opt(acc, pw);
        }
        return acc;
    };
    std::uint32_t left = side(a, b);
    std::uint32_t right = side(c, d);
    return bd.take(bd.sub(left, right));
}

// ---- randomized decision ------------------------------------------------------------

enum class PrimePolicy { strict_n3, relaxed };

inline const char* policy_name(PrimePolicy p) {
    return p == PrimePolicy::strict_n3 ? "strict_n3" : "relaxed";
}

// strict_n3 assigns the smallest distinct odd primes >= max(3, n^3) so that
// p_min >= n^3; relaxed starts at 3 and is the dense-verifiable, desk-scale
// choice (flagged in reports).
inline PrimeAssignment assign_primes(PrimePolicy policy, std::size_t n) {
    long floor = 3;
    if (policy == PrimePolicy::strict_n3) {
        const long nl = static_cast<long>(n);
        floor = std::max(3L, nl * nl * nl);
    }
    return PrimeAssignment(smallest_odd_primes(n, floor));
}

enum class Verdict { sat, likely_unsat };
enum class WitnessKind { none, sign_flip, exact_root_hit, all_true };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::sat ? "SAT" : "LIKELY_UNSAT";
}

inline const char* witness_name(WitnessKind w) {
    switch (w) {
    case WitnessKind::sign_flip: return "sign_flip";
    case WitnessKind::exact_root_hit: return "exact_root_hit";
    case WitnessKind::all_true: return "all_true";
    case WitnessKind::none: return "none";
    }
    return "none";
}

struct DecisionReport {
    Verdict verdict = Verdict::likely_unsat;
    unsigned long trials = 0;    // K draws actually made
    unsigned long successes = 0; // draws with a certified sign flip or root hit
    WitnessKind witness_kind = WitnessKind::none;
    std::uint64_t seed = 0;
    std::vector<long> primes_used;
    mpz_class M = 0;
    PrimePolicy policy = PrimePolicy::strict_n3;
    long elapsed_ms = 0;
};

struct DecideOptions {
    std::uint64_t seed = 0;
    unsigned long trials = 200;
    PrimePolicy policy = PrimePolicy::strict_n3;
    std::size_t degree_cap = 4096;
    mpfr_prec_t precision_cap_bits = 1 << 16;
    // K draws taken per isolation round; the isolation reduction is re-rolled
    // between rounds so that satisfiable inputs are not starved by one
    // unlucky (or desk-infeasible) constraint draw.
    unsigned long draws_per_round = 8;
    // Rounds are taken only when M stays below this; the radical's dense
    // squarefree step is roughly cubic in deg P ~ 2M, so this is much stricter
    // than degree_cap.
    std::size_t radical_m_cap = 512;
};

// Randomized satisfiability decision against the exact sign oracle:
//   1. all-true precheck;
//   2. per round: Valiant-Vazirani isolation, prime assignment over all
//      (original + auxiliary) variables, sum-of-squares program, exact
//      radical; rounds whose M exceeds desk scale are skipped;
//   3. per draw: sample K uniform in [-M^4, M^4]; sign 0 at K/M^4 certifies a
//      real root (SAT), a sign flip against F(1) certifies one too;
//   4. no success across all draws: LIKELY_UNSAT.
// A sign flip certifies a real root of the radical, which certifies
// satisfiability, so an unsatisfiable input can never produce SAT.
inline DecisionReport decide_sat_via_posslp(const Cnf& cnf, const DecideOptions& opt = {}) {
    validate_cnf(cnf);
    require(opt.trials >= 1, errc::invalid_argument, "need at least one trial");
    require(cnf.num_vars >= 1, errc::invalid_argument, "need at least one variable");
    const auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        return static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - started)
                                     .count());
    };

    DecisionReport rep;
    rep.seed = opt.seed;
    rep.policy = opt.policy;

    if (all_true_check(cnf)) {
        PrimeAssignment pa = assign_primes(opt.policy, static_cast<std::size_t>(cnf.num_vars));
        rep.verdict = Verdict::sat;
        rep.witness_kind = WitnessKind::all_true;
        rep.primes_used = pa.primes();
        rep.M = pa.M();
        rep.elapsed_ms = elapsed_ms();
        return rep;
    }

    Rng rng(opt.seed);
    const SignConfig sign_cfg{64, opt.precision_cap_bits};
    const unsigned long per_round = std::max(1UL, opt.draws_per_round);
    const unsigned long max_attempts = 64 + 4 * (opt.trials / per_round + 1);
    unsigned long feasible_rounds = 0;

    // Isolation draws repeat (k = 0 reproduces the input formula verbatim),
    // so radicals are cached per distinct W' within this call.
    struct RoundData {
        RadicalResult rad;
        Sign s_one = Sign::zero;
    };
    std::map<std::string, RoundData> radical_cache;

    for (unsigned long attempt = 0; rep.trials < opt.trials; ++attempt) {
        if (attempt >= max_attempts) {
            require(feasible_rounds > 0, errc::degree_cap_exceeded,
                    "no isolation round fits the desk-scale radical");
            break; // feasible rounds exist but the draw budget ran dry early
        }
        Rng vv_rng = rng.split(2 * attempt);
        Rng draw_rng = rng.split(2 * attempt + 1);
        VvReduction vv = vv_reduce(cnf, vv_rng);
        PrimeAssignment pa =
            assign_primes(opt.policy, static_cast<std::size_t>(vv.cnf.num_vars));
        const std::size_t m_cap = std::min(opt.radical_m_cap, opt.degree_cap / 2);
        if (pa.M() > static_cast<long>(m_cap)) continue; // deg P ~ 2M: round too big
        ++feasible_rounds;

        const std::string key = serialize_dimacs(vv.cnf);
        auto it = radical_cache.find(key);
        if (it == radical_cache.end()) {
            SosProgram sos = sos_slp(vv.cnf, pa, opt.degree_cap);
            RoundData data;
            data.rad = detail::radical_core(sos, opt.degree_cap);
            data.s_one = sign_at_rational(data.rad.slp, 1, 1, sign_cfg);
            it = radical_cache.emplace(key, std::move(data)).first;
        }
        const RadicalResult& rad = it->second.rad;
        const Sign s_one = it->second.s_one;
        const mpz_class m4 = pa.M() * pa.M() * pa.M() * pa.M();
        const mpz_class span = 2 * m4 + 1;

        for (unsigned long d = 0; d < per_round && rep.trials < opt.trials; ++d) {
            const mpz_class k = draw_rng.mpz_below(span) - m4;
            const Sign s_a = sign_at_rational(rad.slp, k, m4, sign_cfg);
            ++rep.trials;
            WitnessKind kind = WitnessKind::none;
            if (s_a == Sign::zero) kind = WitnessKind::exact_root_hit;
            else if (sign_int(s_a) * sign_int(s_one) < 0) kind = WitnessKind::sign_flip;
            if (kind != WitnessKind::none) {
                ++rep.successes;
                if (rep.witness_kind == WitnessKind::none) {
                    rep.witness_kind = kind;
                    rep.primes_used = pa.primes();
                    rep.M = pa.M();
                }
            }
        }
        if (rep.witness_kind == WitnessKind::none) {
            rep.primes_used = pa.primes();
            rep.M = pa.M();
        }
    }

    rep.verdict = rep.successes > 0 ? Verdict::sat : Verdict::likely_unsat;
    rep.elapsed_ms = elapsed_ms();
    return rep;
}

// Stable-key JSON rendering; unbounded integers go out as decimal strings.
inline std::string decision_report_json(const DecisionReport& rep) {
    std::ostringstream os;
    os << "{\"verdict\":\"" << verdict_name(rep.verdict) << "\""
       << ",\"trials\":" << rep.trials
       << ",\"successes\":" << rep.successes
       << ",\"witness_kind\":\"" << witness_name(rep.witness_kind) << "\""
       << ",\"seed\":\"" << rep.seed << "\""
       << ",\"primes\":[";
    for (std::size_t i = 0; i < rep.primes_used.size(); ++i) {
        if (i) os << ',';
        os << '"' << rep.primes_used[i] << '"';
    }
    os << "],\"M\":\"" << rep.M.get_str() << "\""
       << ",\"policy\":\"" << policy_name(rep.policy) << "\""
       << ",\"elapsed_ms\":" << rep.elapsed_ms << "}";
    return os.str();
}

} // namespace slpsat
