// Command-line surface for the library: program evaluation and sign queries,
// Chebyshev program emission, the PolySAT/SOS/radical reductions, interval
// geometry exports, the randomized satisfiability decision, #3SAT recovery,
// the Valiant-Vazirani reduction, and succinct integer inequalities.
//
// Exit codes: 0 success, 2 parse/input error, 3 resource cap exceeded,
// 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slpsat/cheb.hpp"
#include "slpsat/densepoly.hpp"
#include "slpsat/errors.hpp"
#include "slpsat/reductions.hpp"
#include "slpsat/root_geometry.hpp"
#include "slpsat/sat.hpp"
#include "slpsat/slp.hpp"
#include "slpsat/slp_dense.hpp"
#include "slpsat/slp_eval.hpp"

namespace {

using namespace slpsat;

int exit_code_for(errc code) {
    switch (code) {
    case errc::degree_exceeded:
    case errc::degree_cap_exceeded:
    case errc::precision_exhausted:
    case errc::too_many_variables:
        return 3;
    case errc::exact_division_failed:
    case errc::odd_root_count:
    case errc::internal:
        return 4;
    default:
        return 2;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::syntax_error, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

mpq_class parse_rational(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0)
        fail(errc::syntax_error, "bad rational '" + text + "'");
    if (v.get_den() == 0) fail(errc::zero_denominator, "denominator is zero");
    v.canonicalize();
    return v;
}

std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stol(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(errc::syntax_error, "bad integer list entry '" + tok + "'");
        }
    }
    if (out.empty()) fail(errc::syntax_error, "empty integer list");
    return out;
}

std::vector<mpz_class> parse_mpz_list(const std::string& text) {
    std::vector<mpz_class> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        mpz_class v;
        if (v.set_str(tok, 10) != 0) fail(errc::syntax_error, "bad integer '" + tok + "'");
        out.push_back(std::move(v));
    }
    if (out.empty()) fail(errc::syntax_error, "empty integer list");
    return out;
}

std::vector<unsigned long> parse_ulong_list(const std::string& text) {
    std::vector<unsigned long> out;
    for (const auto& v : parse_mpz_list(text)) {
        if (v < 0 || !mpz_fits_ulong_p(v.get_mpz_t()))
            fail(errc::syntax_error, "exponent out of range");
        out.push_back(mpz_get_ui(v.get_mpz_t()));
    }
    return out;
}

// Root set of PolySAT_M(W) as an interval partition. A unique satisfying
// assignment gives the C_N root set at N = M/alpha; otherwise the fibers of
// all satisfying assignments are merged at level M.
IntervalPartition partition_for_cnf(const Cnf& cnf, const PrimeAssignment& pa) {
    require(static_cast<std::size_t>(cnf.num_vars) == pa.n(), errc::invalid_argument,
            "prime assignment does not match variable count");
    std::vector<AssignmentSubset> sats;
    const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t bits = 0; bits < total; ++bits)
        if (detail::cnf_satisfied(cnf, bits)) sats.push_back(AssignmentSubset{bits});
    if (sats.size() == 1) {
        mpz_class n_level = pa.M() / alpha(sats[0], pa);
        require(mpz_fits_slong_p(n_level.get_mpz_t()) && n_level <= (1L << 26),
                errc::degree_cap_exceeded, "root enumeration above desk scale");
        const long n_long = mpz_get_si(n_level.get_mpz_t());
        std::vector<mpz_class> ts;
        for (long t = 1; t < 2 * n_long; t += 2)
            if (std::gcd(t, 2 * n_long) == 1) ts.emplace_back(t);
        return build_partition(n_level, std::move(ts));
    }
    std::vector<mpz_class> ts;
    for (const auto& phi : sats) {
        for (auto& t : fiber(pa, phi)) ts.push_back(std::move(t));
    }
    return build_partition(pa.M(), std::move(ts));
}

int run(int argc, char** argv) {
    CLI::App app{"Exact straight-line-program toolkit: Chebyshev reductions, "
                 "real-root counting, and randomized SAT decisions"};
    app.require_subcommand(1);

    // ---- slp ----
    auto* slp_cmd = app.add_subcommand("slp", "Evaluate, sign-check or expand slpv1 programs");
    slp_cmd->require_subcommand(1);
    std::string slp_at = "0";
    std::string slp_file;
    std::size_t max_degree = 0;

    auto* slp_eval_cmd = slp_cmd->add_subcommand("eval", "Exact rational value at a point");
    slp_eval_cmd->add_option("--at", slp_at, "Evaluation point P/Q")->required();
    slp_eval_cmd->add_option("file", slp_file, "slpv1 program file")->required();
    slp_eval_cmd->callback([&]() {
        Slp slp = parse_slp(read_file(slp_file));
        validate_or_throw(slp);
        std::cout << eval_rational(slp, parse_rational(slp_at)) << '\n';
    });

    auto* slp_sign_cmd = slp_cmd->add_subcommand("sign", "Exact sign at a point");
    slp_sign_cmd->add_option("--at", slp_at, "Evaluation point P/Q")->required();
    slp_sign_cmd->add_option("file", slp_file, "slpv1 program file")->required();
    slp_sign_cmd->callback([&]() {
        Slp slp = parse_slp(read_file(slp_file));
        validate_or_throw(slp);
        mpq_class at = parse_rational(slp_at);
        std::cout << sign_int(sign_at_rational(slp, at.get_num(), at.get_den())) << '\n';
    });

    auto* slp_expand_cmd = slp_cmd->add_subcommand("expand", "Dense coefficient expansion");
    slp_expand_cmd->add_option("--max-degree", max_degree, "Degree cap")->required();
    slp_expand_cmd->add_option("file", slp_file, "slpv1 program file")->required();
    slp_expand_cmd->callback([&]() {
        Slp slp = parse_slp(read_file(slp_file));
        validate_or_throw(slp);
        std::cout << serialize_densepoly(slp_to_dense(slp, max_degree)) << '\n';
    });

    // ---- cheb ----
    auto* cheb_cmd = app.add_subcommand("cheb", "Chebyshev program emission");
    cheb_cmd->require_subcommand(1);
    unsigned long cheb_k = 0;
    std::string cheb_factors;
    auto* cheb_emit_cmd = cheb_cmd->add_subcommand("emit", "Emit a T_k program as slpv1");
    auto* kopt = cheb_emit_cmd->add_option("--k", cheb_k, "Index k");
    auto* fopt = cheb_emit_cmd->add_option("--factors", cheb_factors,
                                           "Comma-separated factorization of k");
    kopt->excludes(fopt);
    cheb_emit_cmd->callback([&]() {
        if (!cheb_factors.empty()) {
            std::vector<unsigned long> fs;
            for (long f : parse_long_list(cheb_factors)) {
                require(f >= 2, errc::invalid_argument, "factors must be >= 2");
                fs.push_back(static_cast<unsigned long>(f));
            }
            std::cout << serialize_slp(cheb_slp_factored(fs));
        } else {
            require(kopt->count() > 0, errc::invalid_argument, "need --k or --factors");
            std::cout << serialize_slp(cheb_slp(cheb_k));
        }
    });

    // ---- reduce ----
    auto* reduce_cmd = app.add_subcommand("reduce", "PolySAT / clause / SOS / radical pipelines");
    reduce_cmd->require_subcommand(1);
    std::string cnf_file, primes_list;
    std::size_t degree_cap = 4096;
    std::size_t clause_index = 0;

    auto add_reduce_common = [&](CLI::App* sub) {
        sub->add_option("--cnf", cnf_file, "DIMACS CNF file")->required();
        sub->add_option("--primes", primes_list, "Comma-separated odd primes")->required();
        sub->add_option("--degree-cap", degree_cap, "Dense degree cap");
    };

    auto* red_polysat = reduce_cmd->add_subcommand("polysat", "Dense PolySAT coefficients");
    add_reduce_common(red_polysat);
    red_polysat->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        PrimeAssignment pa(parse_long_list(primes_list));
        std::cout << serialize_densepoly(polysat_dense(cnf, pa, degree_cap)) << '\n';
    });

    auto* red_clause = reduce_cmd->add_subcommand("clause", "Per-clause lifted program");
    add_reduce_common(red_clause);
    red_clause->add_option("--index", clause_index, "Clause index (default 0)");
    red_clause->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        PrimeAssignment pa(parse_long_list(primes_list));
        require(clause_index < cnf.clauses.size(), errc::index_out_of_range,
                "clause index out of range");
        std::cout << serialize_slp(clause_slp(cnf.clauses[clause_index], pa, degree_cap).slp);
    });

    auto* red_sos = reduce_cmd->add_subcommand("sos", "Sum-of-squares program");
    add_reduce_common(red_sos);
    red_sos->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        PrimeAssignment pa(parse_long_list(primes_list));
        std::cout << serialize_slp(sos_slp(cnf, pa, degree_cap).slp);
    });

    auto* red_radical = reduce_cmd->add_subcommand("radical", "Squarefree-part program");
    add_reduce_common(red_radical);
    red_radical->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        PrimeAssignment pa(parse_long_list(primes_list));
        std::cout << serialize_slp(radical_slp(sos_slp(cnf, pa, degree_cap), degree_cap).slp);
    });

    // ---- geometry ----
    auto* geo_cmd = app.add_subcommand("geometry", "Interval partitions of (-1,1)");
    geo_cmd->require_subcommand(1);
    std::string csv_out;
    auto* geo_intervals = geo_cmd->add_subcommand("intervals", "Partition CSV for a formula");
    geo_intervals->add_option("--cnf", cnf_file, "DIMACS CNF file")->required();
    geo_intervals->add_option("--primes", primes_list, "Comma-separated odd primes")->required();
    geo_intervals->add_option("--out", csv_out, "Output CSV path")->required();
    geo_intervals->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        PrimeAssignment pa(parse_long_list(primes_list));
        IntervalPartition part = partition_for_cnf(cnf, pa);
        std::ofstream out(csv_out, std::ios::binary);
        if (!out) fail(errc::syntax_error, "cannot open '" + csv_out + "' for writing");
        write_partition_csv(part, out);
    });

    // ---- decide ----
    auto* decide_cmd = app.add_subcommand("decide", "Randomized satisfiability decision");
    decide_cmd->require_subcommand(1);
    DecideOptions dopt;
    std::string policy_str = "strict_n3";
    auto* decide_sat_cmd = decide_cmd->add_subcommand("sat", "Decide via sign sampling");
    decide_sat_cmd->add_option("--cnf", cnf_file, "DIMACS CNF file")->required();
    decide_sat_cmd->add_option("--seed", dopt.seed, "64-bit seed")->required();
    decide_sat_cmd->add_option("--trials", dopt.trials, "Sampling trials");
    decide_sat_cmd->add_option("--policy", policy_str, "strict_n3 | relaxed")
        ->check(CLI::IsMember({"strict_n3", "relaxed"}));
    decide_sat_cmd->add_option("--degree-cap", dopt.degree_cap, "Dense degree cap");
    decide_sat_cmd->add_option("--precision-cap", dopt.precision_cap_bits,
                               "Adaptive sign precision cap (bits)");
    decide_sat_cmd->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        dopt.policy = policy_str == "relaxed" ? PrimePolicy::relaxed : PrimePolicy::strict_n3;
        std::cout << decision_report_json(decide_sat_via_posslp(cnf, dopt)) << '\n';
    });

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "#3SAT recovery from real-root counts");
    count_cmd->require_subcommand(1);
    std::string oracle_str = "combinatorial";
    auto* count_sharp = count_cmd->add_subcommand("sharpsat", "Recover #W via CRT");
    count_sharp->add_option("--cnf", cnf_file, "DIMACS CNF file")->required();
    count_sharp->add_option("--oracle", oracle_str, "combinatorial | sturm")
        ->check(CLI::IsMember({"combinatorial", "sturm"}));
    count_sharp->add_option("--degree-cap", degree_cap, "Dense degree cap (sturm oracle)");
    count_sharp->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        RootCountOracle oracle = oracle_str == "sturm" ? RootCountOracle::sturm
                                                       : RootCountOracle::combinatorial;
        std::cout << sharp_sat_via_root_counting(cnf, oracle, 24, degree_cap) << '\n';
    });

    // ---- sat ----
    auto* sat_cmd = app.add_subcommand("sat", "SAT-side utilities");
    sat_cmd->require_subcommand(1);
    std::uint64_t vv_seed = 0;
    auto* sat_vv = sat_cmd->add_subcommand("vv", "Valiant-Vazirani isolation reduction");
    sat_vv->add_option("--cnf", cnf_file, "DIMACS CNF file")->required();
    sat_vv->add_option("--seed", vv_seed, "64-bit seed")->required();
    sat_vv->callback([&]() {
        Cnf cnf = parse_dimacs(read_file(cnf_file));
        Rng rng(vv_seed);
        std::cout << serialize_dimacs(vv_reduce(cnf, rng).cnf);
    });

    // ---- ineq ----
    auto* ineq_cmd = app.add_subcommand("ineq", "Succinct integer inequalities");
    ineq_cmd->require_subcommand(1);
    std::string list_a, list_b, list_c, list_d;
    auto* ineq_succ = ineq_cmd->add_subcommand(
        "succinct", "Decide prod a_i^b_i >= prod c_j^d_j by sign evaluation");
    ineq_succ->add_option("--a", list_a, "Left bases, comma-separated")->required();
    ineq_succ->add_option("--b", list_b, "Left exponents")->required();
    ineq_succ->add_option("--c", list_c, "Right bases")->required();
    ineq_succ->add_option("--d", list_d, "Right exponents")->required();
    ineq_succ->callback([&]() {
        Slp slp = build_succinct_inequality_slp(parse_mpz_list(list_a), parse_ulong_list(list_b),
                                                parse_mpz_list(list_c), parse_ulong_list(list_d));
        const Sign s = sign_at_rational(slp, 0, 1);
        std::cout << (sign_int(s) >= 0 ? "true" : "false") << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // flag misuse and unknown options are parse errors
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const slpsat::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
