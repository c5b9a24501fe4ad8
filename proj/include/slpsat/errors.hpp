#pragma once

#include <stdexcept>
#include <string>

namespace slpsat {

// Error kinds surfaced by the library. The CLI maps these onto exit codes
// (parse = 2, resource caps = 3, internal invariant breakage = 4).
enum class errc {
    forward_reference,
    bad_out_index,
    syntax_error,
    zero_modulus,
    zero_denominator,
    degree_exceeded,
    division_by_zero_poly,
    both_zero,
    zero_polynomial,
    root_at_endpoint,
    non_integer_coefficients,
    too_many_variables,
    clause_too_long,
    even_t,
    t_out_of_range,
    duplicate_root,
    even_argument,
    index_out_of_range,
    precision_exhausted,
    degree_cap_exceeded,
    exact_division_failed,
    non_coprime_moduli,
    odd_root_count,
    invalid_argument,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::forward_reference: return "ForwardReference";
    case errc::bad_out_index: return "BadOutIndex";
    case errc::syntax_error: return "SyntaxError";
    case errc::zero_modulus: return "ZeroModulus";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::degree_exceeded: return "DegreeExceeded";
    case errc::division_by_zero_poly: return "DivisionByZeroPoly";
    case errc::both_zero: return "BothZero";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::root_at_endpoint: return "RootAtEndpoint";
    case errc::non_integer_coefficients: return "NonIntegerCoefficients";
    case errc::too_many_variables: return "TooManyVariables";
    case errc::clause_too_long: return "ClauseTooLong";
    case errc::even_t: return "EvenT";
    case errc::t_out_of_range: return "TOutOfRange";
    case errc::duplicate_root: return "DuplicateRoot";
    case errc::even_argument: return "EvenArgument";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case errc::exact_division_failed: return "ExactDivisionFailed";
    case errc::non_coprime_moduli: return "NonCoprimeModuli";
    case errc::odd_root_count: return "OddRootCount";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what, long index = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          index_(index) {}

    errc code() const noexcept { return code_; }

    // Offending node index / line number / clause index, -1 when not applicable.
    long index() const noexcept { return index_; }

private:
    errc code_;
    long index_;
};

[[noreturn]] inline void fail(errc code, const std::string& what, long index = -1) {
    throw error(code, what, index);
}

inline void require(bool cond, errc code, const std::string& what, long index = -1) {
    if (!cond) fail(code, what, index);
}

} // namespace slpsat
