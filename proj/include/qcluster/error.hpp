#ifndef QCLUSTER_ERROR_HPP
#define QCLUSTER_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcluster {

enum class errc {
    not_divisible,
    division_by_zero,
    missing_assignment,
    dimension_mismatch,
    context_mismatch,
    not_compatible,
    not_skew_symmetric,
    rank_deficient,
    epsilon_mismatch,
    negative_mutable_exponent,
    laurent_violation,
    invalid_exchange_data,
    invalid_direction,
    syntax_error,
    invalid_seed_file,
};

inline std::string_view errc_name(errc code)
{
    switch (code) {
    case errc::not_divisible: return "NotDivisible";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::missing_assignment: return "MissingAssignment";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::context_mismatch: return "ContextMismatch";
    case errc::not_compatible: return "NotCompatible";
    case errc::not_skew_symmetric: return "NotSkewSymmetric";
    case errc::rank_deficient: return "RankDeficient";
    case errc::epsilon_mismatch: return "EpsilonMismatch";
    case errc::negative_mutable_exponent: return "NegativeMutableExponent";
    case errc::laurent_violation: return "LaurentViolation";
    case errc::invalid_exchange_data: return "InvalidExchangeData";
    case errc::invalid_direction: return "InvalidDirection";
    case errc::syntax_error: return "SyntaxError";
    case errc::invalid_seed_file: return "InvalidSeedFile";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI reports; the message is for humans.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

class syntax_error : public error {
public:
    syntax_error(std::size_t position, const std::string& what)
        : error(errc::syntax_error, what + " at position " + std::to_string(position)),
          position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace qcluster

#endif // QCLUSTER_ERROR_HPP
