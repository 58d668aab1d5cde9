#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aifv {

/// Failure categories raised by the library.
enum class Errc {
    not_a_prefix,
    empty_word_set,
    cap_exceeded,
    member_too_long,
    index_out_of_range,
    structure_violation,
    unvalidated,
    invalid_set,
    symbol_out_of_range,
    no_match,
    ambiguous_match,
    truncated,
    prefix_mismatch,
    normalization_failed,
    depth_exceeded,
    no_convergence,
    dimension_mismatch,
    invalid_distribution,
    parse_error,
    internal,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::not_a_prefix: return "NotAPrefix";
        case Errc::empty_word_set: return "EmptyWordSet";
        case Errc::cap_exceeded: return "CapExceeded";
        case Errc::member_too_long: return "MemberTooLong";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::structure_violation: return "StructureViolation";
        case Errc::unvalidated: return "Unvalidated";
        case Errc::invalid_set: return "InvalidSet";
        case Errc::symbol_out_of_range: return "SymbolOutOfRange";
        case Errc::no_match: return "NoMatch";
        case Errc::ambiguous_match: return "AmbiguousMatch";
        case Errc::truncated: return "Truncated";
        case Errc::prefix_mismatch: return "PrefixMismatch";
        case Errc::normalization_failed: return "NormalizationFailed";
        case Errc::depth_exceeded: return "DepthExceeded";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::invalid_distribution: return "InvalidDistribution";
        case Errc::parse_error: return "ParseError";
        case Errc::internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace aifv
