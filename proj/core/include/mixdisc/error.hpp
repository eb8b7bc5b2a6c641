#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mixdisc {

enum class Errc {
    NotSymmetric,
    NotPsd,
    DimensionTooLarge,
    AmbientMismatch,
    NegativeCoefficient,
    ZeroAtomVector,
    PreconditionViolated,
    SearchExhausted,
    NotInOrthogonalComplement,
    ExactDecompositionUnsupported,
    ReferenceTupleDegenerate,
    SchemaError,
};

/// Library-wide exception. `detail_json()` is either empty or a valid JSON
/// fragment (e.g. a NOT_PSD witness vector) the CLI inlines into its output.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, std::string detail_json = {})
        : std::runtime_error(message), code_(code), detail_json_(std::move(detail_json)) {}

    Errc code() const { return code_; }
    const std::string& detail_json() const { return detail_json_; }

private:
    Errc code_;
    std::string detail_json_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotSymmetric: return "NOT_SYMMETRIC";
        case Errc::NotPsd: return "NOT_PSD";
        case Errc::DimensionTooLarge: return "DIMENSION_TOO_LARGE";
        case Errc::AmbientMismatch: return "AMBIENT_MISMATCH";
        case Errc::NegativeCoefficient: return "NEGATIVE_COEFFICIENT";
        case Errc::ZeroAtomVector: return "ZERO_ATOM_VECTOR";
        case Errc::PreconditionViolated: return "PRECONDITION_VIOLATED";
        case Errc::SearchExhausted: return "SEARCH_EXHAUSTED";
        case Errc::NotInOrthogonalComplement: return "NOT_IN_ORTHOGONAL_COMPLEMENT";
        case Errc::ExactDecompositionUnsupported: return "EXACT_DECOMPOSITION_UNSUPPORTED";
        case Errc::ReferenceTupleDegenerate: return "REFERENCE_TUPLE_DEGENERATE";
        case Errc::SchemaError: return "SCHEMA_ERROR";
    }
    return "UNKNOWN";
}

}  // namespace mixdisc
