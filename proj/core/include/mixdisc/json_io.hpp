#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mixdisc/ellipsoid.hpp"
#include "mixdisc/harness.hpp"
#include "mixdisc/positivity.hpp"

namespace mixdisc {

enum class Backend { Exact, Float64 };

/// One parsed matrix-tuple document. Matrices are PSD-validated on ingest;
/// the optional blocks stay empty when absent from the file.
template <ScalarBackend S>
struct InputDocument {
    int n = 0;
    std::vector<PsdMatrix<S>> matrices;
    std::vector<Vec<S>> segment_vectors;
    std::vector<S> lambdas;
    std::optional<Vec<S>> direction;
};

using ParsedInput = std::variant<InputDocument<Rational>, InputDocument<double>>;

/// Parses the matrix-tuple schema:
///   {"n": int, "field": "rational"|"float64", "matrices": [[[entry,...],...],...],
///    "segments": [{"vector": [...]}], "lambdas": [...], "direction": [...]}
/// Rational entries are "p/q" strings (plain integers allowed); float64
/// entries are numbers. The field key defaults to "rational".
ParsedInput parse_input(const std::string& json_text, const Tolerance& tol = {});
ParsedInput read_input_file(const std::string& path, const Tolerance& tol = {});

template <ScalarBackend S>
struct FunctionalDocument {
    CandidateFunctional<S> functional;
    int n = 0;  // 0 when the document does not pin the tuple size
};

using ParsedFunctional = std::variant<FunctionalDocument<Rational>, FunctionalDocument<double>>;

/// Parses a candidate-functional document:
///   {"kind": "scaled_md", "a": entry}
///   {"kind": "product", "matrices": [B_2, ..., B_n]}
///   {"kind": "measure", "atoms": [{"vectors": [[...],...], "weight": entry}]}
/// plus the shared "field" key.
ParsedFunctional parse_functional(const std::string& json_text, const Tolerance& tol = {});
ParsedFunctional read_functional_file(const std::string& path, const Tolerance& tol = {});

template <ScalarBackend S>
std::string compute_result_json(const S& value, const std::string& algorithm, int n);

/// Verdict with 1-based indices in "subset"; the transversal carries the
/// witness vectors, the combination coefficients, and their determinant.
template <ScalarBackend S>
std::string verdict_json(const PositivityVerdict<S>& v);

template <ScalarBackend S>
std::string support_json(const SupportValue<S>& s);

template <ScalarBackend S>
std::string matrix_json_text(const SymMatrix<S>& m);

template <ScalarBackend S>
std::string volume_json(const VolumeValue<S>& v);

template <ScalarBackend S>
std::string segments_json(const std::vector<Segment<S>>& segs, bool verified);

std::string polarization_json(const VolumePolarizationReport& r);
std::string reduction_json(const DimensionReductionReport& r);

template <ScalarBackend S>
std::string audit_json(const FunctionalAudit<S>& a);

std::string lemma_trace_json(const LemmaTraceReport& r);

/// {"error": name, "message": ..., ...inlined detail fields}
std::string error_json(const Error& e);

}  // namespace mixdisc
