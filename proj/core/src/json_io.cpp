#include "mixdisc/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json_detail.hpp"

namespace mixdisc {

namespace {

using jsondetail::json;

json parse_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw Error(Errc::SchemaError, "input is not valid JSON");
    return doc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::SchemaError, "cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Backend backend_of(const json& doc) {
    if (!doc.contains("field")) return Backend::Exact;
    const auto& f = doc.at("field");
    if (!f.is_string()) throw Error(Errc::SchemaError, "\"field\" must be a string");
    const std::string s = f.get<std::string>();
    if (s == "rational") return Backend::Exact;
    if (s == "float64") return Backend::Float64;
    throw Error(Errc::SchemaError, "\"field\" must be \"rational\" or \"float64\"");
}

template <ScalarBackend S>
InputDocument<S> parse_document(const json& doc, const Tolerance& tol) {
    if (!doc.is_object()) throw Error(Errc::SchemaError, "top level must be a JSON object");
    if (!doc.contains("n") || !doc.at("n").is_number_integer())
        throw Error(Errc::SchemaError, "\"n\" must be an integer");
    const int n = doc.at("n").get<int>();
    if (n < 1) throw Error(Errc::SchemaError, "\"n\" must be >= 1");
    if (n > kMaxDimension)
        throw Error(Errc::DimensionTooLarge,
                    "n = " + std::to_string(n) + " exceeds the cap n <= " + std::to_string(kMaxDimension));

    InputDocument<S> out;
    out.n = n;
    if (doc.contains("matrices")) {
        const auto& ms = doc.at("matrices");
        if (!ms.is_array()) throw Error(Errc::SchemaError, "\"matrices\" must be an array");
        for (const auto& m : ms)
            out.matrices.push_back(validate_psd(jsondetail::matrix_from_json<S>(m, n, tol), tol));
    }
    if (doc.contains("segments")) {
        const auto& segs = doc.at("segments");
        if (!segs.is_array()) throw Error(Errc::SchemaError, "\"segments\" must be an array");
        for (const auto& s : segs) {
            if (!s.is_object() || !s.contains("vector"))
                throw Error(Errc::SchemaError, "each segment needs a \"vector\"");
            out.segment_vectors.push_back(jsondetail::vector_from_json<S>(s.at("vector"), n));
        }
    }
    if (doc.contains("lambdas")) {
        const auto& ls = doc.at("lambdas");
        if (!ls.is_array()) throw Error(Errc::SchemaError, "\"lambdas\" must be an array");
        for (const auto& l : ls) out.lambdas.push_back(jsondetail::scalar_from_json<S>(l));
    }
    if (doc.contains("direction"))
        out.direction = jsondetail::vector_from_json<S>(doc.at("direction"), n);
    return out;
}

template <ScalarBackend S>
FunctionalDocument<S> parse_functional_document(const json& doc, const Tolerance& tol) {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "scaled_md") {
        if (!doc.contains("a")) throw Error(Errc::SchemaError, "scaled_md needs \"a\"");
        return {scaled_md_functional<S>(jsondetail::scalar_from_json<S>(doc.at("a"))), 0};
    }
    if (kind == "product") {
        if (!doc.contains("matrices") || !doc.at("matrices").is_array() || doc.at("matrices").empty())
            throw Error(Errc::SchemaError, "product needs a nonempty \"matrices\" array");
        const int n = static_cast<int>(doc.at("matrices").size()) + 1;
        if (n > kMaxDimension)
            throw Error(Errc::DimensionTooLarge, "product functional dimension exceeds the cap");
        std::vector<PsdMatrix<S>> bs;
        for (const auto& m : doc.at("matrices"))
            bs.push_back(validate_psd(jsondetail::matrix_from_json<S>(m, n, tol), tol));
        return {product_functional<S>(bs), n};
    }
    if (kind == "measure") {
        if (!doc.contains("atoms") || !doc.at("atoms").is_array() || doc.at("atoms").empty())
            throw Error(Errc::SchemaError, "measure needs a nonempty \"atoms\" array");
        std::vector<MeasureAtom<S>> atoms;
        int n = 0;
        for (const auto& a : doc.at("atoms")) {
            if (!a.is_object() || !a.contains("vectors") || !a.contains("weight"))
                throw Error(Errc::SchemaError, "each atom needs \"vectors\" and \"weight\"");
            const auto& vs = a.at("vectors");
            if (!vs.is_array() || vs.empty())
                throw Error(Errc::SchemaError, "atom \"vectors\" must be a nonempty array");
            if (n == 0) {
                n = static_cast<int>(vs.size());
                if (n > kMaxDimension)
                    throw Error(Errc::DimensionTooLarge, "measure functional dimension exceeds the cap");
            }
            if (static_cast<int>(vs.size()) != n)
                throw Error(Errc::SchemaError, "all atoms must have the same number of vectors");
            MeasureAtom<S> atom;
            for (const auto& v : vs) atom.vectors.push_back(jsondetail::vector_from_json<S>(v, n));
            atom.weight = jsondetail::scalar_from_json<S>(a.at("weight"));
            atoms.push_back(std::move(atom));
        }
        return {measure_functional<S>(atoms), n};
    }
    throw Error(Errc::SchemaError, "unknown functional kind \"" + kind + "\"");
}

template <ScalarBackend S>
json audit_to_json(const FunctionalAudit<S>& a) {
    using jsondetail::scalar_to_json;
    using jsondetail::tuple_to_json;
    using jsondetail::vector_to_json;
    json out{{"functional", a.functional_name},
             {"n", a.n},
             {"trials", a.trials},
             {"seed", a.seed},
             {"pass", a.all_pass()}};

    json nn{{"pass", a.nonnegative}};
    if (a.nonnegativity_witness) {
        nn["witness"] = {{"tuple", tuple_to_json(a.nonnegativity_witness->tuple)},
                         {"value", scalar_to_json(a.nonnegativity_witness->value)}};
    }
    out["nonnegative"] = std::move(nn);

    json add{{"pass", a.additive()}};
    json slots = json::array();
    for (char ok : a.additive_slot_pass) slots.push_back(static_cast<bool>(ok));
    add["slots"] = std::move(slots);
    if (a.additivity_witness) {
        const auto& w = *a.additivity_witness;
        add["witness"] = {{"slot", w.slot + 1},
                          {"a", jsondetail::matrix_to_json(w.a.base())},
                          {"b", jsondetail::matrix_to_json(w.b.base())},
                          {"rest", tuple_to_json(w.rest)},
                          {"lhs", scalar_to_json(w.lhs)},
                          {"rhs", scalar_to_json(w.rhs)}};
    }
    out["additive_per_slot"] = std::move(add);

    json van{{"pass", a.vanishing_on_proportional_rank_one}};
    if (a.vanishing_witness) {
        const auto& w = *a.vanishing_witness;
        van["witness"] = {{"slots", {w.slot_i + 1, w.slot_j + 1}},
                          {"direction", vector_to_json(w.direction)},
                          {"coefficients", {scalar_to_json(w.coeff_i), scalar_to_json(w.coeff_j)}},
                          {"tuple", tuple_to_json(w.tuple)},
                          {"value", scalar_to_json(w.value)}};
    }
    out["vanishing_on_proportional_rank_one"] = std::move(van);

    json zero{{"pass", a.zero_slot_identity}};
    if (a.zero_slot_witness) {
        zero["witness"] = {{"slot", a.zero_slot_witness->slot + 1},
                           {"tuple", tuple_to_json(a.zero_slot_witness->tuple)},
                           {"value", scalar_to_json(a.zero_slot_witness->value)}};
    }
    out["zero_slot_identity"] = std::move(zero);

    if (a.estimated_a) {
        out["estimated_a"] = scalar_to_json(*a.estimated_a);
        json prop{{"pass", a.proportional}, {"worst_deviation", scalar_to_json(a.worst_deviation)}};
        if (a.proportionality_witness) {
            const auto& w = *a.proportionality_witness;
            prop["witness"] = {{"tuple", tuple_to_json(w.tuple)},
                               {"value", scalar_to_json(w.value)},
                               {"expected", scalar_to_json(w.expected)}};
        }
        out["proportionality"] = std::move(prop);
    } else {
        out["estimated_a"] = nullptr;
    }
    return out;
}

}  // namespace

ParsedInput parse_input(const std::string& json_text, const Tolerance& tol) {
    const json doc = parse_text(json_text);
    if (!doc.is_object()) throw Error(Errc::SchemaError, "top level must be a JSON object");
    if (backend_of(doc) == Backend::Exact) return parse_document<Rational>(doc, tol);
    return parse_document<double>(doc, tol);
}

ParsedInput read_input_file(const std::string& path, const Tolerance& tol) {
    return parse_input(slurp(path), tol);
}

ParsedFunctional parse_functional(const std::string& json_text, const Tolerance& tol) {
    const json doc = parse_text(json_text);
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
        throw Error(Errc::SchemaError, "functional document needs a string \"kind\"");
    if (backend_of(doc) == Backend::Exact) return parse_functional_document<Rational>(doc, tol);
    return parse_functional_document<double>(doc, tol);
}

ParsedFunctional read_functional_file(const std::string& path, const Tolerance& tol) {
    return parse_functional(slurp(path), tol);
}

template <ScalarBackend S>
std::string compute_result_json(const S& value, const std::string& algorithm, int n) {
    json out{{"value", jsondetail::scalar_to_json(value)}, {"algorithm", algorithm}, {"n", n}};
    return out.dump();
}

template <ScalarBackend S>
std::string verdict_json(const PositivityVerdict<S>& v) {
    json out;
    if (v.status == Positivity::Positive) {
        out["status"] = "POSITIVE";
        json vs = json::array(), cs = json::array();
        for (const auto& vec : v.transversal->vectors) vs.push_back(jsondetail::vector_to_json(vec));
        for (const auto& c : v.transversal->coefficients) cs.push_back(jsondetail::vector_to_json(c));
        out["transversal"] = std::move(vs);
        out["coefficients"] = std::move(cs);
        out["det"] = jsondetail::scalar_to_json(v.transversal->det);
    } else {
        out["status"] = "ZERO";
        json subset = json::array();
        for (int i : v.violation->indices) subset.push_back(i + 1);
        out["subset"] = std::move(subset);
        out["dim"] = v.violation->achieved_dim;
    }
    return out.dump();
}

template <ScalarBackend S>
std::string support_json(const SupportValue<S>& s) {
    json out{{"squared", jsondetail::scalar_to_json(s.squared)}, {"value", s.value}};
    return out.dump();
}

template <ScalarBackend S>
std::string matrix_json_text(const SymMatrix<S>& m) {
    return json{{"matrix", jsondetail::matrix_to_json(m)}}.dump();
}

template <ScalarBackend S>
std::string volume_json(const VolumeValue<S>& v) {
    json out{{"det", jsondetail::scalar_to_json(v.det)}, {"volume", v.volume}};
    return out.dump();
}

template <ScalarBackend S>
std::string segments_json(const std::vector<Segment<S>>& segs, bool verified) {
    json arr = json::array();
    for (const auto& s : segs) arr.push_back(json{{"vector", jsondetail::vector_to_json(s.vector)}});
    return json{{"segments", std::move(arr)}, {"count", segs.size()}, {"verified", verified}}.dump();
}

std::string polarization_json(const VolumePolarizationReport& r) {
    json out{{"lhs", jsondetail::scalar_to_json(r.lhs)},
             {"rhs", jsondetail::scalar_to_json(r.rhs)},
             {"equal", r.equal}};
    return out.dump();
}

std::string reduction_json(const DimensionReductionReport& r) {
    json out{{"lhs", jsondetail::scalar_to_json(r.lhs)},
             {"rhs", jsondetail::scalar_to_json(r.rhs)},
             {"half_length_sq", jsondetail::scalar_to_json(r.half_length_sq)},
             {"equal", r.equal}};
    return out.dump();
}

template <ScalarBackend S>
std::string audit_json(const FunctionalAudit<S>& a) {
    return audit_to_json(a).dump();
}

std::string lemma_trace_json(const LemmaTraceReport& r) {
    json out{{"n", r.n},         {"trials", r.trials},     {"seed", r.seed},
             {"cases", r.cases_run}, {"failures", r.failures}, {"pass", r.pass()}};
    if (!r.first_failure.empty()) out["first_failure"] = r.first_failure;
    return out.dump();
}

std::string error_json(const Error& e) {
    json out{{"error", errc_name(e.code())}, {"message", e.what()}};
    if (!e.detail_json().empty()) {
        json detail = json::parse(e.detail_json(), nullptr, false);
        if (!detail.is_discarded()) out["detail"] = std::move(detail);
    }
    return out.dump();
}

template std::string compute_result_json<Rational>(const Rational&, const std::string&, int);
template std::string compute_result_json<double>(const double&, const std::string&, int);
template std::string verdict_json<Rational>(const PositivityVerdict<Rational>&);
template std::string verdict_json<double>(const PositivityVerdict<double>&);
template std::string support_json<Rational>(const SupportValue<Rational>&);
template std::string support_json<double>(const SupportValue<double>&);
template std::string matrix_json_text<Rational>(const SymMatrix<Rational>&);
template std::string matrix_json_text<double>(const SymMatrix<double>&);
template std::string volume_json<Rational>(const VolumeValue<Rational>&);
template std::string volume_json<double>(const VolumeValue<double>&);
template std::string segments_json<Rational>(const std::vector<Segment<Rational>>&, bool);
template std::string segments_json<double>(const std::vector<Segment<double>>&, bool);
template std::string audit_json<Rational>(const FunctionalAudit<Rational>&);
template std::string audit_json<double>(const FunctionalAudit<double>&);

}  // namespace mixdisc
