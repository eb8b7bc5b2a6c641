#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "mixdisc/json_io.hpp"
#include "mixdisc/verify.hpp"

namespace {

using namespace mixdisc;

// Exit ladder: 0 ok, 1 failed assertion, 2 schema, 3 domain, 4 limits.
constexpr int kExitAssert = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDomain = 3;
constexpr int kExitLimits = 4;

int exit_code_for(Errc c) {
    switch (c) {
        case Errc::SchemaError: return kExitSchema;
        case Errc::DimensionTooLarge:
        case Errc::SearchExhausted: return kExitLimits;
        default: return kExitDomain;
    }
}

struct CliOptions {
    std::string input;
    std::string out;
    std::string algo = "auto";
    std::string backend;
    std::string suite;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int n = 0;
    int trials = 0;
    long max_coeff = 1000;
    int max_retries = 20;
};

Tolerance tolerance_of(const CliOptions& o) {
    Tolerance t;
    t.rel = o.tol;
    return t;
}

void emit(const std::string& json_line, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << json_line << "\n";
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(Errc::SchemaError, "cannot write \"" + out_path + "\"");
    f << json_line << "\n";
}

void check_backend(const ParsedInput& in, const std::string& requested) {
    if (requested.empty()) return;
    const bool is_exact = std::holds_alternative<InputDocument<Rational>>(in);
    const bool want_exact = requested == "exact" || requested == "rational";
    const bool want_float = requested == "float" || requested == "float64";
    if (!want_exact && !want_float)
        throw Error(Errc::SchemaError, "--backend must be exact or float64");
    if (is_exact != want_exact)
        throw Error(Errc::SchemaError, "--backend disagrees with the input \"field\"");
}

MdAlgo algo_of(const std::string& name) {
    if (name == "auto") return MdAlgo::Auto;
    if (name == "perm") return MdAlgo::Perm;
    if (name == "polar") return MdAlgo::Polar;
    throw Error(Errc::SchemaError, "--algo must be auto, perm, or polar");
}

template <ScalarBackend S>
MatrixTuple<S> tuple_of(const InputDocument<S>& doc) {
    if (doc.matrices.empty()) throw Error(Errc::SchemaError, "input needs a \"matrices\" array");
    return MatrixTuple<S>(doc.matrices);
}

int cmd_compute(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const MdAlgo algo = algo_of(o.algo);
    const std::string line = std::visit(
        [&](const auto& doc) {
            const auto t = tuple_of(doc);
            return compute_result_json(mixed_discriminant(t, algo), o.algo, doc.n);
        },
        in);
    emit(line, o.out);
    return 0;
}

int cmd_positivity(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const auto* doc = std::get_if<InputDocument<Rational>>(&in);
    if (!doc) throw Error(Errc::SchemaError, "positivity requires the rational field");
    TransversalSearchParams params;
    params.coeff_bound = o.max_coeff;
    params.random_retries = o.max_retries;
    params.seed = o.seed;
    const auto verdict = decide(tuple_of(*doc), params, tolerance_of(o));
    emit(verdict_json(verdict), o.out);
    return 0;
}

template <ScalarBackend S>
Ellipsoid<S> first_ellipsoid(const InputDocument<S>& doc) {
    if (doc.matrices.empty()) throw Error(Errc::SchemaError, "input needs a \"matrices\" array");
    return Ellipsoid<S>(doc.matrices.front());
}

template <ScalarBackend S>
Vec<S> lambdas_or_ones(const InputDocument<S>& doc, std::size_t count) {
    if (doc.lambdas.empty()) return Vec<S>(count, S(1));
    if (doc.lambdas.size() != count)
        throw Error(Errc::SchemaError, "\"lambdas\" must match the number of bodies");
    return doc.lambdas;
}

int cmd_ellipsoid_support(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const std::string line = std::visit(
        [&](const auto& doc) {
            if (!doc.direction) throw Error(Errc::SchemaError, "support needs a \"direction\"");
            return support_json(support(first_ellipsoid(doc), *doc.direction));
        },
        in);
    emit(line, o.out);
    return 0;
}

int cmd_ellipsoid_combine(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const std::string line = std::visit(
        [&](const auto& doc) {
            using S = typename std::decay_t<decltype(doc.lambdas)>::value_type;
            if (doc.matrices.empty()) throw Error(Errc::SchemaError, "input needs a \"matrices\" array");
            const auto lam = lambdas_or_ones(doc, doc.matrices.size());
            std::vector<L2Term<S>> terms;
            for (std::size_t i = 0; i < doc.matrices.size(); ++i)
                terms.push_back({lam[i], Ellipsoid<S>(doc.matrices[i])});
            return matrix_json_text(combine(terms, tolerance_of(o)).matrix().base());
        },
        in);
    emit(line, o.out);
    return 0;
}

int cmd_ellipsoid_volume(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const std::string line =
        std::visit([&](const auto& doc) { return volume_json(volume_sq_normalized(first_ellipsoid(doc))); }, in);
    emit(line, o.out);
    return 0;
}

int cmd_ellipsoid_decompose(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    bool verified = false;
    const std::string line = std::visit(
        [&](const auto& doc) {
            using S = typename std::decay_t<decltype(doc.lambdas)>::value_type;
            const auto e = first_ellipsoid(doc);
            std::vector<Segment<S>> segs;
            if (!doc.segment_vectors.empty()) {
                for (const auto& v : doc.segment_vectors) segs.push_back(Segment<S>{v});
            } else {
                segs = decompose_segments(e, tolerance_of(o));
            }
            verified = verify_segment_decomposition(e, segs, tolerance_of(o));
            return segments_json(segs, verified);
        },
        in);
    emit(line, o.out);
    return verified ? 0 : kExitAssert;
}

int cmd_ellipsoid_polarization(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const auto* doc = std::get_if<InputDocument<Rational>>(&in);
    if (!doc) throw Error(Errc::SchemaError, "the polarization check requires the rational field");
    std::vector<Ellipsoid<Rational>> es;
    for (const auto& m : doc->matrices) es.push_back(Ellipsoid<Rational>(m));
    for (const auto& v : doc->segment_vectors) es.push_back(Segment<Rational>{v}.ellipsoid());
    if (es.empty()) throw Error(Errc::SchemaError, "input needs matrices or segments");
    const auto lam = lambdas_or_ones(*doc, es.size());
    const auto report = volume_polarization_check(es, lam);
    emit(polarization_json(report), o.out);
    return report.equal ? 0 : kExitAssert;
}

int cmd_ellipsoid_reduce(const CliOptions& o) {
    const auto in = read_input_file(o.input, tolerance_of(o));
    check_backend(in, o.backend);
    const auto* doc = std::get_if<InputDocument<Rational>>(&in);
    if (!doc) throw Error(Errc::SchemaError, "dimension reduction requires the rational field");
    if (doc->segment_vectors.empty())
        throw Error(Errc::SchemaError, "input needs the segment in \"segments\"");
    std::vector<Ellipsoid<Rational>> others;
    for (const auto& m : doc->matrices) others.push_back(Ellipsoid<Rational>(m));
    const auto report = reduce_dimension(Segment<Rational>{doc->segment_vectors.front()}, others);
    emit(reduction_json(report), o.out);
    return report.equal ? 0 : kExitAssert;
}

int cmd_verify(const CliOptions& o) {
    SuiteOptions so;
    so.n = o.n;
    so.trials = o.trials;
    so.seed = o.seed;
    so.tol = tolerance_of(o);
    so.coeff_bound = o.max_coeff;
    so.retries = o.max_retries;
    if (o.suite == "all") {
        const auto reports = run_all_suites(so);
        bool pass = true;
        for (const auto& r : reports) {
            std::cerr << suite_report_text(r);
            pass = pass && r.pass();
        }
        emit(suite_reports_json(reports), o.out);
        return pass ? 0 : kExitAssert;
    }
    const auto report = run_suite(o.suite, so);
    std::cerr << suite_report_text(report);
    emit(suite_report_json(report), o.out);
    return report.pass() ? 0 : kExitAssert;
}

int cmd_harness(const CliOptions& o) {
    const auto parsed = read_functional_file(o.input, tolerance_of(o));
    const int trials = o.trials > 0 ? o.trials : 200;
    const std::string line = std::visit(
        [&](const auto& parsed) {
            int n = parsed.n;
            if (o.n > 0) {
                if (n > 0 && n != o.n)
                    throw Error(Errc::SchemaError, "--n disagrees with the functional's dimension");
                n = o.n;
            }
            if (n == 0) throw Error(Errc::SchemaError, "this functional needs --n");
            return audit_json(audit(parsed.functional, n, trials, o.seed, {}, tolerance_of(o)));
        },
        parsed);
    emit(line, o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions o;
    CLI::App app{"mixed discriminants of PSD matrices: computation, positivity certificates, "
                 "ellipsoid calculus, functional audits"};
    app.require_subcommand(1);

    auto add_common = [&o](CLI::App* cmd, bool with_input) {
        if (with_input) cmd->add_option("input", o.input, "input JSON file")->required();
        cmd->add_option("--out", o.out, "write the JSON result to this file");
        cmd->add_option("--backend", o.backend, "exact|float64, must match the input \"field\"");
        cmd->add_option("--tol", o.tol, "relative tolerance for float64 runs");
        cmd->add_option("--seed", o.seed, "seed for randomized procedures");
    };

    auto* compute = app.add_subcommand("compute", "mixed discriminant of the input tuple");
    add_common(compute, true);
    compute->add_option("--algo", o.algo, "auto|perm|polar");

    auto* positivity = app.add_subcommand("positivity", "decide > 0 vs = 0 with a certificate");
    add_common(positivity, true);
    positivity->add_option("--max-coeff", o.max_coeff, "coefficient bound for the transversal search");
    positivity->add_option("--max-retries", o.max_retries, "random retries before the exhaustive fallback");

    auto* ellipsoid = app.add_subcommand("ellipsoid", "centered-ellipsoid calculus");
    ellipsoid->require_subcommand(1);
    auto* e_support = ellipsoid->add_subcommand("support", "support function value in a direction");
    add_common(e_support, true);
    auto* e_combine = ellipsoid->add_subcommand("combine", "weighted combination of the bodies");
    add_common(e_combine, true);
    auto* e_volume = ellipsoid->add_subcommand("volume", "normalized squared volume");
    add_common(e_volume, true);
    auto* e_decompose = ellipsoid->add_subcommand("decompose", "segment decomposition (or verify one)");
    add_common(e_decompose, true);
    auto* e_polar = ellipsoid->add_subcommand("eq7", "volume polarization identity check");
    add_common(e_polar, true);
    auto* e_reduce = ellipsoid->add_subcommand("reduce", "segment dimension-reduction identity check");
    add_common(e_reduce, true);

    auto* verify = app.add_subcommand("verify", "run a self-check suite");
    verify->add_option("suite", o.suite, "oracle|prop1|eq7|lemmas|harness|all")->required();
    add_common(verify, false);
    verify->add_option("--n", o.n, "dimension cap override");
    verify->add_option("--trials", o.trials, "trial count override");
    verify->add_option("--max-coeff", o.max_coeff, "coefficient bound for the transversal search");
    verify->add_option("--max-retries", o.max_retries, "random retries before the exhaustive fallback");

    auto* harness = app.add_subcommand("harness", "audit a candidate functional");
    add_common(harness, true);
    harness->add_option("--n", o.n, "tuple size when the functional does not pin it");
    harness->add_option("--trials", o.trials, "samples per hypothesis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitSchema;
    }

    try {
        if (app.got_subcommand(compute)) return cmd_compute(o);
        if (app.got_subcommand(positivity)) return cmd_positivity(o);
        if (app.got_subcommand(ellipsoid)) {
            if (ellipsoid->got_subcommand(e_support)) return cmd_ellipsoid_support(o);
            if (ellipsoid->got_subcommand(e_combine)) return cmd_ellipsoid_combine(o);
            if (ellipsoid->got_subcommand(e_volume)) return cmd_ellipsoid_volume(o);
            if (ellipsoid->got_subcommand(e_decompose)) return cmd_ellipsoid_decompose(o);
            if (ellipsoid->got_subcommand(e_polar)) return cmd_ellipsoid_polarization(o);
            if (ellipsoid->got_subcommand(e_reduce)) return cmd_ellipsoid_reduce(o);
        }
        if (app.got_subcommand(verify)) return cmd_verify(o);
        if (app.got_subcommand(harness)) return cmd_harness(o);
    } catch (const mixdisc::Error& e) {
        std::cout << error_json(e) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitSchema;
}
