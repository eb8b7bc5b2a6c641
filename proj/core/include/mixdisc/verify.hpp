#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixdisc/scalar.hpp"

namespace mixdisc {

/// Knobs for the self-check suites. Zero means "use the suite's default",
/// which is sized so a bare run exercises each property at full scale.
struct SuiteOptions {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    Tolerance tol;
    long coeff_bound = 1000;
    int retries = 20;
};

struct CaseResult {
    std::string name;
    bool pass = false;
    long instances = 0;
    std::string detail;
    std::string replay_json;  // failing instance, empty when the case passes
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    double elapsed_seconds = 0.0;

    bool pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return true;
    }
};

/// Runs one named suite: "oracle" (algorithm equivalence, the defining
/// determinant expansion, multilinearity/symmetry/monotonicity, rotation
/// invariance), "prop1" (positivity decisions vs. the sign of the value, with
/// certificate re-verification), "eq7" (the volume polarization identity),
/// "lemmas" (segment traces and dimension reduction), "harness" (functional
/// audits and constant recovery).
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

std::vector<SuiteReport> run_all_suites(const SuiteOptions& opts = {});

std::string suite_report_json(const SuiteReport& r);
std::string suite_reports_json(const std::vector<SuiteReport>& rs);
std::string suite_report_text(const SuiteReport& r);

}  // namespace mixdisc
