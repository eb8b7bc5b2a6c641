#include "mixdisc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "json_detail.hpp"
#include "mixdisc/ellipsoid.hpp"
#include "mixdisc/harness.hpp"
#include "mixdisc/json_io.hpp"
#include "mixdisc/positivity.hpp"
#include "mixdisc/sampling.hpp"

namespace mixdisc {

namespace {

using jsondetail::json;

/// Per-case bookkeeping: counts instances, keeps the first failure and its
/// replay document.
struct CaseRun {
    CaseResult result;

    explicit CaseRun(std::string name) {
        result.name = std::move(name);
        result.pass = true;
    }
    void instance() { ++result.instances; }
    void fail(const std::string& detail, std::string replay = {}) {
        if (result.pass) {
            result.pass = false;
            result.detail = detail;
            result.replay_json = std::move(replay);
        }
    }
    CaseResult done(const std::string& ok_detail = {}) {
        if (result.pass) result.detail = ok_detail;
        return std::move(result);
    }
};

template <ScalarBackend S>
std::string replay_tuple_json(const std::vector<PsdMatrix<S>>& ms) {
    json doc{{"n", ms.front().dim()},
             {"field", ScalarTraits<S>::exact ? "rational" : "float64"},
             {"matrices", jsondetail::tuple_to_json(ms)}};
    return doc.dump();
}

std::uint64_t case_seed(const SuiteOptions& o, std::uint64_t offset) {
    return o.seed * 1000003ULL + offset;
}

PsdMatrix<Rational> basis_outer(int n, int i) {
    SymMatrix<Rational> m(n);
    m.set(i, i, Rational(1));
    return validate_psd(m);
}

// ---------------------------------------------------------------- oracle --

SuiteReport oracle_suite(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "oracle";
    const int ncap = o.n > 0 ? std::min(o.n, 6) : 6;
    const int cap5 = std::min(ncap, 5);
    const int trials = o.trials > 0 ? o.trials : 500;
    const int expansion_trials = o.trials > 0 ? o.trials : 100;
    const int rotation_trials = o.trials > 0 ? std::min(o.trials, 200) : 200;

    for (int n = 1; n <= ncap; ++n) {
        CaseRun c("perm_vs_polar_n" + std::to_string(n));
        Rng rng(case_seed(o, 10 + n));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            auto tup = random_tuple<Rational>(rng, n);
            MatrixTuple<Rational> t(tup);
            const Rational p = md_perm(t);
            const Rational q = md_polar(t);
            const Rational g = mixed_discriminant(t);
            if (p != q || p != g) c.fail("the two algorithms disagree", replay_tuple_json(tup));
            else if (p.sign() < 0) c.fail("negative value on a PSD tuple", replay_tuple_json(tup));
        }
        rep.cases.push_back(c.done("permutation and subset sums agree exactly"));
    }

    {
        CaseRun c("defining_expansion");
        Rng rng(case_seed(o, 20));
        for (int m = 1; m <= 3 && c.result.pass; ++m)
            for (int n = 1; n <= std::min(ncap, 3) && c.result.pass; ++n)
                for (int k = 0; k < expansion_trials && c.result.pass; ++k) {
                    c.instance();
                    std::vector<PsdMatrix<Rational>> ms;
                    for (int j = 0; j < m; ++j)
                        ms.push_back(random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n))));
                    const auto expansion = det_expansion(ms);
                    const Vec<Rational> lam = random_vector<Rational>(rng, m);
                    SymMatrix<Rational> sum(n);
                    for (int j = 0; j < m; ++j) sum += lam[j] * ms[j].base();
                    if (expansion.evaluate(lam) != determinant(sum))
                        c.fail("expansion disagrees with the determinant", replay_tuple_json(ms));
                }
        rep.cases.push_back(c.done("coefficient expansion reproduces det of every combination"));
    }

    {
        CaseRun c("normalization");
        for (int n = 1; n <= ncap; ++n) {
            c.instance();
            std::vector<PsdMatrix<Rational>> ms(
                static_cast<std::size_t>(n), validate_psd(SymMatrix<Rational>::identity(n)));
            if (mixed_discriminant(MatrixTuple<Rational>(ms)) != Rational(1))
                c.fail("identity tuple must give 1", replay_tuple_json(ms));
        }
        rep.cases.push_back(c.done("identity tuples evaluate to 1"));
    }

    {
        CaseRun c("diagonal_collapse");
        Rng rng(case_seed(o, 30));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, cap5 - 1));
            auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
            std::vector<PsdMatrix<Rational>> ms(static_cast<std::size_t>(n), a);
            if (mixed_discriminant(MatrixTuple<Rational>(ms)) != determinant(a.base()))
                c.fail("repeated-argument value must equal the determinant", replay_tuple_json(ms));
        }
        rep.cases.push_back(c.done("repeated arguments collapse to the determinant"));
    }

    {
        CaseRun c("multilinearity");
        Rng rng(case_seed(o, 40));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, cap5 - 1));
            auto tup = random_tuple<Rational>(rng, n);
            const int slot = static_cast<int>(rng.uniform_int(0, n - 1));
            auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
            auto b = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
            const Rational alpha = abs(random_scalar<Rational>(rng));
            const Rational beta = abs(random_scalar<Rational>(rng));
            auto combined = tup;
            combined[slot] = validate_psd(alpha * a.base() + beta * b.base());
            auto left = tup;
            left[slot] = a;
            auto right = tup;
            right[slot] = b;
            const Rational lhs = mixed_discriminant(MatrixTuple<Rational>(combined));
            const Rational rhs = alpha * mixed_discriminant(MatrixTuple<Rational>(left)) +
                                 beta * mixed_discriminant(MatrixTuple<Rational>(right));
            if (lhs != rhs) c.fail("slot is not linear", replay_tuple_json(combined));
        }
        rep.cases.push_back(c.done("every slot is linear over nonnegative combinations"));
    }

    {
        CaseRun c("symmetry");
        Rng rng(case_seed(o, 50));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, cap5 - 1));
            auto tup = random_tuple<Rational>(rng, n);
            auto shuffled = tup;
            std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
            if (mixed_discriminant(MatrixTuple<Rational>(tup)) !=
                mixed_discriminant(MatrixTuple<Rational>(shuffled)))
                c.fail("value changed under slot permutation", replay_tuple_json(tup));
        }
        rep.cases.push_back(c.done("invariant under every sampled slot permutation"));
    }

    {
        CaseRun c("monotonicity");
        Rng rng(case_seed(o, 60));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, cap5 - 1));
            auto tup = random_tuple<Rational>(rng, n);
            const int slot = static_cast<int>(rng.uniform_int(0, n - 1));
            auto bump = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
            auto bigger = tup;
            bigger[slot] = validate_psd(tup[slot].base() + bump.base());
            const Rational before = mixed_discriminant(MatrixTuple<Rational>(tup));
            const Rational after = mixed_discriminant(MatrixTuple<Rational>(bigger));
            if (after < before) c.fail("value decreased after a PSD bump", replay_tuple_json(bigger));
        }
        rep.cases.push_back(c.done("nondecreasing in the PSD order, slot by slot"));
    }

    {
        CaseRun c("rotation_invariance");
        Rng rng(case_seed(o, 70));
        double worst = 0.0;
        for (int k = 0; k < rotation_trials && c.result.pass; ++k) {
            c.instance();
            const int n = 2 + static_cast<int>(rng.uniform_int(0, cap5 - 2));
            auto tup = random_full_rank_tuple<double>(rng, n, o.tol);
            const auto q = random_orthogonal(rng, n);
            std::vector<PsdMatrix<double>> rotated;
            for (const auto& a : tup) rotated.push_back(validate_psd(conjugate(a.base(), q), o.tol));
            const double v1 = mixed_discriminant(MatrixTuple<double>(tup));
            const double v2 = mixed_discriminant(MatrixTuple<double>(rotated));
            const double rel = std::fabs(v1 - v2) / std::max({std::fabs(v1), std::fabs(v2), 1e-300});
            worst = std::max(worst, rel);
            if (rel > 1e-8) c.fail("relative deviation above 1e-8", replay_tuple_json(tup));
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst relative deviation %.3e", worst);
        rep.cases.push_back(c.done(buf));
    }
    return rep;
}

// ----------------------------------------------------------------- prop1 --

SuiteReport prop1_suite(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "prop1";
    const int ncap = o.n > 0 ? std::min(o.n, 5) : 5;
    const int trials = o.trials > 0 ? o.trials : 1000;
    TransversalSearchParams params;
    params.coeff_bound = o.coeff_bound;
    params.random_retries = o.retries;
    params.seed = o.seed;

    {
        CaseRun c("hand_examples");
        c.instance();
        MatrixTuple<Rational> positive({basis_outer(2, 0), basis_outer(2, 1)});
        auto v1 = decide(positive, params, o.tol);
        if (v1.status != Positivity::Positive || !v1.transversal ||
            !verify_transversal(positive, *v1.transversal, o.tol))
            c.fail("independent rank-one pair must be positive");
        c.instance();
        MatrixTuple<Rational> zero({basis_outer(2, 0), basis_outer(2, 0)});
        auto v2 = decide(zero, params, o.tol);
        if (v2.status != Positivity::Zero || !v2.violation ||
            v2.violation->indices != std::vector<int>{0, 1} || v2.violation->achieved_dim != 1)
            c.fail("proportional rank-one pair must be zero with subset {1,2}");
        rep.cases.push_back(c.done("both fixed verdicts and certificates check out"));
    }

    {
        CaseRun c("decide_vs_value");
        Rng rng(case_seed(o, 100));
        long positives = 0, zeros = 0;
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, ncap - 1));
            auto tup = random_tuple<Rational>(rng, n);
            MatrixTuple<Rational> t(tup);
            const auto verdict = decide(t, params, o.tol);
            const bool positive = mixed_discriminant(t).sign() > 0;
            if ((verdict.status == Positivity::Positive) != positive) {
                c.fail("decision disagrees with the sign of the value", replay_tuple_json(tup));
                break;
            }
            if (verdict.status == Positivity::Positive) {
                ++positives;
                if (!verdict.transversal || !verify_transversal(t, *verdict.transversal, o.tol))
                    c.fail("transversal certificate does not re-verify", replay_tuple_json(tup));
            } else {
                ++zeros;
                if (!verdict.violation || !verify_violation(t, *verdict.violation, o.tol))
                    c.fail("violation certificate does not re-verify", replay_tuple_json(tup));
            }
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%ld positive / %ld zero, all certificates re-verified", positives,
                      zeros);
        rep.cases.push_back(c.done(buf));
    }

    {
        CaseRun c("determinism");
        Rng rng(case_seed(o, 110));
        for (int k = 0; k < std::min(trials, 50) && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, ncap - 1));
            auto tup = random_tuple<Rational>(rng, n);
            MatrixTuple<Rational> t(tup);
            const auto a = decide(t, params, o.tol);
            const auto b = decide(t, params, o.tol);
            bool same = a.status == b.status;
            if (same && a.transversal)
                same = a.transversal->vectors == b.transversal->vectors &&
                       a.transversal->coefficients == b.transversal->coefficients;
            if (same && a.violation)
                same = a.violation->indices == b.violation->indices &&
                       a.violation->achieved_dim == b.violation->achieved_dim;
            if (!same) c.fail("repeated decision produced a different certificate", replay_tuple_json(tup));
        }
        rep.cases.push_back(c.done("identical runs give identical certificates"));
    }
    return rep;
}

// ------------------------------------------------------------------- eq7 --

SuiteReport eq7_suite(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "eq7";
    const int ncap = o.n > 0 ? std::min(o.n, 4) : 4;
    const int trials = o.trials > 0 ? o.trials : 200;

    {
        CaseRun c("two_segment_example");
        c.instance();
        Segment<Rational> s1{{Rational(1), Rational(0)}};
        Segment<Rational> s2{{Rational(0), Rational(1)}};
        const auto r = volume_polarization_check({s1.ellipsoid(), s2.ellipsoid()}, {Rational(1), Rational(1)});
        if (!r.equal || r.lhs != Rational(1)) c.fail("unit segment pair must give 1 on both sides");
        rep.cases.push_back(c.done("both sides equal 1"));
    }

    {
        CaseRun c("single_term_collapse");
        Rng rng(case_seed(o, 200));
        for (int k = 0; k < std::min(trials, 20) && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, ncap - 1));
            Ellipsoid<Rational> e(random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n))));
            const auto r = volume_polarization_check({e}, {Rational(1)});
            if (!r.equal || r.lhs != determinant(e.matrix().base()))
                c.fail("single term must collapse to det", replay_tuple_json<Rational>({e.matrix()}));
        }
        rep.cases.push_back(c.done("one-term combinations collapse to the determinant"));
    }

    {
        CaseRun c("random_instances");
        Rng rng(case_seed(o, 210));
        for (int k = 0; k < trials && c.result.pass; ++k) {
            c.instance();
            const int n = 1 + static_cast<int>(rng.uniform_int(0, ncap - 1));
            const int m = 1 + static_cast<int>(rng.uniform_int(0, 3));
            std::vector<Ellipsoid<Rational>> es;
            std::vector<PsdMatrix<Rational>> replay;
            for (int j = 0; j < m; ++j) {
                auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
                replay.push_back(a);
                es.push_back(Ellipsoid<Rational>(std::move(a)));
            }
            Vec<Rational> lam(m);
            for (auto& l : lam) l = abs(random_scalar<Rational>(rng));
            const auto r = volume_polarization_check(es, lam);
            if (!r.equal) c.fail("polarization identity failed", replay_tuple_json(replay));
        }
        rep.cases.push_back(c.done("ellipsoid route equals the expansion route on every instance"));
    }
    return rep;
}

// ---------------------------------------------------------------- lemmas --

SuiteReport lemmas_suite(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "lemmas";
    const int ncap = o.n > 0 ? std::min(std::max(o.n, 2), 4) : 4;
    const int seeds = o.trials > 0 ? o.trials : 100;
    const int reduction_trials = o.trials > 0 ? o.trials : 200;

    for (int n = 2; n <= ncap; ++n) {
        CaseRun c("traces_n" + std::to_string(n));
        for (int s = 0; s < seeds && c.result.pass; ++s) {
            const auto r = lemma_traces(n, 2, case_seed(o, 300) + static_cast<std::uint64_t>(s));
            c.result.instances += r.cases_run;
            if (!r.pass()) c.fail("segment trace failed: " + r.first_failure, lemma_trace_json(r));
        }
        rep.cases.push_back(c.done("all segment traces hold exactly"));
    }

    {
        CaseRun c("reduction_hand");
        c.instance();
        Segment<Rational> s{{Rational(0), Rational(1)}};
        SymMatrix<Rational> e1(2);
        e1.set(0, 0, Rational(1));
        const auto r = reduce_dimension(s, {Ellipsoid<Rational>(validate_psd(e1))});
        if (!r.equal || r.lhs != Rational(1)) c.fail("fixed reduction instance must give 1 = 1");
        rep.cases.push_back(c.done("fixed instance agrees on both sides"));
    }

    for (int n = 2; n <= ncap; ++n) {
        CaseRun c("reduction_n" + std::to_string(n));
        Rng rng(case_seed(o, 310 + n));
        for (int k = 0; k < reduction_trials && c.result.pass; ++k) {
            c.instance();
            Vec<Rational> t(n, Rational(0));
            t[n - 1] = random_scalar<Rational>(rng);
            std::vector<Ellipsoid<Rational>> others;
            std::vector<PsdMatrix<Rational>> replay;
            for (int j = 0; j + 1 < n; ++j) {
                auto block = random_psd<Rational>(rng, n - 1, static_cast<int>(rng.uniform_int(0, n - 1)));
                SymMatrix<Rational> padded(n);
                for (int r = 0; r < n - 1; ++r)
                    for (int cidx = r; cidx < n - 1; ++cidx) padded.set(r, cidx, block.base().at(r, cidx));
                auto p = validate_psd(padded);
                replay.push_back(p);
                others.push_back(Ellipsoid<Rational>(std::move(p)));
            }
            const auto r = reduce_dimension(Segment<Rational>{t}, others);
            if (!r.equal) {
                c.fail("reduction identity failed", replay_tuple_json(replay));
                break;
            }
            Vec<Rational> t2 = t;
            t2[n - 1] = Rational(2) * t2[n - 1];
            const auto r2 = reduce_dimension(Segment<Rational>{t2}, others);
            if (r2.lhs != Rational(4) * r.lhs || !r2.equal)
                c.fail("scaling the segment by 2 must scale both sides by 4", replay_tuple_json(replay));
        }
        rep.cases.push_back(c.done("identity and quadratic scaling hold exactly"));
    }
    return rep;
}

// --------------------------------------------------------------- harness --

SuiteReport harness_suite(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "harness";
    const int trials = o.trials > 0 ? o.trials : 200;
    const int naud = o.n >= 2 ? std::min(o.n, 4) : 3;

    {
        CaseRun c("scaled_recovery");
        const std::vector<Rational> cs{Rational(0), Rational(1), Rational(1, 3), Rational(7)};
        for (const auto& a : cs) {
            if (!c.result.pass) break;
            c.instance();
            const auto r = audit(scaled_md_functional<Rational>(a), 2, trials, case_seed(o, 400), {}, o.tol);
            if (!r.all_pass() || !r.estimated_a || *r.estimated_a != a)
                c.fail("constant " + a.str() + " not recovered exactly", audit_json(r));
        }
        {
            c.instance();
            const auto r =
                audit(scaled_md_functional<Rational>(Rational(1, 3)), naud, std::min(trials, 60),
                      case_seed(o, 401), {}, o.tol);
            if (!r.all_pass() || !r.estimated_a || *r.estimated_a != Rational(1, 3))
                c.fail("constant 1/3 not recovered at higher dimension", audit_json(r));
        }
        rep.cases.push_back(c.done("every constant recovered exactly with exact proportionality"));
    }

    std::vector<FunctionalAudit<Rational>> counterexample_audits;
    std::vector<CandidateFunctional<Rational>> counterexample_functionals;

    {
        CaseRun c("product_counterexample");
        Rng rng(case_seed(o, 410));
        for (int n = 2; n <= naud && c.result.pass; ++n) {
            c.instance();
            std::vector<PsdMatrix<Rational>> bs;
            for (int j = 0; j + 1 < n; ++j) bs.push_back(random_psd<Rational>(rng, n, n));
            auto f = product_functional<Rational>(bs);
            const auto r = audit(f, n, std::min(trials, 80), case_seed(o, 411), {}, o.tol);
            if (!r.nonnegative || !r.additive())
                c.fail("product functional must pass nonnegativity and additivity", audit_json(r));
            else if (r.vanishing_on_proportional_rank_one || !r.vanishing_witness)
                c.fail("product functional must fail the vanishing hypothesis", audit_json(r));
            else if (!reverify(f, *r.vanishing_witness, o.tol))
                c.fail("vanishing witness does not re-verify", audit_json(r));
            else {
                counterexample_audits.push_back(r);
                counterexample_functionals.push_back(f);
            }
        }
        rep.cases.push_back(c.done("expected failure signature with re-verifiable witnesses"));
    }

    {
        CaseRun c("measure_counterexample");
        Rng rng(case_seed(o, 420));
        for (int n = 2; n <= naud && c.result.pass; ++n) {
            c.instance();
            std::vector<MeasureAtom<Rational>> atoms;
            for (int a = 0; a < 2; ++a) {
                MeasureAtom<Rational> atom;
                atom.weight = Rational(1 + static_cast<long>(rng.uniform_int(0, 3)), 2);
                for (int i = 0; i < n; ++i) {
                    Vec<Rational> v = random_vector<Rational>(rng, n);
                    while (is_zero_vector(v)) v = random_vector<Rational>(rng, n);
                    atom.vectors.push_back(std::move(v));
                }
                atoms.push_back(std::move(atom));
            }
            auto f = measure_functional<Rational>(atoms);
            const auto r = audit(f, n, std::min(trials, 80), case_seed(o, 421), {}, o.tol);
            if (!r.nonnegative || !r.additive())
                c.fail("measure functional must pass nonnegativity and additivity", audit_json(r));
            else if (r.vanishing_on_proportional_rank_one || !r.vanishing_witness)
                c.fail("measure functional must fail the vanishing hypothesis", audit_json(r));
            else if (!reverify(f, *r.vanishing_witness, o.tol))
                c.fail("vanishing witness does not re-verify", audit_json(r));
            else {
                counterexample_audits.push_back(r);
                counterexample_functionals.push_back(f);
            }
        }
        rep.cases.push_back(c.done("expected failure signature with re-verifiable witnesses"));
    }

    {
        CaseRun c("no_cooccurrence");
        for (std::size_t i = 0; i < counterexample_audits.size(); ++i) {
            c.instance();
            const auto& w = *counterexample_audits[i].vanishing_witness;
            const Rational md_at_witness = mixed_discriminant(MatrixTuple<Rational>(w.tuple));
            // A vanishing failure lives where md = 0 but F > 0, so no constant
            // c can bound F by c * md there; boundedness and the failure
            // cannot co-occur.
            if (!md_at_witness.is_zero())
                c.fail("witness tuple should have a zero value", replay_tuple_json(w.tuple));
            else if (!(w.value > Rational(0)))
                c.fail("witness functional value should be positive", replay_tuple_json(w.tuple));
        }
        rep.cases.push_back(c.done("every vanishing failure certifies unboundedness against the value"));
    }

    {
        CaseRun c("degenerate_reference");
        c.instance();
        bool threw = false;
        try {
            std::vector<PsdMatrix<Rational>> ref{basis_outer(2, 0), basis_outer(2, 0)};
            audit(scaled_md_functional<Rational>(Rational(1)), 2, 8, case_seed(o, 430), ref, o.tol);
        } catch (const Error& e) {
            threw = e.code() == Errc::ReferenceTupleDegenerate;
        }
        if (!threw) c.fail("degenerate reference tuple must be rejected");
        rep.cases.push_back(c.done("degenerate reference tuple rejected"));
    }
    return rep;
}

json case_to_json(const CaseResult& c) {
    json out{{"name", c.name}, {"pass", c.pass}, {"instances", c.instances}, {"detail", c.detail}};
    if (!c.replay_json.empty()) {
        json replay = json::parse(c.replay_json, nullptr, false);
        out["replay"] = replay.is_discarded() ? json(c.replay_json) : std::move(replay);
    }
    return out;
}

json report_to_json(const SuiteReport& r) {
    json cases = json::array();
    for (const auto& c : r.cases) cases.push_back(case_to_json(c));
    return json{{"suite", r.suite},
                {"pass", r.pass()},
                {"elapsed_seconds", r.elapsed_seconds},
                {"cases", std::move(cases)}};
}

}  // namespace

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    if (name == "oracle") rep = oracle_suite(opts);
    else if (name == "prop1") rep = prop1_suite(opts);
    else if (name == "eq7") rep = eq7_suite(opts);
    else if (name == "lemmas") rep = lemmas_suite(opts);
    else if (name == "harness") rep = harness_suite(opts);
    else
        throw Error(Errc::SchemaError,
                    "unknown suite \"" + name + "\"; expected oracle|prop1|eq7|lemmas|harness|all");
    rep.elapsed_seconds =
        std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

std::vector<SuiteReport> run_all_suites(const SuiteOptions& opts) {
    std::vector<SuiteReport> out;
    for (const char* name : {"oracle", "prop1", "eq7", "lemmas", "harness"})
        out.push_back(run_suite(name, opts));
    return out;
}

std::string suite_report_json(const SuiteReport& r) { return report_to_json(r).dump(); }

std::string suite_reports_json(const std::vector<SuiteReport>& rs) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : rs) {
        arr.push_back(report_to_json(r));
        all = all && r.pass();
    }
    return json{{"pass", all}, {"suites", std::move(arr)}}.dump();
}

std::string suite_report_text(const SuiteReport& r) {
    std::string out = "suite " + r.suite + ": " + (r.pass() ? "PASS" : "FAIL");
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s)\n", r.elapsed_seconds);
    out += buf;
    for (const auto& c : r.cases) {
        out += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name + " (" +
               std::to_string(c.instances) + ") " + c.detail + "\n";
    }
    return out;
}

}  // namespace mixdisc
