#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mixdisc/mixed_discriminant.hpp"
#include "mixdisc/sampling.hpp"

namespace mixdisc {

/// A functional F: (PSD^n)^n -> scalar under audit. Candidates must be
/// deterministic; ones that are not safe to call concurrently say so and are
/// only ever called from the audit's single thread.
template <ScalarBackend S>
struct CandidateFunctional {
    std::string name;
    std::function<S(const MatrixTuple<S>&)> evaluate;
    bool thread_safe = true;
};

template <ScalarBackend S>
CandidateFunctional<S> scaled_md_functional(const S& a) {
    std::string label = "scaled_md(" + ScalarTraits<S>::to_string(a) + ")";
    return {std::move(label),
            [a](const MatrixTuple<S>& t) { return a * mixed_discriminant(t); }, true};
}

/// F(A_1,...,A_n) = prod_i D(A_i, B_2,...,B_n). Nonnegative and additive per
/// slot, but positive on proportional rank-one pairs for generic B.
template <ScalarBackend S>
CandidateFunctional<S> product_functional(const std::vector<PsdMatrix<S>>& bs) {
    const int n = static_cast<int>(bs.size()) + 1;
    for (const auto& b : bs)
        if (b.dim() != n) throw Error(Errc::AmbientMismatch, "every fixed matrix must be n x n");
    return {"product", [bs, n](const MatrixTuple<S>& t) {
                if (t.dim() != n) throw Error(Errc::AmbientMismatch, "tuple dimension mismatch");
                S prod(1);
                for (int i = 0; i < n; ++i) {
                    std::vector<PsdMatrix<S>> slot;
                    slot.push_back(t[i]);
                    slot.insert(slot.end(), bs.begin(), bs.end());
                    prod = prod * mixed_discriminant(MatrixTuple<S>(std::move(slot)));
                }
                return prod;
            },
            true};
}

template <ScalarBackend S>
struct MeasureAtom {
    std::vector<Vec<S>> vectors;
    S weight;
};

/// F(A_1,...,A_n) = sum over atoms of weight * prod_i <u_i, A_i u_i> with
/// u_i the normalized atom vectors. Normalization is folded into the weight
/// (dividing by prod |v_i|^2), which keeps rational inputs exact.
template <ScalarBackend S>
CandidateFunctional<S> measure_functional(const std::vector<MeasureAtom<S>>& atoms) {
    std::vector<MeasureAtom<S>> scaled;
    scaled.reserve(atoms.size());
    for (const auto& atom : atoms) {
        S w = atom.weight;
        if (!(w > S(0))) throw Error(Errc::PreconditionViolated, "atom weights must be > 0");
        for (const auto& v : atom.vectors) {
            const S norm_sq = dot(v, v);
            if (is_zero_vector(v)) throw Error(Errc::ZeroAtomVector, "atom vectors must be nonzero");
            w = w / norm_sq;
        }
        scaled.push_back({atom.vectors, w});
    }
    return {"measure", [scaled](const MatrixTuple<S>& t) {
                if (!scaled.empty() && static_cast<int>(scaled.front().vectors.size()) != t.dim())
                    throw Error(Errc::AmbientMismatch, "atom arity must match tuple size");
                S total(0);
                for (const auto& atom : scaled) {
                    S prod = atom.weight;
                    for (int i = 0; i < t.dim(); ++i)
                        prod = prod * t[i].base().quad_form(atom.vectors[i]);
                    total = total + prod;
                }
                return total;
            },
            true};
}

template <ScalarBackend S>
struct NonnegativityWitness {
    std::vector<PsdMatrix<S>> tuple;
    S value{};
};

template <ScalarBackend S>
struct AdditivityWitness {
    int slot = 0;
    PsdMatrix<S> a;
    PsdMatrix<S> b;
    std::vector<PsdMatrix<S>> rest;
    S lhs{};
    S rhs{};
};

template <ScalarBackend S>
struct VanishingWitness {
    int slot_i = 0;
    int slot_j = 0;
    Vec<S> direction;
    S coeff_i{};
    S coeff_j{};
    std::vector<PsdMatrix<S>> tuple;
    S value{};
};

template <ScalarBackend S>
struct ZeroSlotWitness {
    int slot = 0;
    std::vector<PsdMatrix<S>> tuple;
    S value{};
};

template <ScalarBackend S>
struct ProportionalityWitness {
    std::vector<PsdMatrix<S>> tuple;
    S value{};
    S expected{};
};

template <ScalarBackend S>
struct FunctionalAudit {
    std::string functional_name;
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;

    bool nonnegative = true;
    std::optional<NonnegativityWitness<S>> nonnegativity_witness;

    std::vector<char> additive_slot_pass;
    std::optional<AdditivityWitness<S>> additivity_witness;

    bool vanishing_on_proportional_rank_one = true;
    std::optional<VanishingWitness<S>> vanishing_witness;

    bool zero_slot_identity = true;
    std::optional<ZeroSlotWitness<S>> zero_slot_witness;

    std::optional<S> estimated_a;
    bool proportional = false;
    std::optional<ProportionalityWitness<S>> proportionality_witness;
    S worst_deviation{};

    bool additive() const {
        for (char ok : additive_slot_pass)
            if (!ok) return false;
        return true;
    }
    bool hypotheses_pass() const {
        return nonnegative && additive() && vanishing_on_proportional_rank_one && zero_slot_identity;
    }
    bool all_pass() const { return hypotheses_pass() && estimated_a.has_value() && proportional; }
};

namespace detail {

template <ScalarBackend S>
bool scalar_negative(const S& x, const Tolerance& tol) {
    if constexpr (ScalarTraits<S>::exact) {
        return x.sign() < 0;
    } else {
        return x < 0.0 && !tol.negligible(x, 1.0 + std::fabs(x));
    }
}

template <ScalarBackend S>
bool scalars_equal(const S& x, const S& y, const Tolerance& tol) {
    if constexpr (ScalarTraits<S>::exact) {
        return x == y;
    } else {
        return tol.close(x, y);
    }
}

template <ScalarBackend S>
S scalar_abs(const S& x) {
    if constexpr (ScalarTraits<S>::exact) {
        return abs(x);
    } else {
        return std::fabs(x);
    }
}

template <ScalarBackend S>
S nonneg_scalar(Rng& rng) {
    S x = random_scalar<S>(rng);
    return scalar_abs(x);
}

}  // namespace detail

/// Audits F against the characterization hypotheses on random rational PSD
/// tuples: F >= 0, additivity in every slot, F = 0 whenever two slots carry
/// proportional rank-one matrices, and F(..., 0, ...) = 0. When every
/// hypothesis holds, estimates a from the reference tuple (default (I,...,I))
/// and cross-checks F = a * md on all samples.
template <ScalarBackend S>
FunctionalAudit<S> audit(const CandidateFunctional<S>& f, int n, int trials, std::uint64_t seed,
                         const std::optional<std::type_identity_t<std::vector<PsdMatrix<S>>>>&
                             reference = std::nullopt,
                         const Tolerance& tol = {}) {
    if (n < 1) throw Error(Errc::SchemaError, "audit needs n >= 1");
    if (trials < 1) throw Error(Errc::PreconditionViolated, "audit needs trials >= 1");

    FunctionalAudit<S> report;
    report.functional_name = f.name;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.additive_slot_pass.assign(n, 1);

    Rng rng(seed);

    std::vector<std::vector<PsdMatrix<S>>> samples;
    samples.reserve(trials);
    for (int t = 0; t < trials; ++t) samples.push_back(random_tuple<S>(rng, n, tol));

    std::vector<S> values;
    values.reserve(samples.size());
    for (const auto& sample : samples) {
        S v = f.evaluate(MatrixTuple<S>(sample));
        if (report.nonnegative && detail::scalar_negative(v, tol)) {
            report.nonnegative = false;
            report.nonnegativity_witness = NonnegativityWitness<S>{sample, v};
        }
        values.push_back(std::move(v));
    }

    for (int slot = 0; slot < n; ++slot) {
        for (int t = 0; t < trials; ++t) {
            auto tuple = random_tuple<S>(rng, n, tol);
            PsdMatrix<S> a = random_psd<S>(rng, n, static_cast<int>(rng.uniform_int(0, n)), tol);
            PsdMatrix<S> b = random_psd<S>(rng, n, static_cast<int>(rng.uniform_int(0, n)), tol);
            auto merged = tuple;
            merged[slot] = validate_psd(a.base() + b.base(), tol);
            const S lhs = f.evaluate(MatrixTuple<S>(merged));
            auto left = tuple;
            left[slot] = a;
            auto right = tuple;
            right[slot] = b;
            const S rhs = f.evaluate(MatrixTuple<S>(left)) + f.evaluate(MatrixTuple<S>(right));
            if (!detail::scalars_equal(lhs, rhs, tol)) {
                report.additive_slot_pass[slot] = 0;
                if (!report.additivity_witness) {
                    std::vector<PsdMatrix<S>> rest;
                    for (int i = 0; i < n; ++i)
                        if (i != slot) rest.push_back(tuple[i]);
                    report.additivity_witness = AdditivityWitness<S>{slot, a, b, std::move(rest), lhs, rhs};
                }
                break;
            }
        }
    }

    if (n >= 2) {
        for (int t = 0; t < trials; ++t) {
            Vec<S> v = random_vector<S>(rng, n);
            if (is_zero_vector(v)) continue;
            const S ci = detail::nonneg_scalar<S>(rng);
            const S cj = detail::nonneg_scalar<S>(rng);
            const int i = static_cast<int>(rng.uniform_int(0, n - 2));
            const int j = static_cast<int>(rng.uniform_int(i + 1, n - 1));
            auto tuple = random_tuple<S>(rng, n, tol);
            tuple[i] = validate_psd(ci * SymMatrix<S>::outer(v), tol);
            tuple[j] = validate_psd(cj * SymMatrix<S>::outer(v), tol);
            const S val = f.evaluate(MatrixTuple<S>(tuple));
            if (!detail::scalars_equal(val, S(0), tol)) {
                report.vanishing_on_proportional_rank_one = false;
                report.vanishing_witness = VanishingWitness<S>{i, j, v, ci, cj, tuple, val};
                break;
            }
        }
    }

    for (int t = 0; t < trials; ++t) {
        auto tuple = random_tuple<S>(rng, n, tol);
        const int slot = static_cast<int>(rng.uniform_int(0, n - 1));
        tuple[slot] = validate_psd(SymMatrix<S>(n), tol);
        const S val = f.evaluate(MatrixTuple<S>(tuple));
        if (!detail::scalars_equal(val, S(0), tol)) {
            report.zero_slot_identity = false;
            report.zero_slot_witness = ZeroSlotWitness<S>{slot, tuple, val};
            break;
        }
    }

    if (!report.hypotheses_pass()) return report;

    std::vector<PsdMatrix<S>> ref;
    if (reference) {
        ref = *reference;
    } else {
        for (int i = 0; i < n; ++i) ref.push_back(validate_psd(SymMatrix<S>::identity(n), tol));
    }
    const MatrixTuple<S> ref_tuple(ref);
    const S ref_md = mixed_discriminant(ref_tuple);
    if (detail::scalars_equal(ref_md, S(0), tol))
        throw Error(Errc::ReferenceTupleDegenerate, "reference tuple has zero mixed discriminant");
    report.estimated_a = f.evaluate(ref_tuple) / ref_md;

    report.proportional = true;
    report.worst_deviation = S(0);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const S expected = *report.estimated_a * mixed_discriminant(MatrixTuple<S>(samples[k]));
        const S dev = detail::scalar_abs<S>(values[k] - expected);
        if (report.worst_deviation < dev) report.worst_deviation = dev;
        if (!detail::scalars_equal(values[k], expected, tol)) {
            report.proportional = false;
            if (!report.proportionality_witness)
                report.proportionality_witness = ProportionalityWitness<S>{samples[k], values[k], expected};
        }
    }
    return report;
}

template <ScalarBackend S>
bool reverify(const CandidateFunctional<S>& f, const NonnegativityWitness<S>& w, const Tolerance& tol = {}) {
    const S v = f.evaluate(MatrixTuple<S>(w.tuple));
    return detail::scalars_equal(v, w.value, tol) && detail::scalar_negative(v, tol);
}

template <ScalarBackend S>
bool reverify(const CandidateFunctional<S>& f, const AdditivityWitness<S>& w, const Tolerance& tol = {}) {
    const int n = static_cast<int>(w.rest.size()) + 1;
    std::vector<PsdMatrix<S>> merged, left, right;
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == w.slot) {
            merged.push_back(validate_psd(w.a.base() + w.b.base(), tol));
            left.push_back(w.a);
            right.push_back(w.b);
        } else {
            merged.push_back(w.rest[r]);
            left.push_back(w.rest[r]);
            right.push_back(w.rest[r]);
            ++r;
        }
    }
    const S lhs = f.evaluate(MatrixTuple<S>(merged));
    const S rhs = f.evaluate(MatrixTuple<S>(left)) + f.evaluate(MatrixTuple<S>(right));
    return !detail::scalars_equal(lhs, rhs, tol);
}

template <ScalarBackend S>
bool reverify(const CandidateFunctional<S>& f, const VanishingWitness<S>& w, const Tolerance& tol = {}) {
    const S v = f.evaluate(MatrixTuple<S>(w.tuple));
    return detail::scalars_equal(v, w.value, tol) && !detail::scalars_equal(v, S(0), tol);
}

template <ScalarBackend S>
bool reverify(const CandidateFunctional<S>& f, const ZeroSlotWitness<S>& w, const Tolerance& tol = {}) {
    const S v = f.evaluate(MatrixTuple<S>(w.tuple));
    return detail::scalars_equal(v, w.value, tol) && !detail::scalars_equal(v, S(0), tol);
}

/// One lemma-trace instance: translation invariance of a segment slot modulo
/// the span of another segment, slot-swap symmetry, and the three equalities
/// behind the diagonal construction d = s + t.
struct LemmaTraceReport {
    int n = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int cases_run = 0;
    int failures = 0;
    std::string first_failure;
    bool pass() const { return failures == 0 && cases_run > 0; }
};

namespace detail {

inline Rational segment_pair_md(const Vec<Rational>& first, const Vec<Rational>& second,
                                const std::vector<PsdMatrix<Rational>>& rest) {
    std::vector<PsdMatrix<Rational>> tuple;
    tuple.push_back(validate_psd(SymMatrix<Rational>::outer(first)));
    tuple.push_back(validate_psd(SymMatrix<Rational>::outer(second)));
    tuple.insert(tuple.end(), rest.begin(), rest.end());
    return mixed_discriminant(MatrixTuple<Rational>(tuple));
}

}  // namespace detail

inline LemmaTraceReport lemma_traces(int n, int trials, std::uint64_t seed) {
    if (n < 2) throw Error(Errc::PreconditionViolated, "lemma traces need n >= 2");
    LemmaTraceReport report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;

    Rng rng(seed);
    auto fail = [&report](int trial, const std::string& what) {
        ++report.failures;
        if (report.first_failure.empty())
            report.first_failure = "trial " + std::to_string(trial) + ": " + what;
    };

    for (int trial = 0; trial < trials; ++trial) {
        const Vec<Rational> s = random_vector<Rational>(rng, n);
        const Vec<Rational> t = random_vector<Rational>(rng, n);
        const Rational alpha = random_scalar<Rational>(rng);
        std::vector<PsdMatrix<Rational>> rest;
        for (int i = 0; i + 2 < n; ++i)
            rest.push_back(random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n))));

        Vec<Rational> shifted(n), diag(n);
        for (int i = 0; i < n; ++i) {
            shifted[i] = t[i] + alpha * s[i];
            diag[i] = s[i] + t[i];
        }

        ++report.cases_run;
        const Rational base = detail::segment_pair_md(t, s, rest);
        if (detail::segment_pair_md(shifted, s, rest) != base)
            fail(trial, "translation modulo the second segment's span changed the value");
        if (detail::segment_pair_md(s, t, rest) != base)
            fail(trial, "swapping the two segment slots changed the value");
        if (detail::segment_pair_md(diag, s, rest) != base)
            fail(trial, "diagonal vs first segment against the second segment");
        if (detail::segment_pair_md(diag, t, rest) != detail::segment_pair_md(s, t, rest))
            fail(trial, "diagonal vs second segment against the first segment");
        if (detail::segment_pair_md(s, diag, rest) != detail::segment_pair_md(t, diag, rest))
            fail(trial, "first vs second segment against the diagonal");
    }
    return report;
}

}  // namespace mixdisc
