#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mixdisc/mixed_discriminant.hpp"

namespace mixdisc {

/// Linearly independent vectors v_i, one from the range of each A_i,
/// witnessing a positive mixed discriminant. `coefficients[i]` expresses v_i
/// in the deterministic column-space basis of A_i, so the certificate
/// re-verifies from scratch.
template <ScalarBackend S>
struct TransversalCertificate {
    std::vector<Vec<S>> vectors;
    std::vector<Vec<S>> coefficients;
    S det;
};

/// Index subset (0-based) whose range sum is too small, witnessing a zero
/// mixed discriminant.
struct ViolationCertificate {
    std::vector<int> indices;
    int achieved_dim = 0;
};

enum class Positivity { Positive, Zero };

template <ScalarBackend S>
struct PositivityVerdict {
    Positivity status = Positivity::Zero;
    std::optional<TransversalCertificate<S>> transversal;
    std::optional<ViolationCertificate> violation;
};

struct TransversalSearchParams {
    long coeff_bound = 1000;          // random combination coefficients in [-N, N]
    int random_retries = 20;          // failures before the exhaustive fallback
    std::uint64_t seed = 0;
    std::int64_t exhaustive_cap = 1'000'000;  // basis-tuple budget for the fallback
};

namespace detail {

/// Row-echelon basis of a growing span; insert() reduces the vector against
/// the current rows and reports whether the dimension grew.
template <ScalarBackend S>
class SpanBuilder {
public:
    SpanBuilder(int ambient, const Tolerance& tol) : ambient_(ambient), tol_(tol) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    bool insert(Vec<S> v) {
        const double scale = std::max(max_abs(v), 1e-300);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const int l = lead_[r];
            if (ScalarTraits<S>::is_zero(v[l], tol_, scale)) continue;
            const S f = v[l] / rows_[r][l];
            for (int c = l; c < ambient_; ++c) v[c] -= f * rows_[r][c];
            v[l] = ScalarTraits<S>::zero();
        }
        int lead = -1;
        for (int c = 0; c < ambient_; ++c)
            if (!ScalarTraits<S>::is_zero(v[c], tol_, scale)) { lead = c; break; }
        if (lead < 0) return false;
        std::size_t pos = 0;
        while (pos < lead_.size() && lead_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        lead_.insert(lead_.begin() + pos, lead);
        return true;
    }

private:
    static double max_abs(const Vec<S>& v) {
        double m = 0.0;
        for (const S& x : v) m = std::max(m, ScalarTraits<S>::abs_double(x));
        return m;
    }

    int ambient_;
    Tolerance tol_;
    std::vector<Vec<S>> rows_;
    std::vector<int> lead_;
};

template <ScalarBackend S>
bool violation_dfs(const std::vector<Subspace<S>>& spaces, int n, int start,
                   const SpanBuilder<S>& span, std::vector<int>& subset,
                   ViolationCertificate& out) {
    for (int i = start; i < n; ++i) {
        SpanBuilder<S> extended = span;
        for (const auto& b : spaces[i].basis()) extended.insert(b);
        subset.push_back(i);
        if (extended.dim() < static_cast<int>(subset.size())) {
            out.indices = subset;
            out.achieved_dim = extended.dim();
            return true;
        }
        // a full-dimensional span can never fall below any superset's size
        if (extended.dim() < n && violation_dfs(spaces, n, i + 1, extended, subset, out)) return true;
        subset.pop_back();
    }
    return false;
}

}  // namespace detail

/// Tests the range-sum condition over every index subset, in lexicographic
/// order of the subsets as sorted sequences (a prefix precedes its
/// extensions), so the reported violating subset is deterministic.
template <ScalarBackend S>
PositivityVerdict<S> check_subset_condition(const MatrixTuple<S>& t, const Tolerance& tol = {}) {
    const int n = t.dim();
    std::vector<Subspace<S>> spaces;
    spaces.reserve(n);
    for (int i = 0; i < n; ++i) spaces.push_back(column_space(t[i], tol));

    PositivityVerdict<S> verdict;
    ViolationCertificate cert;
    std::vector<int> subset;
    detail::SpanBuilder<S> empty(n, tol);
    if (detail::violation_dfs(spaces, n, 0, empty, subset, cert)) {
        verdict.status = Positivity::Zero;
        verdict.violation = std::move(cert);
    } else {
        verdict.status = Positivity::Positive;
    }
    return verdict;
}

namespace detail {

template <ScalarBackend S>
bool transversal_det_ok(const std::vector<Vec<S>>& vectors, S& det_out, const Tolerance& tol) {
    det_out = det_columns(vectors);
    if constexpr (ScalarTraits<S>::exact) {
        return !det_out.is_zero();
    } else {
        double norms = 1.0;
        for (const auto& v : vectors) {
            double s = 0.0;
            for (double x : v) s += x * x;
            norms *= std::sqrt(s);
        }
        return std::fabs(det_out) > tol.rel * norms;
    }
}

template <ScalarBackend S>
TransversalCertificate<S> find_transversal_unchecked(const MatrixTuple<S>& t,
                                                     const std::vector<Subspace<S>>& spaces,
                                                     const TransversalSearchParams& params,
                                                     const Tolerance& tol) {
    const int n = t.dim();
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<long> coeff(-params.coeff_bound, params.coeff_bound);

    // Randomized draws first. When a transversal exists the determinant is a
    // nonzero polynomial in the combination coefficients, so a uniform draw
    // over [-N, N] misses its zero set with probability at most n/(2N+1).
    for (int attempt = 0; attempt < params.random_retries; ++attempt) {
        std::vector<Vec<S>> coeffs(n), vectors(n, Vec<S>(n, ScalarTraits<S>::zero()));
        for (int i = 0; i < n; ++i) {
            coeffs[i].resize(spaces[i].dim());
            for (int j = 0; j < spaces[i].dim(); ++j) {
                const S c = static_cast<S>(coeff(rng));
                coeffs[i][j] = c;
                for (int r = 0; r < n; ++r) vectors[i][r] += c * spaces[i].basis()[j][r];
            }
        }
        S det = ScalarTraits<S>::zero();
        if (transversal_det_ok(vectors, det, tol))
            return TransversalCertificate<S>{std::move(vectors), std::move(coeffs), det};
    }

    // Deterministic fallback: every tuple of basis vectors. If a transversal
    // exists at all, multilinearity of the determinant guarantees one among
    // these tuples.
    std::int64_t combos = 1;
    for (int i = 0; i < n; ++i) combos *= std::max(spaces[i].dim(), 1);
    if (combos > params.exhaustive_cap)
        throw Error(Errc::SearchExhausted,
                    "exhaustive fallback would visit " + std::to_string(combos) +
                        " basis tuples (cap " + std::to_string(params.exhaustive_cap) + ")");

    std::vector<int> pick(n, 0);
    for (;;) {
        std::vector<Vec<S>> coeffs(n), vectors(n);
        for (int i = 0; i < n; ++i) {
            coeffs[i].assign(spaces[i].dim(), ScalarTraits<S>::zero());
            coeffs[i][pick[i]] = ScalarTraits<S>::one();
            vectors[i] = spaces[i].basis()[pick[i]];
        }
        S det = ScalarTraits<S>::zero();
        if (transversal_det_ok(vectors, det, tol))
            return TransversalCertificate<S>{std::move(vectors), std::move(coeffs), det};

        int i = 0;
        while (i < n && pick[i] + 1 == spaces[i].dim()) pick[i++] = 0;
        if (i == n) break;
        ++pick[i];
    }
    throw Error(Errc::SearchExhausted, "no basis tuple passed the determinant test");
}

}  // namespace detail

/// Searches for a transversal certificate. Callers must not pass a tuple
/// whose range-sum condition fails; this is re-checked and rejected.
template <ScalarBackend S>
TransversalCertificate<S> find_transversal(const MatrixTuple<S>& t,
                                           const TransversalSearchParams& params = {},
                                           const Tolerance& tol = {}) {
    auto verdict = check_subset_condition(t, tol);
    if (verdict.status == Positivity::Zero)
        throw Error(Errc::PreconditionViolated, "tuple has zero mixed discriminant; no transversal exists");
    std::vector<Subspace<S>> spaces;
    for (int i = 0; i < t.dim(); ++i) spaces.push_back(column_space(t[i], tol));
    return detail::find_transversal_unchecked(t, spaces, params, tol);
}

/// Full positivity decision with a certificate for either outcome.
template <ScalarBackend S>
PositivityVerdict<S> decide(const MatrixTuple<S>& t, const TransversalSearchParams& params = {},
                            const Tolerance& tol = {}) {
    PositivityVerdict<S> verdict = check_subset_condition(t, tol);
    if (verdict.status == Positivity::Positive) {
        std::vector<Subspace<S>> spaces;
        for (int i = 0; i < t.dim(); ++i) spaces.push_back(column_space(t[i], tol));
        verdict.transversal = detail::find_transversal_unchecked(t, spaces, params, tol);
    }
    return verdict;
}

/// Re-derives everything a transversal certificate claims: membership of each
/// v_i in the recomputed column-space basis via the stored coefficients, and
/// the nonvanishing determinant.
template <ScalarBackend S>
bool verify_transversal(const MatrixTuple<S>& t, const TransversalCertificate<S>& cert,
                        const Tolerance& tol = {}) {
    const int n = t.dim();
    if (static_cast<int>(cert.vectors.size()) != n || static_cast<int>(cert.coefficients.size()) != n)
        return false;
    for (int i = 0; i < n; ++i) {
        const Subspace<S> sp = column_space(t[i], tol);
        if (static_cast<int>(cert.coefficients[i].size()) != sp.dim()) return false;
        Vec<S> rebuilt(n, ScalarTraits<S>::zero());
        for (int j = 0; j < sp.dim(); ++j)
            for (int r = 0; r < n; ++r) rebuilt[r] += cert.coefficients[i][j] * sp.basis()[j][r];
        if constexpr (ScalarTraits<S>::exact) {
            if (!(rebuilt == cert.vectors[i])) return false;
        } else {
            double scale = 0.0;
            for (double x : cert.vectors[i]) scale = std::max(scale, std::fabs(x));
            for (int r = 0; r < n; ++r)
                if (!tol.negligible(rebuilt[r] - cert.vectors[i][r], std::max(scale, 1.0))) return false;
        }
    }
    S det = ScalarTraits<S>::zero();
    return detail::transversal_det_ok(cert.vectors, det, tol);
}

/// Re-derives a violation certificate through sum_dim.
template <ScalarBackend S>
bool verify_violation(const MatrixTuple<S>& t, const ViolationCertificate& cert,
                      const Tolerance& tol = {}) {
    if (cert.indices.empty()) return false;
    std::vector<Subspace<S>> spaces;
    for (int i : cert.indices) {
        if (i < 0 || i >= t.dim()) return false;
        spaces.push_back(column_space(t[i], tol));
    }
    const int d = sum_dim(spaces, tol);
    return d == cert.achieved_dim && d < static_cast<int>(cert.indices.size());
}

}  // namespace mixdisc
