#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mixdisc/mixed_discriminant.hpp"

namespace mixdisc {

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
    return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

/// Centered ellipsoid, held by the PSD matrix whose quadratic form is the
/// squared support function. Possibly degenerate; dim = rank of the matrix.
template <ScalarBackend S>
class Ellipsoid {
public:
    explicit Ellipsoid(PsdMatrix<S> matrix) : a_(std::move(matrix)) {}

    static Ellipsoid unit_ball(int n, const Tolerance& tol = {}) {
        return Ellipsoid(validate_psd(SymMatrix<S>::identity(n), tol));
    }

    /// Image of the unit ball under the linear map with the given rows:
    /// the ellipsoid's matrix is T T^T (validated as a sanity check).
    static Ellipsoid from_linear_map(const std::vector<Vec<S>>& t_rows, const Tolerance& tol = {}) {
        const int n = static_cast<int>(t_rows.size());
        SymMatrix<S> a(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(t_rows[i].size()) != n)
                throw Error(Errc::SchemaError, "linear map must be square");
            for (int j = i; j < n; ++j) a.set(i, j, dot(t_rows[i], t_rows[j]));
        }
        return Ellipsoid(validate_psd(a, tol));
    }

    const PsdMatrix<S>& matrix() const { return a_; }
    int ambient() const { return a_.dim(); }
    int dim(const Tolerance& tol = {}) const { return a_.rank(tol); }

private:
    PsdMatrix<S> a_;
};

/// Centered segment conv{-t, t}: the rank-one ellipsoid with matrix t t^T and
/// support |t.u|. All formulas here use |t|^2, the squared half-length.
template <ScalarBackend S>
struct Segment {
    Vec<S> vector;

    SymMatrix<S> matrix() const { return SymMatrix<S>::outer(vector); }
    Ellipsoid<S> ellipsoid(const Tolerance& tol = {}) const {
        return Ellipsoid<S>(validate_psd(matrix(), tol));
    }
    S half_length_sq() const { return dot(vector, vector); }
};

/// Support function value in direction u. The squared channel is exact over
/// rationals; the root is always reported in binary64.
template <ScalarBackend S>
struct SupportValue {
    S squared;
    double value;
};

template <ScalarBackend S>
SupportValue<S> support(const Ellipsoid<S>& e, const Vec<S>& u) {
    if (static_cast<int>(u.size()) != e.ambient())
        throw Error(Errc::AmbientMismatch, "direction has wrong dimension");
    const S sq = e.matrix().base().quad_form(u);
    return {sq, std::sqrt(std::max(ScalarTraits<S>::to_double(sq), 0.0))};
}

template <ScalarBackend S>
struct L2Term {
    S lambda;
    Ellipsoid<S> ellipsoid;
};

/// L2 combination: the ellipsoid whose matrix is sum of lambda_i A_i, so its
/// squared support function is the lambda-weighted sum of the terms'.
template <ScalarBackend S>
Ellipsoid<S> combine(const std::vector<L2Term<S>>& terms, const Tolerance& tol = {}) {
    if (terms.empty()) throw Error(Errc::SchemaError, "combination needs at least one term");
    const int n = terms.front().ellipsoid.ambient();
    SymMatrix<S> sum(n);
    for (const auto& term : terms) {
        if (term.ellipsoid.ambient() != n)
            throw Error(Errc::AmbientMismatch, "combination terms have mixed ambient dimensions");
        if constexpr (ScalarTraits<S>::exact) {
            if (term.lambda.sign() < 0)
                throw Error(Errc::NegativeCoefficient, "combination coefficients must be >= 0");
        } else {
            if (term.lambda < 0.0)
                throw Error(Errc::NegativeCoefficient, "combination coefficients must be >= 0");
        }
        sum += term.lambda * term.ellipsoid.matrix().base();
    }
    return Ellipsoid<S>(validate_psd(sum, tol));
}

/// vol(E)^2 normalized by the unit-ball volume, i.e. det(A_E) — the exact,
/// dimension-free size functional. `volume` is the binary64 convenience
/// channel kappa_n * sqrt(det).
template <ScalarBackend S>
struct VolumeValue {
    S det;
    double volume;
};

template <ScalarBackend S>
VolumeValue<S> volume_sq_normalized(const Ellipsoid<S>& e) {
    const S d = determinant(e.matrix().base());
    const double df = std::max(ScalarTraits<S>::to_double(d), 0.0);
    return {d, unit_ball_volume(e.ambient()) * std::sqrt(df)};
}

/// Both sides of the volume polarization identity, kappa-free: the left side
/// evaluates det of the combined matrix through the ellipsoid ops, the right
/// side expands into mixed discriminants and substitutes the lambdas.
struct VolumePolarizationReport {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

inline VolumePolarizationReport volume_polarization_check(const std::vector<Ellipsoid<Rational>>& es,
                                                          const Vec<Rational>& lambdas) {
    if (es.size() != lambdas.size())
        throw Error(Errc::SchemaError, "one lambda per ellipsoid required");
    std::vector<L2Term<Rational>> terms;
    for (std::size_t i = 0; i < es.size(); ++i) terms.push_back({lambdas[i], es[i]});
    const Rational lhs = volume_sq_normalized(combine(terms)).det;

    std::vector<PsdMatrix<Rational>> mats;
    for (const auto& e : es) mats.push_back(e.matrix());
    const Rational rhs = det_expansion(mats).evaluate(lambdas);
    return {lhs, rhs, lhs == rhs};
}

/// Spectral segment decomposition (FLOAT only): eigenvalues within tolerance
/// of zero are clamped, each remaining eigenpair becomes the segment
/// sqrt(lambda) q. Rational inputs must go through
/// verify_segment_decomposition with a caller-supplied decomposition instead.
template <ScalarBackend S>
std::vector<Segment<S>> decompose_segments(const Ellipsoid<S>& e, const Tolerance& tol = {}) {
    if constexpr (ScalarTraits<S>::exact) {
        throw Error(Errc::ExactDecompositionUnsupported,
                    "spectral decomposition is not available over rationals; supply a decomposition to verify");
    } else {
        const int n = e.ambient();
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat.push_back(e.matrix().base().at(i, j));
        const SymmetricEigen eig = jacobi_eigen(n, std::move(flat));
        const double scale = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
        std::vector<Segment<S>> out;
        for (int k = 0; k < n; ++k) {
            if (tol.negligible(eig.values[k], scale) || eig.values[k] < 0.0) continue;
            Vec<S> t(n);
            const double root = std::sqrt(eig.values[k]);
            for (int i = 0; i < n; ++i) t[i] = root * eig.vectors[k][i];
            out.push_back(Segment<S>{std::move(t)});
        }
        return out;
    }
}

/// Checks that the segments' rank-one matrices sum back to the ellipsoid's
/// matrix (exactly over rationals, entrywise within tolerance over doubles).
template <ScalarBackend S>
bool verify_segment_decomposition(const Ellipsoid<S>& e, const std::vector<Segment<S>>& segments,
                                  const Tolerance& tol = {}) {
    const int n = e.ambient();
    SymMatrix<S> sum(n);
    for (const auto& s : segments) {
        if (static_cast<int>(s.vector.size()) != n) return false;
        sum += s.matrix();
    }
    if constexpr (ScalarTraits<S>::exact) {
        return sum == e.matrix().base();
    } else {
        const double scale = std::max(e.matrix().base().max_abs(), 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (!tol.negligible(sum.at(i, j) - e.matrix().base().at(i, j), scale)) return false;
        return true;
    }
}

/// Both sides of the dimension-reduction identity for a segment along the
/// last basis vector and ellipsoids in its orthogonal complement:
///   n * D(A_S, A_2, ..., A_n)  vs  |t|^2 * D'(A'_2, ..., A'_n)
/// where A' strips the last row and column. Exact rational arithmetic.
struct DimensionReductionReport {
    Rational lhs;
    Rational rhs;
    Rational half_length_sq;
    bool equal = false;
};

inline DimensionReductionReport reduce_dimension(const Segment<Rational>& s,
                                                 const std::vector<Ellipsoid<Rational>>& others) {
    const int n = static_cast<int>(s.vector.size());
    if (n < 2 || static_cast<int>(others.size()) != n - 1)
        throw Error(Errc::PreconditionViolated,
                    "need a segment in dimension n >= 2 and exactly n-1 ellipsoids");
    for (int i = 0; i + 1 < n; ++i)
        if (!s.vector[i].is_zero())
            throw Error(Errc::PreconditionViolated, "segment must be parallel to the last basis vector");

    std::vector<PsdMatrix<Rational>> full;
    full.push_back(validate_psd(s.matrix()));
    for (const auto& e : others) {
        if (e.ambient() != n) throw Error(Errc::AmbientMismatch, "ellipsoid ambient dimension mismatch");
        for (int i = 0; i < n; ++i)
            if (!e.matrix().base().at(i, n - 1).is_zero())
                throw Error(Errc::NotInOrthogonalComplement,
                            "ellipsoid is not contained in the segment's orthogonal complement");
        full.push_back(e.matrix());
    }
    const Rational lhs = Rational(n) * mixed_discriminant(MatrixTuple<Rational>(full));

    const Rational len_sq = s.half_length_sq();
    Rational rhs(0);
    if (n - 1 >= 1) {
        std::vector<PsdMatrix<Rational>> reduced;
        for (const auto& e : others) {
            SymMatrix<Rational> block(n - 1);
            for (int i = 0; i < n - 1; ++i)
                for (int j = i; j < n - 1; ++j) block.set(i, j, e.matrix().base().at(i, j));
            reduced.push_back(validate_psd(block));
        }
        rhs = len_sq * mixed_discriminant(MatrixTuple<Rational>(reduced));
    }
    return {lhs, rhs, len_sq, lhs == rhs};
}

}  // namespace mixdisc
