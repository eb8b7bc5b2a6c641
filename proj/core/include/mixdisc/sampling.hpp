#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mixdisc/matrix.hpp"

namespace mixdisc {

/// Deterministic source for all randomized routines; a fixed seed pins the
/// whole stream, so sampled test cases are reproducible byte for byte.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }

    long uniform_int(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }

    double uniform_real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

private:
    std::mt19937_64 engine_;
};

template <ScalarBackend S>
S random_scalar(Rng& rng, long max_num = 6, long max_den = 4) {
    if constexpr (ScalarTraits<S>::exact) {
        return Rational(rng.uniform_int(-max_num, max_num), rng.uniform_int(1, max_den));
    } else {
        (void)max_den;
        return rng.uniform_real(-static_cast<double>(max_num), static_cast<double>(max_num));
    }
}

template <ScalarBackend S>
Vec<S> random_vector(Rng& rng, int n, long max_num = 6, long max_den = 4) {
    Vec<S> v(n);
    for (auto& x : v) x = random_scalar<S>(rng, max_num, max_den);
    return v;
}

/// Random PSD matrix of the requested rank (at most), built as G G^T from an
/// n-by-rank factor. rank = 0 gives the zero matrix.
template <ScalarBackend S>
PsdMatrix<S> random_psd(Rng& rng, int n, int rank, const Tolerance& tol = {}) {
    std::vector<Vec<S>> g(n);
    for (int i = 0; i < n; ++i) g[i] = random_vector<S>(rng, rank);
    SymMatrix<S> a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a.set(i, j, dot(g[i], g[j]));
    return validate_psd(a, tol);
}

/// Random n-tuple with ranks drawn uniformly from 0..n, biasing the sample
/// toward rank-deficient tuples where positivity actually fails.
template <ScalarBackend S>
std::vector<PsdMatrix<S>> random_tuple(Rng& rng, int n, const Tolerance& tol = {}) {
    std::vector<PsdMatrix<S>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(random_psd<S>(rng, n, static_cast<int>(rng.uniform_int(0, n)), tol));
    return out;
}

/// Random full-rank n-tuple: every factor has n columns, so each matrix is
/// positive definite with probability one.
template <ScalarBackend S>
std::vector<PsdMatrix<S>> random_full_rank_tuple(Rng& rng, int n, const Tolerance& tol = {}) {
    std::vector<PsdMatrix<S>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(random_psd<S>(rng, n, n, tol));
    return out;
}

/// Random orthogonal matrix (rows), from Gaussian entries and modified
/// Gram-Schmidt. Double precision only.
inline std::vector<std::vector<double>> random_orthogonal(Rng& rng, int n) {
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) q[i][j] = rng.gaussian();
        for (int k = 0; k < i; ++k) {
            double proj = 0.0;
            for (int j = 0; j < n; ++j) proj += q[i][j] * q[k][j];
            for (int j = 0; j < n; ++j) q[i][j] -= proj * q[k][j];
        }
        double norm = 0.0;
        for (int j = 0; j < n; ++j) norm += q[i][j] * q[i][j];
        norm = std::sqrt(norm);
        if (norm < 1e-12) return random_orthogonal(rng, n);
        for (int j = 0; j < n; ++j) q[i][j] /= norm;
    }
    return q;
}

/// Q^T A Q with the result assembled symmetric by construction.
inline SymMatrix<double> conjugate(const SymMatrix<double>& a, const std::vector<std::vector<double>>& q) {
    const int n = a.dim();
    std::vector<std::vector<double>> aq(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) aq[i][j] += a.at(i, k) * q[k][j];
    SymMatrix<double> out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += q[k][i] * aq[k][j];
            out.set(i, j, s);
        }
    return out;
}

}  // namespace mixdisc
