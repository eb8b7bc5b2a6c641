#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mixdisc {

/// Eigendecomposition of a small dense symmetric matrix (FLOAT backend only).
/// `values` ascending; `vectors[k]` is the unit eigenvector for `values[k]`.
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
};

/// Cyclic Jacobi iteration. `a` is row-major n*n symmetric. Intended for the
/// library's n <= 12 regime; converges to machine precision in a few sweeps.
inline SymmetricEigen jacobi_eigen(int n, std::vector<double> a) {
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto at = [n](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<size_t>(i) * n + j];
    };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(a, i, j) * at(a, i, j);
        if (off <= 1e-300) break;

        double scale = 0.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(at(a, i, i)));
        if (std::sqrt(off) <= 1e-15 * std::max(scale, 1e-300)) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(a, p, q);
                if (apq == 0.0) continue;
                const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = at(a, k, p);
                    const double akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(a, p, k);
                    const double aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = at(v, k, p);
                    const double vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    // Sort ascending by eigenvalue, permuting eigenvectors alongside.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a[static_cast<size_t>(order[j]) * n + order[j]] <
                a[static_cast<size_t>(order[i]) * n + order[i]])
                std::swap(order[i], order[j]);

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        out.values[k] = a[static_cast<size_t>(src) * n + src];
        for (int i = 0; i < n; ++i) out.vectors[k][i] = v[static_cast<size_t>(i) * n + src];
    }
    return out;
}

}  // namespace mixdisc
