#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mixdisc/eigen.hpp"
#include "mixdisc/error.hpp"
#include "mixdisc/scalar.hpp"

namespace mixdisc {

/// Hard cap on the ambient dimension; factorial/subset enumeration elsewhere
/// makes larger inputs impractical, so ingest fails fast.
inline constexpr int kMaxDimension = 12;

template <ScalarBackend S>
using Vec = std::vector<S>;

template <ScalarBackend S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    S acc = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <ScalarBackend S>
bool is_zero_vector(const Vec<S>& v) {
    for (const S& x : v)
        if (!(x == ScalarTraits<S>::zero())) return false;
    return true;
}

/// JSON fragment for a scalar list: rationals as quoted "p/q", floats bare.
template <ScalarBackend S>
std::string scalar_list_json(const Vec<S>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (ScalarTraits<S>::exact)
            out += "\"" + ScalarTraits<S>::to_string(v[i]) + "\"";
        else
            out += ScalarTraits<S>::to_string(v[i]);
    }
    return out + "]";
}

/// Dense symmetric n x n matrix, full row-major storage. Symmetry is a hard
/// invariant: construction validates it and set() writes both triangles.
template <ScalarBackend S>
class SymMatrix {
public:
    explicit SymMatrix(int n) : n_(checked_dim(n)), a_(static_cast<std::size_t>(n) * n, ScalarTraits<S>::zero()) {}

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, ScalarTraits<S>::one());
        return m;
    }

    static SymMatrix diagonal(const Vec<S>& d) {
        SymMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m.set(i, i, d[i]);
        return m;
    }

    /// v v^T (rank one for v != 0).
    static SymMatrix outer(const Vec<S>& v) {
        SymMatrix m(static_cast<int>(v.size()));
        for (int i = 0; i < m.n_; ++i)
            for (int j = i; j < m.n_; ++j) m.set(i, j, v[i] * v[j]);
        return m;
    }

    /// Ingests a full row grid. EXACT entries must match across the diagonal
    /// exactly; FLOAT entries within tolerance are symmetrized by averaging.
    static SymMatrix from_rows(const std::vector<Vec<S>>& rows, const Tolerance& tol = {}) {
        const int n = checked_dim(static_cast<int>(rows.size()));
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != n)
                throw Error(Errc::SchemaError, "matrix rows must all have length n");
        SymMatrix m(n);
        double scale = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                scale = std::max(scale, ScalarTraits<S>::abs_double(rows[i][j]));
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                if constexpr (ScalarTraits<S>::exact) {
                    if (!(rows[i][j] == rows[j][i]))
                        throw Error(Errc::NotSymmetric,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") does not match its transpose");
                    m.set(i, j, rows[i][j]);
                } else {
                    if (!tol.negligible(rows[i][j] - rows[j][i], scale))
                        throw Error(Errc::NotSymmetric,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") differs from its transpose beyond tolerance");
                    m.set(i, j, (rows[i][j] + rows[j][i]) / 2.0);
                }
            }
        }
        return m;
    }

    int dim() const { return n_; }

    const S& at(int i, int j) const { return a_[idx(i, j)]; }

    void set(int i, int j, const S& v) {
        a_[idx(i, j)] = v;
        a_[idx(j, i)] = v;
    }

    Vec<S> column(int j) const {
        Vec<S> c(n_);
        for (int i = 0; i < n_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Vec<S>> columns() const {
        std::vector<Vec<S>> cs;
        cs.reserve(n_);
        for (int j = 0; j < n_; ++j) cs.push_back(column(j));
        return cs;
    }

    Vec<S> apply(const Vec<S>& x) const {
        Vec<S> y(n_, ScalarTraits<S>::zero());
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

    /// x . (A x)
    S quad_form(const Vec<S>& x) const { return dot(x, apply(x)); }

    /// Largest |entry| as a double, the scale all FLOAT tolerances key off.
    double max_abs() const {
        double m = 0.0;
        for (const S& v : a_) m = std::max(m, ScalarTraits<S>::abs_double(v));
        return m;
    }

    SymMatrix& operator+=(const SymMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    SymMatrix& operator-=(const SymMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    SymMatrix& operator*=(const S& c) {
        for (auto& v : a_) v *= c;
        return *this;
    }
    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(const S& c, SymMatrix a) { return a *= c; }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    static int checked_dim(int n) {
        if (n < 1) throw Error(Errc::SchemaError, "matrix dimension must be >= 1");
        if (n > kMaxDimension)
            throw Error(Errc::DimensionTooLarge,
                        "dimension " + std::to_string(n) + " exceeds cap " + std::to_string(kMaxDimension));
        return n;
    }
    void require_same_dim(const SymMatrix& o) const {
        if (n_ != o.n_) throw Error(Errc::AmbientMismatch, "matrix dimensions differ");
    }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int n_;
    std::vector<S> a_;
};

namespace detail {

/// Determinant by in-place elimination on a flat row-major copy.
/// EXACT division is error-free; FLOAT pivots by largest magnitude.
template <ScalarBackend S>
S det_inplace(int n, std::vector<S>& w) {
    auto at = [&](int i, int j) -> S& { return w[static_cast<std::size_t>(i) * n + j]; };
    S det = ScalarTraits<S>::one();
    bool negate = false;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        if constexpr (ScalarTraits<S>::exact) {
            for (int i = k; i < n; ++i)
                if (!at(i, k).is_zero()) { piv = i; break; }
        } else {
            double best = 0.0;
            for (int i = k; i < n; ++i) {
                const double m = std::fabs(at(i, k));
                if (m > best) { best = m; piv = i; }
            }
        }
        if (piv < 0) return ScalarTraits<S>::zero();
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            negate = !negate;
        }
        const S d = at(k, k);
        if constexpr (!ScalarTraits<S>::exact) {
            if (d == 0.0) return 0.0;
        }
        det *= d;
        for (int i = k + 1; i < n; ++i) {
            const S f = at(i, k) / d;
            if constexpr (ScalarTraits<S>::exact)
                if (f.is_zero()) continue;
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return negate ? -det : det;
}

/// Row echelon rank with scale-aware FLOAT pivoting: pivots no larger than
/// tol.rel * (initial max |entry|) count as zero. Returns pivot column list.
template <ScalarBackend S>
std::vector<int> pivot_columns(int rows, int cols, std::vector<S>& w, const Tolerance& tol) {
    auto at = [&](int i, int j) -> S& { return w[static_cast<std::size_t>(i) * cols + j]; };
    double scale = 0.0;
    for (const S& v : w) scale = std::max(scale, ScalarTraits<S>::abs_double(v));

    std::vector<int> pivots;
    int r = 0;
    for (int j = 0; j < cols && r < rows; ++j) {
        int piv = -1;
        if constexpr (ScalarTraits<S>::exact) {
            double best = 0.0;
            for (int i = r; i < rows; ++i) {
                if (at(i, j).is_zero()) continue;
                const double m = ScalarTraits<S>::abs_double(at(i, j));
                if (piv < 0 || m > best) { best = m; piv = i; }
            }
        } else {
            double best = 0.0;
            for (int i = r; i < rows; ++i) {
                const double m = std::fabs(at(i, j));
                if (m > best) { best = m; piv = i; }
            }
            if (piv >= 0 && tol.negligible(at(piv, j), scale)) piv = -1;
        }
        if (piv < 0) continue;
        if (piv != r)
            for (int c = 0; c < cols; ++c) std::swap(at(r, c), at(piv, c));
        const S d = at(r, j);
        for (int i = r + 1; i < rows; ++i) {
            const S f = at(i, j) / d;
            if constexpr (ScalarTraits<S>::exact)
                if (f.is_zero()) continue;
            for (int c = j; c < cols; ++c) at(i, c) -= f * at(r, c);
        }
        pivots.push_back(j);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Determinant of a symmetric matrix. Exact over rationals; standard pivoted
/// elimination over doubles. Zero is a valid result.
template <ScalarBackend S>
S determinant(const SymMatrix<S>& m) {
    std::vector<S> w;
    w.reserve(static_cast<std::size_t>(m.dim()) * m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) w.push_back(m.at(i, j));
    return detail::det_inplace(m.dim(), w);
}

/// Determinant of the square matrix whose j-th column is cols[j].
template <ScalarBackend S>
S det_columns(const std::vector<Vec<S>>& cols) {
    const int n = static_cast<int>(cols.size());
    std::vector<S> w(static_cast<std::size_t>(n) * n, ScalarTraits<S>::zero());
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(cols[j].size()) != n)
            throw Error(Errc::AmbientMismatch, "det_columns: vectors must have length n");
        for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i) * n + j] = cols[j][i];
    }
    return detail::det_inplace(n, w);
}

/// Rank of the matrix whose columns are the given vectors.
template <ScalarBackend S>
int rank_of_vectors(const std::vector<Vec<S>>& vecs, int ambient, const Tolerance& tol = {}) {
    if (vecs.empty()) return 0;
    const int cols = static_cast<int>(vecs.size());
    std::vector<S> w(static_cast<std::size_t>(ambient) * cols, ScalarTraits<S>::zero());
    for (int j = 0; j < cols; ++j) {
        if (static_cast<int>(vecs[j].size()) != ambient)
            throw Error(Errc::AmbientMismatch, "rank_of_vectors: ambient dimension mismatch");
        for (int i = 0; i < ambient; ++i) w[static_cast<std::size_t>(i) * cols + j] = vecs[j][i];
    }
    return static_cast<int>(detail::pivot_columns(ambient, cols, w, tol).size());
}

/// A vector x with x.(Ax) < 0 (or < -tol * scale in FLOAT mode), refuting
/// positive semidefiniteness.
template <ScalarBackend S>
struct PsdWitness {
    Vec<S> x;
    S quad_value;
};

/// What validation actually established: the LDL^T pivot sequence (EXACT) or
/// the minimum-eigenvalue bound (FLOAT).
template <ScalarBackend S>
struct PsdCertificate {
    std::vector<S> pivots;
    double min_eigenvalue = 0.0;
    double matrix_scale = 0.0;
};

template <ScalarBackend S>
class PsdMatrix;

template <ScalarBackend S>
std::variant<PsdMatrix<S>, PsdWitness<S>> check_psd(const SymMatrix<S>& m, const Tolerance& tol = {});

/// Validated positive semidefinite matrix. Immutable; the rank cache is an
/// idempotent atomic so shared instances are safe across threads.
template <ScalarBackend S>
class PsdMatrix {
public:
    PsdMatrix(const PsdMatrix& o) : m_(o.m_), cert_(o.cert_), rank_cache_(o.rank_cache_.load()) {}
    PsdMatrix(PsdMatrix&& o) noexcept
        : m_(std::move(o.m_)), cert_(std::move(o.cert_)), rank_cache_(o.rank_cache_.load()) {}
    PsdMatrix& operator=(const PsdMatrix& o) {
        m_ = o.m_;
        cert_ = o.cert_;
        rank_cache_.store(o.rank_cache_.load());
        return *this;
    }
    PsdMatrix& operator=(PsdMatrix&& o) noexcept {
        m_ = std::move(o.m_);
        cert_ = std::move(o.cert_);
        rank_cache_.store(o.rank_cache_.load());
        return *this;
    }

    const SymMatrix<S>& base() const { return m_; }
    int dim() const { return m_.dim(); }
    const PsdCertificate<S>& certificate() const { return cert_; }

    int rank(const Tolerance& tol = {}) const {
        int r = rank_cache_.load(std::memory_order_relaxed);
        if (r >= 0) return r;
        r = rank_of_vectors(m_.columns(), m_.dim(), tol);
        rank_cache_.store(r, std::memory_order_relaxed);
        return r;
    }

    friend bool operator==(const PsdMatrix& a, const PsdMatrix& b) { return a.m_ == b.m_; }

    friend std::variant<PsdMatrix<S>, PsdWitness<S>> check_psd<S>(const SymMatrix<S>&, const Tolerance&);

private:
    PsdMatrix(SymMatrix<S> m, PsdCertificate<S> cert) : m_(std::move(m)), cert_(std::move(cert)) {}

    SymMatrix<S> m_;
    PsdCertificate<S> cert_;
    mutable std::atomic<int> rank_cache_{-1};
};

/// Decides positive semidefiniteness with a certificate for either outcome.
///
/// EXACT: diagonal LDL^T. A PSD matrix never needs pivoting here: every Schur
/// complement of a PSD matrix is PSD, and a PSD matrix with a zero diagonal
/// entry has that whole row zero. A negative pivot, or a zero pivot with a
/// nonzero residual row, yields an explicit witness via back substitution.
/// FLOAT: Jacobi eigenvalues; accepted iff min eigenvalue >= -tol * |A|.
template <ScalarBackend S>
std::variant<PsdMatrix<S>, PsdWitness<S>> check_psd(const SymMatrix<S>& m, const Tolerance& tol) {
    const int n = m.dim();
    if constexpr (ScalarTraits<S>::exact) {
        SymMatrix<S> w = m;
        std::vector<Vec<S>> lower(n, Vec<S>(n, ScalarTraits<S>::zero()));  // strict lower of L
        PsdCertificate<S> cert;

        auto witness_from = [&](const Vec<S>& z) {
            // Solve L^T x = z; then x.(m x) equals z's value in the
            // partially reduced form, which is negative by construction.
            Vec<S> x(n, ScalarTraits<S>::zero());
            for (int i = n - 1; i >= 0; --i) {
                S acc = z[i];
                for (int j = i + 1; j < n; ++j) acc -= lower[j][i] * x[j];
                x[i] = acc;
            }
            return PsdWitness<S>{x, m.quad_form(x)};
        };

        for (int k = 0; k < n; ++k) {
            const S d = w.at(k, k);
            if (d.sign() < 0) {
                Vec<S> z(n, ScalarTraits<S>::zero());
                z[k] = ScalarTraits<S>::one();
                return witness_from(z);
            }
            if (d.is_zero()) {
                int bad = -1;
                for (int j = k + 1; j < n; ++j)
                    if (!w.at(k, j).is_zero()) { bad = j; break; }
                if (bad < 0) {
                    cert.pivots.push_back(d);
                    continue;  // whole residual row is zero: consistent zero pivot
                }
                // 2x2 block [[0, c], [c, s]] is indefinite; pick t with
                // 2 t c + s = -1 and lift (t, 1) through L^T.
                const S c = w.at(k, bad);
                const S s = w.at(bad, bad);
                Vec<S> z(n, ScalarTraits<S>::zero());
                z[k] = -(s + Rational(1)) / (Rational(2) * c);
                z[bad] = ScalarTraits<S>::one();
                return witness_from(z);
            }
            cert.pivots.push_back(d);
            for (int i = k + 1; i < n; ++i) lower[i][k] = w.at(i, k) / d;
            for (int i = k + 1; i < n; ++i) {
                if (lower[i][k].is_zero()) continue;
                for (int j = i; j < n; ++j) w.set(i, j, w.at(i, j) - lower[i][k] * w.at(k, j));
            }
        }
        return PsdMatrix<S>(m, std::move(cert));
    } else {
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) flat.push_back(m.at(i, j));
        const SymmetricEigen eig = jacobi_eigen(n, std::move(flat));
        const double scale = std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
        if (eig.values.front() < 0.0 && !tol.negligible(eig.values.front(), scale)) {
            const Vec<S>& x = eig.vectors.front();
            return PsdWitness<S>{x, m.quad_form(x)};
        }
        PsdCertificate<S> cert;
        cert.min_eigenvalue = eig.values.front();
        cert.matrix_scale = scale;
        return PsdMatrix<S>(m, std::move(cert));
    }
}

/// Throwing form of check_psd; the witness rides along as a JSON fragment.
template <ScalarBackend S>
PsdMatrix<S> validate_psd(const SymMatrix<S>& m, const Tolerance& tol = {}) {
    auto res = check_psd(m, tol);
    if (auto* ok = std::get_if<PsdMatrix<S>>(&res)) return std::move(*ok);
    const auto& w = std::get<PsdWitness<S>>(res);
    std::string detail = "{\"witness\":" + scalar_list_json(w.x);
    if constexpr (ScalarTraits<S>::exact)
        detail += ",\"quad_form\":\"" + ScalarTraits<S>::to_string(w.quad_value) + "\"}";
    else
        detail += ",\"quad_form\":" + ScalarTraits<S>::to_string(w.quad_value) + "}";
    throw Error(Errc::NotPsd, "matrix is not positive semidefinite", detail);
}

/// Linear span of a list of independent vectors in R^ambient.
template <ScalarBackend S>
class Subspace {
public:
    Subspace(int ambient, std::vector<Vec<S>> basis, const Tolerance& tol = {})
        : ambient_(ambient), basis_(std::move(basis)) {
        if (ambient_ < 1) throw Error(Errc::SchemaError, "ambient dimension must be >= 1");
        if (rank_of_vectors(basis_, ambient_, tol) != static_cast<int>(basis_.size()))
            throw Error(Errc::SchemaError, "subspace basis vectors are linearly dependent");
    }

    static Subspace empty(int ambient) { return Subspace(ambient, {}); }

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vec<S>>& basis() const { return basis_; }

private:
    int ambient_;
    std::vector<Vec<S>> basis_;
};

/// Basis of the range of a PSD matrix: its pivot columns under rank-revealing
/// elimination. For PSD matrices the range equals the span of the
/// positive-eigenvalue eigenvectors, so no eigensolver is involved.
template <ScalarBackend S>
Subspace<S> column_space(const PsdMatrix<S>& a, const Tolerance& tol = {}) {
    const int n = a.dim();
    std::vector<S> w;
    w.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w.push_back(a.base().at(i, j));
    const std::vector<int> pivots = detail::pivot_columns(n, n, w, tol);
    std::vector<Vec<S>> basis;
    basis.reserve(pivots.size());
    for (int j : pivots) basis.push_back(a.base().column(j));
    return Subspace<S>(n, std::move(basis), tol);
}

/// Dimension of the sum of subspaces (rank of all bases side by side).
template <ScalarBackend S>
int sum_dim(const std::vector<Subspace<S>>& spaces, const Tolerance& tol = {}) {
    if (spaces.empty()) return 0;
    const int ambient = spaces.front().ambient();
    std::vector<Vec<S>> all;
    for (const auto& sp : spaces) {
        if (sp.ambient() != ambient)
            throw Error(Errc::AmbientMismatch, "sum_dim: subspaces have different ambient dimensions");
        all.insert(all.end(), sp.basis().begin(), sp.basis().end());
    }
    return rank_of_vectors(all, ambient, tol);
}

}  // namespace mixdisc
