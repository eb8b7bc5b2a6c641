#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mixdisc/matrix.hpp"

namespace mixdisc {

/// Factorial guard: beyond this the permutation sum is not worth running.
inline constexpr int kDefaultPermCap = 8;

inline std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

/// Exactly n validated PSD matrices of dimension n: the argument list of the
/// mixed discriminant. Backend homogeneity is enforced by the type.
template <ScalarBackend S>
class MatrixTuple {
public:
    explicit MatrixTuple(std::vector<PsdMatrix<S>> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw Error(Errc::SchemaError, "tuple must hold at least one matrix");
        const int n = entries_.front().dim();
        if (static_cast<int>(entries_.size()) != n)
            throw Error(Errc::SchemaError,
                        "tuple of " + std::to_string(entries_.size()) + " matrices in dimension " +
                            std::to_string(n) + "; the counts must match");
        for (const auto& a : entries_)
            if (a.dim() != n) throw Error(Errc::AmbientMismatch, "tuple matrices have mixed dimensions");
    }

    int dim() const { return entries_.front().dim(); }
    const PsdMatrix<S>& operator[](int i) const { return entries_[i]; }
    const std::vector<PsdMatrix<S>>& entries() const { return entries_; }

    /// Copies the tuple with slot i replaced.
    MatrixTuple with_slot(int i, PsdMatrix<S> a) const {
        std::vector<PsdMatrix<S>> es = entries_;
        es[i] = std::move(a);
        return MatrixTuple(std::move(es));
    }

private:
    std::vector<PsdMatrix<S>> entries_;
};

/// Permutation-sum route: D = (1/n!) sum over sigma of det of the matrix
/// whose i-th column is the i-th column of the sigma(i)-th argument.
template <ScalarBackend S>
S md_perm(const MatrixTuple<S>& t, int perm_cap = kDefaultPermCap) {
    const int n = t.dim();
    if (n > perm_cap)
        throw Error(Errc::DimensionTooLarge,
                    "permutation sum over " + std::to_string(n) + "! terms exceeds cap n <= " +
                        std::to_string(perm_cap));
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    S acc = ScalarTraits<S>::zero();
    std::vector<Vec<S>> cols(n);
    do {
        for (int i = 0; i < n; ++i) cols[i] = t[sigma[i]].base().column(i);
        acc += det_columns(cols);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return acc / static_cast<S>(factorial(n));
}

/// Subset route: D = (1/n!) sum over nonempty J of (-1)^(n-|J|) det(sum of
/// the A_j, j in J). This is the coefficient extraction forced by the
/// defining expansion of det(lambda_1 A_1 + ... + lambda_n A_n); the unit
/// tests pin it against hand expansions for n = 1, 2, 3 before anything else
/// trusts it as an oracle.
template <ScalarBackend S>
S md_polar(const MatrixTuple<S>& t) {
    const int n = t.dim();
    S acc = ScalarTraits<S>::zero();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        SymMatrix<S> sum(n);
        int taken = 0;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) {
                sum += t[j].base();
                ++taken;
            }
        const S d = determinant(sum);
        if ((n - taken) % 2 == 0)
            acc += d;
        else
            acc -= d;
    }
    return acc / static_cast<S>(factorial(n));
}

/// Mixed discriminant of distinct matrices with multiplicities summing to n:
/// the finite-difference form of the subset route. With all multiplicities 1
/// it reduces to md_polar term for term; grouping only collapses subsets that
/// produce identical determinants.
template <ScalarBackend S>
S md_grouped(const std::vector<std::pair<SymMatrix<S>, int>>& groups, int n) {
    S acc = ScalarTraits<S>::zero();
    std::vector<int> take(groups.size(), 0);
    for (;;) {
        // advance odometer: take[i] in 0..multiplicity_i
        std::size_t pos = 0;
        while (pos < take.size() && take[pos] == groups[pos].second) {
            take[pos] = 0;
            ++pos;
        }
        if (pos == take.size()) break;
        ++take[pos];

        int total = 0;
        std::int64_t ways = 1;
        for (std::size_t i = 0; i < take.size(); ++i) {
            total += take[i];
            ways *= binomial(groups[i].second, take[i]);
        }
        SymMatrix<S> sum(n);
        for (std::size_t i = 0; i < take.size(); ++i)
            if (take[i] > 0) sum += static_cast<S>(take[i]) * groups[i].first;
        const S term = static_cast<S>(ways) * determinant(sum);
        if ((n - total) % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc / static_cast<S>(factorial(n));
}

/// Groups equal tuple entries (entry-wise exact equality only; tolerance
/// grouping would silently change results).
template <ScalarBackend S>
std::vector<std::pair<SymMatrix<S>, int>> group_equal_entries(const MatrixTuple<S>& t) {
    std::vector<std::pair<SymMatrix<S>, int>> groups;
    for (const auto& a : t.entries()) {
        bool merged = false;
        for (auto& [base, count] : groups)
            if (base == a.base()) {
                ++count;
                merged = true;
                break;
            }
        if (!merged) groups.emplace_back(a.base(), 1);
    }
    return groups;
}

enum class MdAlgo { Perm, Polar, Auto };

/// D(A_1,...,A_n). Auto collapses repeated arguments and otherwise picks the
/// permutation sum for small n, the subset sum above the factorial knee.
template <ScalarBackend S>
S mixed_discriminant(const MatrixTuple<S>& t, MdAlgo algo = MdAlgo::Auto, int perm_cap = kDefaultPermCap) {
    switch (algo) {
        case MdAlgo::Perm:
            return md_perm(t, perm_cap);
        case MdAlgo::Polar:
            return md_polar(t);
        case MdAlgo::Auto: {
            auto groups = group_equal_entries(t);
            if (groups.size() < t.entries().size()) return md_grouped(groups, t.dim());
            return t.dim() <= perm_cap ? md_perm(t, perm_cap) : md_polar(t);
        }
    }
    throw std::logic_error("unreachable");
}

/// One monomial of the determinant expansion: the multiset of argument
/// indices is encoded by its multiplicity vector, and `coefficient` is the
/// multinomial-weighted value multiplying lambda_1^k1 ... lambda_m^km.
template <ScalarBackend S>
struct ExpansionTerm {
    std::vector<int> multiplicities;  // length m, entries sum to n
    S coefficient;
};

/// Full coefficient table of det(lambda_1 A_1 + ... + lambda_m A_m), keyed by
/// monomial. Substituting any concrete lambda >= 0 reproduces the determinant
/// exactly in EXACT mode.
template <ScalarBackend S>
class ExpansionCoefficients {
public:
    ExpansionCoefficients(int m, int n, std::vector<ExpansionTerm<S>> terms)
        : m_(m), n_(n), terms_(std::move(terms)) {}

    int matrix_count() const { return m_; }
    int degree() const { return n_; }
    const std::vector<ExpansionTerm<S>>& terms() const { return terms_; }

    S evaluate(const Vec<S>& lambdas) const {
        if (static_cast<int>(lambdas.size()) != m_)
            throw Error(Errc::AmbientMismatch, "expansion expects " + std::to_string(m_) + " lambdas");
        S acc = ScalarTraits<S>::zero();
        for (const auto& term : terms_) {
            S mono = term.coefficient;
            for (int j = 0; j < m_; ++j)
                for (int k = 0; k < term.multiplicities[j]; ++k) mono *= lambdas[j];
            acc += mono;
        }
        return acc;
    }

    /// Coefficient of the monomial with the given multiplicity vector.
    S coefficient_of(const std::vector<int>& multiplicities) const {
        for (const auto& term : terms_)
            if (term.multiplicities == multiplicities) return term.coefficient;
        throw Error(Errc::SchemaError, "no such monomial in the expansion");
    }

    /// D(A_1[k_1],...,A_m[k_m]): the coefficient with its multinomial weight
    /// divided back out.
    S mixed_discriminant_of(const std::vector<int>& multiplicities) const {
        std::int64_t weight = factorial(n_);
        for (int k : multiplicities) weight /= factorial(k);
        return coefficient_of(multiplicities) / static_cast<S>(weight);
    }

private:
    int m_;
    int n_;
    std::vector<ExpansionTerm<S>> terms_;
};

/// Expands det(lambda_1 A_1 + ... + lambda_m A_m) into its full monomial
/// table. C(m+n-1, n) terms; guarded because each costs a grouped mixed
/// discriminant.
template <ScalarBackend S>
ExpansionCoefficients<S> det_expansion(const std::vector<PsdMatrix<S>>& matrices) {
    if (matrices.empty()) throw Error(Errc::SchemaError, "det_expansion needs at least one matrix");
    const int n = matrices.front().dim();
    const int m = static_cast<int>(matrices.size());
    for (const auto& a : matrices)
        if (a.dim() != n) throw Error(Errc::AmbientMismatch, "det_expansion matrices have mixed dimensions");
    if (binomial(m + n - 1, n) > 20000)
        throw Error(Errc::DimensionTooLarge, "expansion would have " +
                                                 std::to_string(binomial(m + n - 1, n)) + " terms");

    std::vector<ExpansionTerm<S>> terms;
    std::vector<int> mult(m, 0);
    mult[0] = n;
    // enumerate multiplicity vectors with fixed sum n, lexicographically
    // descending in the leading entries
    for (;;) {
        std::vector<std::pair<SymMatrix<S>, int>> groups;
        for (int j = 0; j < m; ++j)
            if (mult[j] > 0) groups.emplace_back(matrices[j].base(), mult[j]);
        std::int64_t weight = factorial(n);
        for (int k : mult) weight /= factorial(k);
        terms.push_back({mult, static_cast<S>(weight) * md_grouped(groups, n)});

        // next composition of n into m parts
        int j = m - 2;
        while (j >= 0 && mult[j] == 0) --j;
        if (j < 0) break;
        --mult[j];
        const int tail = std::accumulate(mult.begin() + j + 1, mult.end(), 0) + 1;
        for (int k = j + 1; k < m; ++k) mult[k] = 0;
        mult[j + 1] = tail;
    }
    return ExpansionCoefficients<S>(m, n, std::move(terms));
}

}  // namespace mixdisc
