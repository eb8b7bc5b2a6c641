#include "doctest.h"

#include <vector>

#include "mixdisc/mixed_discriminant.hpp"
#include "mixdisc/sampling.hpp"

using namespace mixdisc;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

PsdMatrix<Rational> psd2(long a, long b, long c) {
    SymMatrix<Rational> m(2);
    m.set(0, 0, q(a));
    m.set(0, 1, q(b));
    m.set(1, 1, q(c));
    return validate_psd(m);
}

MatrixTuple<Rational> identity_tuple(int n) {
    std::vector<PsdMatrix<Rational>> es(n, validate_psd(SymMatrix<Rational>::identity(n)));
    return MatrixTuple<Rational>(std::move(es));
}

/// Closed form for n = 2, written out by hand.
Rational md2_by_hand(const SymMatrix<Rational>& a, const SymMatrix<Rational>& b) {
    return (a.at(0, 0) * b.at(1, 1) + a.at(1, 1) * b.at(0, 0) - q(2) * a.at(0, 1) * b.at(0, 1)) / q(2);
}

Rational det3_by_hand(const Vec<Rational>& c0, const Vec<Rational>& c1, const Vec<Rational>& c2) {
    return c0[0] * (c1[1] * c2[2] - c2[1] * c1[2]) - c1[0] * (c0[1] * c2[2] - c2[1] * c0[2]) +
           c2[0] * (c0[1] * c1[2] - c1[1] * c0[2]);
}

/// Explicit six-permutation sum for n = 3, independent of the library paths.
Rational md3_by_hand(const SymMatrix<Rational>& a, const SymMatrix<Rational>& b,
                     const SymMatrix<Rational>& c) {
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const SymMatrix<Rational>* ms[3] = {&a, &b, &c};
    Rational acc(0);
    for (const auto& p : perms)
        acc += det3_by_hand(ms[p[0]]->column(0), ms[p[1]]->column(1), ms[p[2]]->column(2));
    return acc / q(6);
}

}  // namespace

TEST_CASE("factorial and binomial helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(3, -1) == 0);
}

TEST_CASE("tuple construction enforces count and dimension") {
    CHECK_THROWS_AS(MatrixTuple<Rational>({}), Error);
    CHECK_THROWS_AS(MatrixTuple<Rational>({psd2(1, 0, 1)}), Error);

    std::vector<PsdMatrix<Rational>> mixed = {psd2(1, 0, 1),
                                              validate_psd(SymMatrix<Rational>::identity(3))};
    CHECK_THROWS_AS(MatrixTuple<Rational>(std::move(mixed)), Error);

    const MatrixTuple<Rational> t({psd2(1, 0, 1), psd2(2, 1, 2)});
    CHECK(t.dim() == 2);
    CHECK(t[1].base().at(0, 1) == q(1));
    const auto t2 = t.with_slot(0, psd2(5, 0, 5));
    CHECK(t2[0].base().at(0, 0) == q(5));
    CHECK(t[0].base().at(0, 0) == q(1));
}

TEST_CASE("one-matrix values equal the determinant") {
    const MatrixTuple<Rational> t({validate_psd(SymMatrix<Rational>::diagonal({q(7, 3)}))});
    CHECK(md_perm(t) == q(7, 3));
    CHECK(md_polar(t) == q(7, 3));
}

TEST_CASE("hand values in dimension two") {
    const MatrixTuple<Rational> a({psd2(1, 0, 0), psd2(0, 0, 1)});
    CHECK(md_perm(a) == q(1, 2));
    CHECK(md_polar(a) == q(1, 2));

    const MatrixTuple<Rational> b({psd2(2, 1, 2), psd2(1, 0, 3)});
    CHECK(md_perm(b) == q(4));
    CHECK(md_polar(b) == q(4));
    CHECK(md2_by_hand(b[0].base(), b[1].base()) == q(4));
}

TEST_CASE("normalization on identity tuples") {
    for (int n = 1; n <= 6; ++n) {
        const auto t = identity_tuple(n);
        CHECK(mixed_discriminant(t) == q(1));
        CHECK(md_polar(t) == q(1));
    }
}

TEST_CASE("repeated argument collapses to the determinant") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 5));
        const auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
        const MatrixTuple<Rational> t(std::vector<PsdMatrix<Rational>>(n, a));
        const Rational d = determinant(a.base());
        CHECK(md_perm(t) == d);
        CHECK(md_polar(t) == d);
        CHECK(mixed_discriminant(t) == d);
    }
}

TEST_CASE("subset route matches the hand closed form for n = 2") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_psd<Rational>(rng, 2, static_cast<int>(rng.uniform_int(0, 2)));
        const auto b = random_psd<Rational>(rng, 2, static_cast<int>(rng.uniform_int(0, 2)));
        const MatrixTuple<Rational> t({a, b});
        const Rational expected = md2_by_hand(a.base(), b.base());
        CHECK(md_polar(t) == expected);
        CHECK(md_perm(t) == expected);
    }
}

TEST_CASE("subset route matches the explicit permutation sum for n = 3") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        auto es = random_tuple<Rational>(rng, 3);
        const MatrixTuple<Rational> t(es);
        const Rational expected = md3_by_hand(es[0].base(), es[1].base(), es[2].base());
        CHECK(md_polar(t) == expected);
        CHECK(md_perm(t) == expected);
    }
}

TEST_CASE("the two routes agree on random tuples up to n = 5") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 5));
        const MatrixTuple<Rational> t(random_tuple<Rational>(rng, n));
        const Rational p = md_perm(t);
        CHECK(p == md_polar(t));
        CHECK(p == mixed_discriminant(t));
        CHECK(p.sign() >= 0);
    }
}

TEST_CASE("the two routes agree over doubles") {
    Rng rng(43);
    const Tolerance tol;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 5));
        const MatrixTuple<double> t(random_tuple<double>(rng, n, tol));
        CHECK(tol.close(md_perm(t), md_polar(t)));
    }
}

TEST_CASE("multilinearity, homogeneity, and symmetry hold exactly") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 4));
        auto es = random_tuple<Rational>(rng, n);
        const int slot = static_cast<int>(rng.uniform_int(0, n - 1));
        const auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
        const auto b = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
        const Rational alpha = abs(random_scalar<Rational>(rng));
        const Rational beta = abs(random_scalar<Rational>(rng));

        const MatrixTuple<Rational> base(es);
        const Rational lhs =
            mixed_discriminant(base.with_slot(slot, validate_psd(alpha * a.base() + beta * b.base())));
        const Rational rhs = alpha * mixed_discriminant(base.with_slot(slot, a)) +
                             beta * mixed_discriminant(base.with_slot(slot, b));
        CHECK(lhs == rhs);

        auto perm = es;
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        CHECK(mixed_discriminant(MatrixTuple<Rational>(perm)) == mixed_discriminant(base));
    }
}

TEST_CASE("monotonicity under a psd bump in one slot") {
    Rng rng(59);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const MatrixTuple<Rational> t(random_tuple<Rational>(rng, n));
        const int slot = static_cast<int>(rng.uniform_int(0, n - 1));
        const auto bump = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
        const auto bumped = t.with_slot(slot, validate_psd(t[slot].base() + bump.base()));
        CHECK(mixed_discriminant(bumped) >= mixed_discriminant(t));
    }
}

TEST_CASE("grouped evaluation matches the ungrouped routes on repeats") {
    Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 4));
        const auto a = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(1, n)));
        const auto b = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(1, n)));
        std::vector<PsdMatrix<Rational>> es;
        for (int i = 0; i < n - 1; ++i) es.push_back(a);
        es.push_back(b);
        const MatrixTuple<Rational> t(es);

        const auto groups = group_equal_entries(t);
        if (!(a.base() == b.base())) {
            REQUIRE(groups.size() == 2u);
            CHECK(groups[0].second == n - 1);
        }
        CHECK(md_grouped(groups, n) == md_perm(t));
        CHECK(mixed_discriminant(t) == md_perm(t));
    }
}

TEST_CASE("permutation cap throws and the subset route survives past it") {
    const int n = 9;
    std::vector<PsdMatrix<Rational>> es(n, validate_psd(SymMatrix<Rational>::identity(n)));
    const MatrixTuple<Rational> t(std::move(es));
    CHECK_THROWS_AS(md_perm(t), Error);
    try {
        md_perm(t);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimensionTooLarge);
    }
    CHECK(md_polar(t) == q(1));
    CHECK(mixed_discriminant(t) == q(1));  // grouped route kicks in for repeats
    CHECK_THROWS_AS(mixed_discriminant(identity_tuple(3), MdAlgo::Perm, 2), Error);
}

TEST_CASE("expansion coefficients reproduce the determinant at any lambda") {
    Rng rng(67);
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= 3; ++n) {
            std::vector<PsdMatrix<Rational>> mats;
            for (int j = 0; j < m; ++j)
                mats.push_back(random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n))));
            const auto exp = det_expansion(mats);
            CHECK(exp.matrix_count() == m);
            CHECK(exp.degree() == n);
            for (int trial = 0; trial < 25; ++trial) {
                Vec<Rational> lambdas(m);
                for (auto& l : lambdas) l = abs(random_scalar<Rational>(rng));
                SymMatrix<Rational> sum(n);
                for (int j = 0; j < m; ++j) sum += lambdas[j] * mats[j].base();
                CHECK(exp.evaluate(lambdas) == determinant(sum));
            }
        }
    }
}

TEST_CASE("expansion coefficients carry the multinomial weights") {
    const auto a = psd2(2, 1, 2);
    const auto b = psd2(1, 0, 3);
    const auto exp = det_expansion<Rational>({a, b});
    CHECK(exp.coefficient_of({2, 0}) == determinant(a.base()));
    CHECK(exp.coefficient_of({0, 2}) == determinant(b.base()));
    const Rational cross = mixed_discriminant(MatrixTuple<Rational>({a, b}));
    CHECK(exp.coefficient_of({1, 1}) == q(2) * cross);
    CHECK(exp.mixed_discriminant_of({1, 1}) == cross);
    CHECK(exp.mixed_discriminant_of({2, 0}) == determinant(a.base()));
    CHECK_THROWS_AS(exp.coefficient_of({3, 0}), Error);
    CHECK_THROWS_AS(exp.evaluate({q(1)}), Error);
}

TEST_CASE("expansion guards reject oversized requests") {
    std::vector<PsdMatrix<Rational>> many(40, validate_psd(SymMatrix<Rational>::identity(8)));
    CHECK_THROWS_AS(det_expansion(many), Error);
    try {
        det_expansion(many);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimensionTooLarge);
    }
    CHECK_THROWS_AS(det_expansion(std::vector<PsdMatrix<Rational>>{}), Error);
}
