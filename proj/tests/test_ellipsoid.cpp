#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mixdisc/ellipsoid.hpp"
#include "mixdisc/sampling.hpp"

using namespace mixdisc;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

Ellipsoid<Rational> from_diag(std::vector<long> d) {
    Vec<Rational> v;
    for (long x : d) v.push_back(q(x));
    return Ellipsoid<Rational>(validate_psd(SymMatrix<Rational>::diagonal(v)));
}

Ellipsoid<Rational> random_ellipsoid(Rng& rng, int n) {
    return Ellipsoid<Rational>(random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n))));
}

}  // namespace

TEST_CASE("unit ball volumes match the closed forms") {
    const Tolerance tol;
    CHECK(tol.close(unit_ball_volume(1), 2.0));
    CHECK(tol.close(unit_ball_volume(2), M_PI));
    CHECK(tol.close(unit_ball_volume(3), 4.0 * M_PI / 3.0));
    CHECK(tol.close(unit_ball_volume(4), M_PI * M_PI / 2.0));
}

TEST_CASE("support function of balls, diagonals, and segments") {
    const auto ball = Ellipsoid<Rational>::unit_ball(3);
    CHECK(support(ball, {q(1), q(0), q(0)}).squared == q(1));
    CHECK(Tolerance{}.close(support(ball, {q(1), q(0), q(0)}).value, 1.0));

    const auto e = from_diag({4, 1});
    CHECK(support(e, {q(1), q(0)}).squared == q(4));
    CHECK(Tolerance{}.close(support(e, {q(1), q(0)}).value, 2.0));
    CHECK(support(e, {q(0), q(1)}).squared == q(1));
    CHECK(support(e, {q(1), q(1)}).squared == q(5));

    const Segment<Rational> s{{q(1), q(2)}};
    CHECK(s.half_length_sq() == q(5));
    const auto se = s.ellipsoid();
    CHECK(se.dim() == 1);
    // support of conv{-t, t} in direction u is |t . u|
    CHECK(support(se, {q(3), q(-1)}).squared == q(1));
    CHECK(support(se, {q(2), q(-1)}).squared == q(0));

    CHECK_THROWS_AS(support(e, {q(1)}), Error);
}

TEST_CASE("degenerate ellipsoids ignore directions orthogonal to their span") {
    const auto flat = from_diag({3, 2, 0});
    CHECK(flat.dim() == 2);
    CHECK(flat.ambient() == 3);
    const auto a = support(flat, {q(1), q(1), q(5)});
    const auto b = support(flat, {q(1), q(1), q(0)});
    CHECK(a.squared == b.squared);
}

TEST_CASE("from_linear_map builds the image ellipsoid") {
    const auto e = Ellipsoid<Rational>::from_linear_map({{q(2), q(0)}, {q(0), q(1)}});
    CHECK(e.matrix().base().at(0, 0) == q(4));
    CHECK(e.matrix().base().at(1, 1) == q(1));
    CHECK(support(e, {q(1), q(0)}).squared == q(4));

    const auto collapsed = Ellipsoid<Rational>::from_linear_map({{q(1), q(0)}, {q(1), q(0)}});
    CHECK(collapsed.dim() == 1);
    CHECK(collapsed.matrix().base().at(0, 1) == q(1));

    CHECK_THROWS_AS(Ellipsoid<Rational>::from_linear_map({{q(1), q(0)}}), Error);
}

TEST_CASE("combination adds matrices with nonnegative weights") {
    const auto ball = Ellipsoid<Rational>::unit_ball(2);
    const auto sum = combine<Rational>({{q(1), ball}, {q(1), ball}});
    CHECK(sum.matrix().base().at(0, 0) == q(2));
    CHECK(support(sum, {q(1), q(0)}).squared == q(2));

    const Segment<Rational> s1{{q(1), q(0)}}, s2{{q(0), q(1)}};
    const auto rebuilt = combine<Rational>({{q(1), s1.ellipsoid()}, {q(1), s2.ellipsoid()}});
    CHECK(rebuilt.matrix().base() == SymMatrix<Rational>::identity(2));

    const auto weighted = combine<Rational>({{q(0), ball}, {q(3, 2), ball}});
    CHECK(weighted.matrix().base().at(1, 1) == q(3, 2));

    CHECK_THROWS_AS(combine<Rational>({}), Error);
    CHECK_THROWS_AS(combine<Rational>({{q(-1), ball}}), Error);
    try {
        combine<Rational>({{q(-1), ball}});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NegativeCoefficient);
    }
    CHECK_THROWS_AS(combine<Rational>({{q(1), ball}, {q(1), Ellipsoid<Rational>::unit_ball(3)}}), Error);
}

TEST_CASE("combination makes squared supports additive") {
    Rng rng(83);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const auto e1 = random_ellipsoid(rng, n);
        const auto e2 = random_ellipsoid(rng, n);
        const Rational l1 = abs(random_scalar<Rational>(rng));
        const Rational l2 = abs(random_scalar<Rational>(rng));
        const auto c = combine<Rational>({{l1, e1}, {l2, e2}});
        const Vec<Rational> u = random_vector<Rational>(rng, n);
        CHECK(support(c, u).squared == l1 * support(e1, u).squared + l2 * support(e2, u).squared);
    }
}

TEST_CASE("normalized squared volume is the determinant") {
    const auto e = from_diag({4, 9});
    const auto v = volume_sq_normalized(e);
    CHECK(v.det == q(36));
    CHECK(Tolerance{}.close(v.volume, 6.0 * M_PI));

    CHECK(volume_sq_normalized(from_diag({1, 0})).det == q(0));
    CHECK(volume_sq_normalized(Ellipsoid<Rational>::unit_ball(3)).det == q(1));
    CHECK(Tolerance{}.close(volume_sq_normalized(Ellipsoid<Rational>::unit_ball(3)).volume,
                            unit_ball_volume(3)));
}

TEST_CASE("volume scales with the expected power of a dilation") {
    Rng rng(89);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const auto e = random_ellipsoid(rng, n);
        const Rational c = abs(random_scalar<Rational>(rng)) + q(1, 7);
        const auto scaled = combine<Rational>({{c * c, e}});  // dilation by c
        CHECK(volume_sq_normalized(scaled).det == [&] {
            Rational p(1);
            for (int i = 0; i < n; ++i) p *= c * c;
            return p * volume_sq_normalized(e).det;
        }());
    }
}

TEST_CASE("polarization identity holds on a hand pair of segments") {
    const Segment<Rational> s1{{q(1), q(0)}}, s2{{q(0), q(1)}};
    const auto report = volume_polarization_check({s1.ellipsoid(), s2.ellipsoid()}, {q(1), q(1)});
    CHECK(report.equal);
    CHECK(report.lhs == q(1));
    CHECK(report.rhs == q(1));
}

TEST_CASE("polarization identity with a single term is the determinant scaling") {
    const auto e = from_diag({2, 3});
    const auto report = volume_polarization_check({e}, {q(5, 2)});
    CHECK(report.equal);
    CHECK(report.lhs == q(5, 2) * q(5, 2) * q(6));
}

TEST_CASE("polarization identity holds on random instances") {
    Rng rng(97);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const int m = static_cast<int>(rng.uniform_int(1, 4));
        std::vector<Ellipsoid<Rational>> es;
        Vec<Rational> lambdas;
        for (int j = 0; j < m; ++j) {
            es.push_back(random_ellipsoid(rng, n));
            lambdas.push_back(abs(random_scalar<Rational>(rng)));
        }
        const auto report = volume_polarization_check(es, lambdas);
        CHECK(report.equal);
        CHECK(report.lhs == report.rhs);
    }
    CHECK_THROWS_AS(volume_polarization_check({from_diag({1})}, {q(1), q(1)}), Error);
}

TEST_CASE("support order follows matrix order") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        const auto e = random_ellipsoid(rng, n);
        const auto bump = random_psd<Rational>(rng, n, static_cast<int>(rng.uniform_int(0, n)));
        const Ellipsoid<Rational> bigger(validate_psd(e.matrix().base() + bump.base()));
        const Vec<Rational> u = random_vector<Rational>(rng, n);
        CHECK(support(bigger, u).squared >= support(e, u).squared);
        CHECK(volume_sq_normalized(bigger).det >= volume_sq_normalized(e).det);
    }
}

TEST_CASE("segment decomposition is spectral over doubles") {
    const Tolerance tol;
    SymMatrix<double> m(2);
    m.set(0, 0, 2.0); m.set(0, 1, 1.0); m.set(1, 1, 2.0);
    const Ellipsoid<double> e(validate_psd(m, tol));
    auto segs = decompose_segments(e, tol);
    REQUIRE(segs.size() == 2);
    CHECK(verify_segment_decomposition(e, segs, tol));
    std::vector<double> lens = {segs[0].half_length_sq(), segs[1].half_length_sq()};
    std::sort(lens.begin(), lens.end());
    CHECK(tol.close(lens[0], 1.0));
    CHECK(tol.close(lens[1], 3.0));
}

TEST_CASE("segment count equals the rank over doubles") {
    Rng rng(103);
    const Tolerance tol;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 5));
        const auto a = random_psd<double>(rng, n, static_cast<int>(rng.uniform_int(0, n)), tol);
        const Ellipsoid<double> e(a);
        const auto segs = decompose_segments(e, tol);
        CHECK(static_cast<int>(segs.size()) == a.rank(tol));
        CHECK(verify_segment_decomposition(e, segs, tol));
    }
}

TEST_CASE("exact decomposition must be supplied, not computed") {
    const auto e = Ellipsoid<Rational>::unit_ball(2);
    CHECK_THROWS_AS(decompose_segments(e), Error);
    try {
        decompose_segments(e);
    } catch (const Error& err) {
        CHECK(err.code() == Errc::ExactDecompositionUnsupported);
    }

    const Segment<Rational> s1{{q(1), q(0)}}, s2{{q(0), q(1)}};
    CHECK(verify_segment_decomposition(e, {s1, s2}));
    CHECK_FALSE(verify_segment_decomposition(e, {s1}));
    CHECK_FALSE(verify_segment_decomposition(e, {s1, s1}));
    CHECK_FALSE(verify_segment_decomposition(e, {Segment<Rational>{{q(1)}}}));
}

TEST_CASE("dimension reduction on a hand instance") {
    // segment of squared half-length 1 along the last axis against the
    // orthogonal unit disc: both sides equal 1.
    const Segment<Rational> s{{q(0), q(0), q(1)}};
    SymMatrix<Rational> disc(3);
    disc.set(0, 0, q(1));
    disc.set(1, 1, q(1));
    const Ellipsoid<Rational> e(validate_psd(disc));
    const auto report = reduce_dimension(s, {e, e});
    CHECK(report.equal);
    CHECK(report.lhs == report.rhs);
    CHECK(report.half_length_sq == q(1));
    CHECK(report.lhs == q(1));
}

TEST_CASE("dimension reduction in the plane") {
    const Segment<Rational> s{{q(0), q(3, 2)}};
    SymMatrix<Rational> a(2);
    a.set(0, 0, q(7, 3));
    const auto report = reduce_dimension(s, {Ellipsoid<Rational>(validate_psd(a))});
    CHECK(report.equal);
    CHECK(report.half_length_sq == q(9, 4));
    CHECK(report.rhs == q(9, 4) * q(7, 3));
}

TEST_CASE("dimension reduction holds on random instances") {
    Rng rng(107);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(2, 4));
        Vec<Rational> t(n, q(0));
        t[n - 1] = random_scalar<Rational>(rng);
        std::vector<Ellipsoid<Rational>> others;
        for (int i = 0; i < n - 1; ++i) {
            const auto small = random_psd<Rational>(rng, n - 1, static_cast<int>(rng.uniform_int(0, n - 1)));
            SymMatrix<Rational> padded(n);
            for (int r = 0; r < n - 1; ++r)
                for (int c = r; c < n - 1; ++c) padded.set(r, c, small.base().at(r, c));
            others.push_back(Ellipsoid<Rational>(validate_psd(padded)));
        }
        const auto report = reduce_dimension(Segment<Rational>{t}, others);
        CHECK(report.equal);

        // doubling the segment quadruples both sides
        Vec<Rational> t2 = t;
        t2[n - 1] *= q(2);
        const auto scaled = reduce_dimension(Segment<Rational>{t2}, others);
        CHECK(scaled.lhs == q(4) * report.lhs);
        CHECK(scaled.equal);
    }
}

TEST_CASE("dimension reduction rejects malformed inputs") {
    const Segment<Rational> ok{{q(0), q(1)}};
    SymMatrix<Rational> a(2);
    a.set(0, 0, q(1));
    const Ellipsoid<Rational> flat(validate_psd(a));

    CHECK_THROWS_AS(reduce_dimension(Segment<Rational>{{q(1)}}, {}), Error);
    CHECK_THROWS_AS(reduce_dimension(ok, {flat, flat}), Error);

    const Segment<Rational> slanted{{q(1), q(1)}};
    CHECK_THROWS_AS(reduce_dimension(slanted, {flat}), Error);
    try {
        reduce_dimension(slanted, {flat});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionViolated);
    }

    const Ellipsoid<Rational> ball = Ellipsoid<Rational>::unit_ball(2);
    CHECK_THROWS_AS(reduce_dimension(ok, {ball}), Error);
    try {
        reduce_dimension(ok, {ball});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInOrthogonalComplement);
    }

    CHECK_THROWS_AS(reduce_dimension(ok, {Ellipsoid<Rational>::unit_ball(3)}), Error);
}
