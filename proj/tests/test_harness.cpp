#include "doctest.h"

#include <vector>

#include "mixdisc/harness.hpp"
#include "mixdisc/json_io.hpp"

using namespace mixdisc;

namespace {

Rational q(long num, long den = 1) { return Rational(num, den); }

PsdMatrix<Rational> basis_outer(int n, int i) {
    Vec<Rational> e(n, q(0));
    e[i] = q(1);
    return validate_psd(SymMatrix<Rational>::outer(e));
}

std::vector<PsdMatrix<Rational>> identity_entries(int n) {
    return std::vector<PsdMatrix<Rational>>(n, validate_psd(SymMatrix<Rational>::identity(n)));
}

}  // namespace

TEST_CASE("the mixed discriminant itself passes the audit with a = 1") {
    for (int n = 1; n <= 3; ++n) {
        const auto report = audit<Rational>(scaled_md_functional(q(1)), n, 40, 5);
        CHECK(report.all_pass());
        CHECK(report.hypotheses_pass());
        REQUIRE(report.estimated_a.has_value());
        CHECK(*report.estimated_a == q(1));
        CHECK(report.worst_deviation == q(0));
        CHECK(report.proportional);
    }
}

TEST_CASE("scaled copies are recovered exactly, including zero") {
    for (const Rational& c : {q(0), q(1, 3), q(7), q(5, 2)}) {
        const auto report = audit<Rational>(scaled_md_functional(c), 2, 40, 6);
        CHECK(report.all_pass());
        CHECK(*report.estimated_a == c);
    }
}

TEST_CASE("audit validates its arguments") {
    CHECK_THROWS_AS(audit<Rational>(scaled_md_functional(q(1)), 0, 10, 1), Error);
    CHECK_THROWS_AS(audit<Rational>(scaled_md_functional(q(1)), 2, 0, 1), Error);
}

TEST_CASE("a degenerate reference tuple is rejected") {
    const std::vector<PsdMatrix<Rational>> ref = {basis_outer(2, 0), basis_outer(2, 0)};
    CHECK_THROWS_AS(audit<Rational>(scaled_md_functional(q(1)), 2, 10, 2, ref), Error);
    try {
        audit<Rational>(scaled_md_functional(q(1)), 2, 10, 2, ref);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ReferenceTupleDegenerate);
    }
}

TEST_CASE("a custom nondegenerate reference tuple recovers the scale") {
    const std::vector<PsdMatrix<Rational>> ref = {basis_outer(2, 0), basis_outer(2, 1)};
    const auto report = audit<Rational>(scaled_md_functional(q(3, 4)), 2, 30, 8, ref);
    CHECK(report.all_pass());
    CHECK(*report.estimated_a == q(3, 4));
}

TEST_CASE("product functional evaluates as the product of slotwise values") {
    const auto f = product_functional<Rational>({validate_psd(SymMatrix<Rational>::identity(2))});
    CHECK(f.evaluate(MatrixTuple<Rational>(identity_entries(2))) == q(1));
    // D(e1 e1^T, I) = 1/2 for each slot
    CHECK(f.evaluate(MatrixTuple<Rational>({basis_outer(2, 0), basis_outer(2, 0)})) == q(1, 4));
    CHECK_THROWS_AS(product_functional<Rational>({validate_psd(SymMatrix<Rational>::identity(3))}),
                    Error);
}

TEST_CASE("product functional passes nonnegativity and additivity but not vanishing") {
    for (int n = 2; n <= 3; ++n) {
        Rng rng(10 + n);
        const auto bs = random_full_rank_tuple<Rational>(rng, n);
        const auto f =
            product_functional<Rational>(std::vector<PsdMatrix<Rational>>(bs.begin() + 1, bs.end()));
        const auto report = audit<Rational>(f, n, 40, 11);
        CHECK(report.nonnegative);
        CHECK(report.additive());
        CHECK_FALSE(report.vanishing_on_proportional_rank_one);
        CHECK_FALSE(report.all_pass());
        REQUIRE(report.vanishing_witness.has_value());
        CHECK(reverify(f, *report.vanishing_witness));
    }
}

TEST_CASE("measure functional evaluates atoms with folded normalization") {
    const MeasureAtom<Rational> atom{{{q(1), q(0)}, {q(1), q(0)}}, q(1)};
    const auto f = measure_functional<Rational>({atom});
    CHECK(f.evaluate(MatrixTuple<Rational>(identity_entries(2))) == q(1));
    CHECK(f.evaluate(MatrixTuple<Rational>({basis_outer(2, 0), basis_outer(2, 0)})) == q(1));
    CHECK(f.evaluate(MatrixTuple<Rational>({basis_outer(2, 1), basis_outer(2, 0)})) == q(0));

    // scaling an atom vector must not change the functional
    const MeasureAtom<Rational> scaled{{{q(2), q(0)}, {q(1), q(0)}}, q(1)};
    const auto g = measure_functional<Rational>({scaled});
    for (const auto& t :
         {MatrixTuple<Rational>(identity_entries(2)),
          MatrixTuple<Rational>({basis_outer(2, 0), basis_outer(2, 1)})})
        CHECK(f.evaluate(t) == g.evaluate(t));

    CHECK_THROWS_AS(measure_functional<Rational>({MeasureAtom<Rational>{{{q(0), q(0)}}, q(1)}}),
                    Error);
    CHECK_THROWS_AS(measure_functional<Rational>({MeasureAtom<Rational>{{{q(1), q(0)}}, q(0)}}),
                    Error);
    CHECK_THROWS_AS(measure_functional<Rational>({MeasureAtom<Rational>{{{q(1), q(0)}}, q(-2)}}),
                    Error);
}

TEST_CASE("measure functional passes nonnegativity and additivity but not vanishing") {
    for (int n = 2; n <= 3; ++n) {
        Rng rng(20 + n);
        std::vector<MeasureAtom<Rational>> atoms;
        for (int k = 0; k < 2; ++k) {
            MeasureAtom<Rational> atom;
            atom.weight = abs(random_scalar<Rational>(rng)) + q(1, 3);
            for (int i = 0; i < n; ++i) {
                Vec<Rational> v = random_vector<Rational>(rng, n);
                if (is_zero_vector(v)) v[0] = q(1);
                atom.vectors.push_back(v);
            }
            atoms.push_back(atom);
        }
        const auto f = measure_functional(atoms);
        const auto report = audit<Rational>(f, n, 40, 13);
        CHECK(report.nonnegative);
        CHECK(report.additive());
        CHECK_FALSE(report.vanishing_on_proportional_rank_one);
        REQUIRE(report.vanishing_witness.has_value());
        CHECK(reverify(f, *report.vanishing_witness));
    }
}

TEST_CASE("vanishing witnesses pair a zero value with a positive functional") {
    Rng rng(31);
    const int n = 2;
    const auto bs = random_full_rank_tuple<Rational>(rng, n);
    const auto f =
        product_functional<Rational>(std::vector<PsdMatrix<Rational>>(bs.begin() + 1, bs.end()));
    const auto report = audit<Rational>(f, n, 60, 17);
    REQUIRE(report.vanishing_witness.has_value());
    const auto& w = *report.vanishing_witness;
    // the witness tuple has two proportional rank-one slots, so its mixed
    // discriminant vanishes while the functional does not
    CHECK(mixed_discriminant(MatrixTuple<Rational>(w.tuple)).is_zero());
    CHECK(w.value.sign() > 0);
    CHECK(w.tuple[w.slot_i].base() == (w.coeff_i * SymMatrix<Rational>::outer(w.direction)));
    CHECK(w.tuple[w.slot_j].base() == (w.coeff_j * SymMatrix<Rational>::outer(w.direction)));
}

TEST_CASE("a functional that breaks additivity is caught with a witness") {
    CandidateFunctional<Rational> f{
        "square", [](const MatrixTuple<Rational>& t) {
            const Rational v = mixed_discriminant(t);
            return v * v;
        }};
    const auto report = audit<Rational>(f, 2, 40, 19);
    CHECK(report.nonnegative);
    CHECK_FALSE(report.additive());
    REQUIRE(report.additivity_witness.has_value());
    CHECK(reverify(f, *report.additivity_witness));
    CHECK_FALSE(report.all_pass());
}

TEST_CASE("a functional that goes negative is caught with a witness") {
    CandidateFunctional<Rational> f{
        "neg", [](const MatrixTuple<Rational>& t) { return -mixed_discriminant(t); }};
    const auto report = audit<Rational>(f, 2, 60, 23);
    CHECK_FALSE(report.nonnegative);
    REQUIRE(report.nonnegativity_witness.has_value());
    CHECK(reverify(f, *report.nonnegativity_witness));
}

TEST_CASE("a functional with a constant offset fails the zero-slot identity") {
    CandidateFunctional<Rational> f{
        "offset", [](const MatrixTuple<Rational>& t) { return mixed_discriminant(t) + q(1); }};
    const auto report = audit<Rational>(f, 2, 40, 29);
    CHECK_FALSE(report.zero_slot_identity);
    REQUIRE(report.zero_slot_witness.has_value());
    CHECK(reverify(f, *report.zero_slot_witness));
}

TEST_CASE("audits are deterministic for a fixed seed") {
    const auto f = scaled_md_functional(q(2));
    const auto a = audit<Rational>(f, 2, 25, 37);
    const auto b = audit<Rational>(f, 2, 25, 37);
    CHECK(audit_json(a) == audit_json(b));
}

TEST_CASE("audit works over doubles") {
    const Tolerance tol;
    const auto report = audit<double>(scaled_md_functional(0.5), 3, 25, 41, {}, tol);
    CHECK(report.all_pass());
    CHECK(tol.close(*report.estimated_a, 0.5));
}

TEST_CASE("lemma traces pass for rank-one slot rewrites") {
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto report = lemma_traces(n, 3, seed);
            CHECK(report.pass());
            CHECK(report.failures == 0);
            CHECK(report.cases_run == 3);
            CHECK(report.first_failure.empty());
        }
    }
    CHECK_THROWS_AS(lemma_traces(1, 5, 0), Error);
}

TEST_CASE("segment-pair values match a hand computation") {
    const Rational v = detail::segment_pair_md({q(1), q(3)}, {q(0), q(1)}, {});
    // D(t t^T, s s^T) with t = (1,3), s = (0,1) is (t1 s2 - t2 s1)^2 / 2
    CHECK(v == q(1, 2));
    const Rational w = detail::segment_pair_md({q(2), q(4)}, {q(1), q(2)}, {});
    CHECK(w == q(0));
}
