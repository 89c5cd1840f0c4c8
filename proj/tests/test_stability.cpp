#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confalg/stability.hpp"

using namespace confalg;

TEST_CASE("range constants") {
    // D(p,m,k) = (B k - C)/A with A = p^m, B = p^m - 1
    RangeConstant r21 = range_constant(Prime(2), 1);
    CHECK(r21.A == 2);
    CHECK(r21.B == 1);
    CHECK(r21.C == 0);
    CHECK(D_constant(Prime(2), 1, 2) == Rational(1));
    CHECK(D_constant(Prime(2), 2, 4) == Rational(3));
    CHECK(D_constant(Prime(3), 1, 1) == Rational(1, 3));
    CHECK(D_constant(Prime(3), 2, 5) == Rational(10, 3));

    // C vanishes mod 2 and is sum_{j<m} (p^m - 2 p^j) at odd p
    CHECK(range_constant(Prime(2), 3).C == 0);
    CHECK(range_constant(Prime(3), 2).C == 10); // (9-2) + (9-6)
    CHECK(D_constant(Prime(3), 2, 0) == Rational(-10, 9));

    CHECK(floor_threshold(Prime(3), 2, 5) == 3);  // i <= 10/3
    CHECK(strict_threshold(Prime(2), 1, 2) == 0); // i < 1
    CHECK(floor_threshold(Prime(2), 1, 2) == 1);

    CHECK(unstable_member(Bidegree{1, 2}, Prime(2), 1));        // on the line
    CHECK_FALSE(unstable_member(Bidegree{0, 2}, Prime(2), 1));  // below it
}

TEST_CASE("stability classes and ideals") {
    GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
    CHECK(stability_class(f2, 0).name() == "e");
    CHECK(stability_class(f2, 1).name() == "x1");
    CHECK(stability_class(f2, 2).name() == "x2");
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    CHECK(stability_class(f3, 1).name() == "y1");
    GeneratorSet h4 = GeneratorSet::for_params(Prime(2), 4);
    CHECK(stability_class(h4, 2).name() == "w2");

    IdealSpec ideal = stability_ideal(f3, 2); // (e, y1)
    auto ord = [&](const char* n) { return static_cast<std::uint32_t>(f3.ordinal_of(f3.by_name(n))); };
    CHECK(ideal_member(Monomial({{ord("e"), 1}, {ord("z1"), 1}}), ideal, f3));
    CHECK(ideal_member(Monomial({{ord("y1"), 2}}), ideal, f3));
    CHECK_FALSE(ideal_member(Monomial({{ord("z0"), 1}, {ord("z1"), 1}}), ideal, f3));
    CHECK_FALSE(ideal_member(Monomial(), ideal, f3));
}

TEST_CASE("cone dimensions quotient out the earlier classes") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    // order 1: kill e; H_1 of the quotient is spanned by z0 at (1,2) only
    CHECK(cone_dim(f3, 1, Bidegree{1, 2}) == 1);
    CHECK(cone_dim(f3, 1, Bidegree{1, 3}) == 0); // z0*e is gone
    CHECK(cone_dim(f3, 0, Bidegree{1, 3}) == 1); // full algebra keeps it
    // cokernel of multiplication by the order-m class = next cone
    CHECK(stab_cokernel_dim(f3, 0, Bidegree{1, 3}) == cone_dim(f3, 1, Bidegree{1, 3}));
    CHECK(stab_cokernel_dim(f3, 0, Bidegree{1, 2}) == 1); // z0 is not e * anything
}

TEST_CASE("first-order range holds and is sharp") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    VerifyReport rep = verify_iso_range(f3, 0, 20, 2);
    CHECK(rep.pass());
    CHECK(rep.checked == 147);

    // widening the degree range by one must expose the boundary
    VerifyReport slack = verify_iso_range(f3, 0, 20, 2, 1);
    CHECK_FALSE(slack.pass());
    CHECK(slack.violations.size() == 7);
    CHECK(slack.violations.front().monomial == "z0");

    VerifyReport cover = verify_ideal_coverage(f3, 1, 20, 2);
    CHECK(cover.pass());
    CHECK(cover.checked == rep.checked); // same statement through the quotient
}

TEST_CASE("optimality witnesses pin the bounds") {
    GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
    auto w20 = optimality_witness(f2, 0, 40);
    REQUIRE(w20.has_value());
    CHECK(w20->source_k == 1);
    CHECK(w20->i == 1);
    CHECK(w20->target == Bidegree{1, 2});
    CHECK(w20->monomial == "x1");
    CHECK(w20->bound == Rational(1, 2));

    auto w21 = optimality_witness(f2, 1, 40);
    REQUIRE(w21.has_value());
    CHECK(w21->source_k == 2);
    CHECK(w21->i == 2);
    CHECK(w21->target == Bidegree{3, 4});
    CHECK(w21->monomial == "x2");
    CHECK(w21->bound == Rational(3, 2));

    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    auto w30 = optimality_witness(f3, 0, 40);
    REQUIRE(w30.has_value());
    CHECK(w30->source_k == 1);
    CHECK(w30->target == Bidegree{1, 2});
    CHECK(w30->monomial == "z0");
    CHECK(w30->bound == Rational(1, 3));

    auto w31 = optimality_witness(f3, 1, 40);
    REQUIRE(w31.has_value());
    CHECK(w31->source_k == 0);
    CHECK(w31->i == 1);
    CHECK(w31->target == Bidegree{5, 6});
    CHECK(w31->monomial == "z1");
    CHECK(w31->bound == Rational(-10, 9));

    // reports are well-formed JSON with the witness embedded
    auto j = witness_report(f3, 1, 40, w31);
    CHECK(j["witness"]["monomial"] == "z1");
    CHECK(j["witness"]["bound"] == "-10/9");
}

TEST_CASE("verification reports serialize violations") {
    GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
    VerifyReport slack = verify_iso_range(f2, 0, 12, 1, 1);
    CHECK_FALSE(slack.pass());
    auto j = slack.to_json();
    CHECK(j["violations"].size() == slack.violations.size());
    CHECK(j["checked"] == slack.checked);
    CHECK(j["statement"] == "iso-range");
}
