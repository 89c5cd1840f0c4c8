#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <variant>

#include "confalg/generators.hpp"
#include "confalg/monomial.hpp"
#include "confalg/ops.hpp"

using namespace confalg;

TEST_CASE("generator bidegrees per family") {
    GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
    CHECK(f2.family() == Family::SurfaceF2);
    CHECK(f2.by_name("e").bidegree == Bidegree{0, 1});
    CHECK(f2.by_name("x1").bidegree == Bidegree{1, 2});
    CHECK(f2.by_name("x2").bidegree == Bidegree{3, 4});
    CHECK(f2.by_name("x3").bidegree == Bidegree{7, 8});
    CHECK_FALSE(f2.by_name("x3").exterior); // everything is polynomial mod 2

    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    CHECK(f3.family() == Family::SurfaceOddP);
    CHECK(f3.by_name("z0").bidegree == Bidegree{1, 2});
    CHECK(f3.by_name("z1").bidegree == Bidegree{5, 6});
    CHECK(f3.by_name("z2").bidegree == Bidegree{17, 18});
    CHECK(f3.by_name("y1").bidegree == Bidegree{4, 6});
    CHECK(f3.by_name("y2").bidegree == Bidegree{16, 18});
    CHECK(f3.by_name("z1").exterior); // odd degree at odd p
    CHECK_FALSE(f3.by_name("y1").exterior);
    CHECK_FALSE(f3.by_name("e").exterior);

    GeneratorSet h2 = GeneratorSet::for_params(Prime(2), 4);
    CHECK(h2.family() == Family::HigherDimF2);
    CHECK(h2.by_name("w1").bidegree == Bidegree{1, 2});
    CHECK(h2.by_name("w3").bidegree == Bidegree{7, 8});

    CHECK_THROWS_AS(GeneratorSet::for_params(Prime(3), 4), std::invalid_argument);
}

TEST_CASE("name parsing rejects classes outside the family") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    CHECK_THROWS_AS(f3.by_name("x1"), std::invalid_argument);
    CHECK_THROWS_AS(f3.by_name("w1"), std::invalid_argument);
    CHECK_THROWS_AS(f3.by_name("z-1"), std::invalid_argument);
    CHECK_THROWS_AS(f3.by_name("y0"), std::invalid_argument); // the y ladder starts at 1
    CHECK_THROWS_AS(f3.by_name(""), std::invalid_argument);
    GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
    CHECK_THROWS_AS(f2.by_name("z0"), std::invalid_argument);
    CHECK_THROWS_AS(f2.by_name("x0"), std::invalid_argument); // x_0 is not a generator
}

TEST_CASE("canonical order and ordinals round-trip") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    auto gens = f3.up_to_par(18);
    // order is by (particle count, name, index): e, z0, y1, z1, y2, z2
    REQUIRE(gens.size() == 6);
    CHECK(gens[0].name() == "e");
    CHECK(gens[1].name() == "z0");
    CHECK(gens[2].name() == "y1");
    CHECK(gens[3].name() == "z1");
    CHECK(gens[4].name() == "y2");
    CHECK(gens[5].name() == "z2");
    for (std::size_t t = 0; t < gens.size(); ++t) {
        CHECK(f3.ordinal_of(gens[t]) == t);
        CHECK(f3.generator(t) == gens[t]);
    }
    CHECK(f3.count_up_to_par(18) == 6);
    CHECK(f3.count_up_to_par(5) == 2); // e, z0
}

TEST_CASE("xi targets and parity window") {
    // (q,k) -> (pq + (n-1)(p-1), pk)
    CHECK(apply_xi(Bidegree{0, 1}, Prime(2), 2) == Bidegree{1, 2});   // x1 from e
    CHECK(apply_xi(Bidegree{1, 2}, Prime(2), 2) == Bidegree{3, 4});   // x2 from x1
    CHECK(apply_xi(Bidegree{1, 2}, Prime(3), 2) == Bidegree{5, 6});   // z1 from z0
    CHECK(apply_xi(Bidegree{5, 6}, Prime(3), 2) == Bidegree{17, 18}); // z2 from z1
    // odd p wants q + n - 1 even
    CHECK_FALSE(xi_defined(Bidegree{0, 1}, Prime(3), 2));
    CHECK_THROWS_AS(apply_xi(Bidegree{0, 1}, Prime(3), 2), std::domain_error);
    CHECK(xi_defined(Bidegree{4, 6}, Prime(3), 3));
    CHECK_FALSE(xi_defined(Bidegree{4, 6}, Prime(3), 2));
    CHECK(xi_defined(Bidegree{4, 6}, Prime(2), 2)); // no parity condition mod 2
}

TEST_CASE("Q windows, degeneracies, and domain errors") {
    Prime p2(2), p3(3);
    // p = 2: target (q+s, 2k) for q <= s < q + n - 1
    CHECK(std::get<Bidegree>(apply_q(2, Bidegree{1, 2}, p2, 4)) == Bidegree{3, 4});
    CHECK(std::holds_alternative<QZero>(apply_q(0, Bidegree{1, 2}, p2, 4)));
    CHECK(std::holds_alternative<QSquare>(apply_q(1, Bidegree{1, 2}, p2, 4)));
    CHECK_THROWS_AS(apply_q(4, Bidegree{1, 2}, p2, 4), std::domain_error); // top of window
    CHECK_THROWS_AS(apply_q(1, Bidegree{0, 1}, p2, 2), std::domain_error); // empty window at n=2
    CHECK(q_admissible(3, Bidegree{1, 2}, p2, 4));
    CHECK_FALSE(q_admissible(4, Bidegree{1, 2}, p2, 4));
    // p odd: target (q + 2s(p-1), pk) for 2s - q < n - 1
    CHECK(std::get<Bidegree>(apply_q(1, Bidegree{0, 1}, p3, 4)) == Bidegree{4, 3});
    CHECK(std::holds_alternative<QSquare>(apply_q(1, Bidegree{2, 2}, p3, 4)));
    CHECK(std::holds_alternative<QZero>(apply_q(0, Bidegree{2, 2}, p3, 4)));
    CHECK_THROWS_AS(apply_q(2, Bidegree{0, 1}, p3, 4), std::domain_error);
}

TEST_CASE("bracket bidegree") {
    CHECK(bracket_bidegree(Bidegree{0, 1}, Bidegree{0, 1}, 2) == Bidegree{1, 2});
    CHECK(bracket_bidegree(Bidegree{0, 1}, Bidegree{0, 1}, 5) == Bidegree{4, 2});
    CHECK(bracket_bidegree(Bidegree{4, 6}, Bidegree{1, 2}, 2) == Bidegree{6, 8});
}

TEST_CASE("monomial product carries Koszul signs") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    auto ord = [&](const char* name) { return static_cast<std::uint32_t>(f3.ordinal_of(f3.by_name(name))); };
    Monomial z0({{ord("z0"), 1}});
    Monomial z1({{ord("z1"), 1}});
    Monomial y1({{ord("y1"), 2}});

    Term t = multiply(z1, z0, f3); // odd past odd: one transposition
    CHECK(t.coeff == 2);
    CHECK(t.mono == Monomial({{ord("z0"), 1}, {ord("z1"), 1}}));

    Term sq = multiply(z1, z1, f3); // exterior square dies
    CHECK(sq.coeff == 0);

    Term even = multiply(y1, z0, f3); // even generators commute freely
    CHECK(even.coeff == 1);
    CHECK(bidegree_of(even.mono, f3) == Bidegree{9, 14});

    CHECK(multiply(Monomial(), z0, f3).coeff == 1); // unit
    CHECK_THROWS_AS(validate(Monomial({{ord("z0"), 2}}), f3), std::invalid_argument);
}

TEST_CASE("polynomials collect like terms mod p") {
    GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
    auto ord = [&](const char* name) { return static_cast<std::uint32_t>(f3.ordinal_of(f3.by_name(name))); };
    Monomial z0({{ord("z0"), 1}});
    Prime p3(3);
    Polynomial a = Polynomial::term(2, z0, p3);
    Polynomial b = Polynomial::term(1, z0, p3);
    CHECK(a.add(b, p3).is_zero()); // 2 + 1 = 0 mod 3
    Polynomial c = a.scale(2, p3); // 4 = 1 mod 3
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms().begin()->second == 1);
    CHECK(c.str(f3) == "z0");
}
