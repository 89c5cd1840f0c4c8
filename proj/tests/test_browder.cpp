#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "confalg/expr.hpp"
#include "confalg/rewrite.hpp"
#include "confalg/strategy.hpp"
#include "confalg/trace.hpp"

using namespace confalg;

namespace {
const ExprContext P2N2{Prime(2), 2};
const ExprContext P3N2{Prime(3), 2};
const ExprContext P3N3{Prime(3), 3};
const ExprContext P2N4{Prime(2), 4};

ExprPtr g(const ExprContext& ctx, const char* name) { return expr_gen(ctx, name); }
} // namespace

TEST_CASE("construction normalizes to a canonical form") {
    // scalars fold mod p and never stack
    ExprPtr z0 = g(P3N2, "z0");
    CHECK(serialize(expr_scalar(2, expr_scalar(2, z0))) == "gen(z0)"); // 4 = 1 mod 3
    CHECK(is_zero(expr_scalar(3, z0)));
    CHECK(serialize(expr_scalar(5, z0)) == "sc(2,gen(z0))");

    // sums merge like terms and sort
    ExprPtr s = expr_sum({z0, z0});
    CHECK(serialize(s) == "sc(2,gen(z0))");
    CHECK(is_zero(expr_sum({z0, expr_scalar(2, z0)})));
    ExprPtr mixed = expr_sum({expr_bracket(g(P3N2, "e"), g(P3N2, "e")), z0});
    CHECK(serialize(mixed) == "sum(br(gen(e),gen(e)),gen(z0))");

    // sums must be homogeneous
    CHECK_THROWS_AS(expr_sum({z0, g(P3N2, "y1")}), std::invalid_argument);

    // products sort with Koszul signs; odd squares die at odd p
    ExprPtr z1 = g(P3N2, "z1");
    CHECK(serialize(expr_product({z1, z0})) == "sc(2,mul(gen(z0),gen(z1)))");
    CHECK(serialize(expr_product({z0, z1})) == "mul(gen(z0),gen(z1))");
    CHECK(is_zero(expr_product({z1, z1})));
    CHECK_FALSE(is_zero(expr_product({g(P2N2, "x1"), g(P2N2, "x1")}))); // mod 2 squares live

    // zero absorbs everywhere
    ExprPtr zero = expr_zero(P3N2, Bidegree{1, 2});
    CHECK(is_zero(expr_product({z0, expr_sum({zero})})));
    CHECK(is_zero(expr_bracket(zero, z0)));
    CHECK(serialize(expr_sum({z0, zero})) == "gen(z0)");
}

TEST_CASE("operations respect their definedness windows") {
    // top operation parity at odd p: argument degree + n - 1 must be even
    CHECK_THROWS_AS(expr_xi(g(P3N2, "y1")), std::domain_error); // deg 4 odd sum
    CHECK(infer_bidegree(expr_xi(g(P3N2, "z1"))) == Bidegree{17, 18});
    CHECK_THROWS_AS(expr_betaxi(g(P2N2, "x1")), std::invalid_argument); // odd p only
    CHECK_THROWS_AS(expr_zeta(g(P2N2, "x1")), std::invalid_argument);

    // beta kills degree zero eagerly
    CHECK(is_zero(expr_beta(g(P3N2, "e"))));
    CHECK_FALSE(is_zero(expr_beta(g(P3N2, "z1"))));

    // Q degenerates at construction
    ExprPtr w1 = g(P2N4, "w1");
    CHECK(is_zero(expr_q(0, w1)));
    CHECK(serialize(expr_q(1, w1)) == "mul(gen(w1),gen(w1))");
    CHECK(serialize(expr_q(2, w1)) == "q(2,gen(w1))");
    CHECK_THROWS_AS(expr_q(4, w1), std::domain_error);

    // brackets and ad
    CHECK(infer_bidegree(expr_bracket(g(P3N2, "e"), g(P3N2, "e"))) == Bidegree{1, 2});
    ExprPtr ad = expr_ad(2, g(P3N2, "z0"), g(P3N2, "e"));
    CHECK(serialize(ad) == "ad(2,gen(z0),gen(e))");
    CHECK(serialize(expr_ad(0, g(P3N2, "z0"), g(P3N2, "e"))) == "gen(e)");
    CHECK_THROWS_AS(expr_ad(-1, g(P3N2, "z0"), g(P3N2, "e")), std::invalid_argument);
}

TEST_CASE("serialization round-trips") {
    std::vector<std::string> forms = {
        "gen(z0)",
        "sc(2,gen(z0))",
        "sum(br(gen(e),gen(e)),gen(z0))",
        "mul(gen(e),gen(e),gen(e))",
        "br(gen(y1),gen(e))",
        "zeta(gen(z1))",
        "bxi(gen(z0))",
        "beta(gen(z1))",
        "ad(2,gen(z0),beta(gen(z1)))",
    };
    for (const auto& f : forms) {
        CAPTURE(f);
        CHECK(serialize(parse_expr(f, P3N2)) == f);
    }
    CHECK(serialize(parse_expr("q(2,gen(w1))", P2N4)) == "q(2,gen(w1))");
    CHECK(is_zero(parse_expr("0", P3N2)));
    // parses pass through the smart constructors, so they normalize
    CHECK(serialize(parse_expr("sum(gen(z0),gen(z0))", P3N2)) == "sc(2,gen(z0))");
    CHECK_THROWS_AS(parse_expr("gen(bogus)", P3N2), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("sum(gen(z0)", P3N2), std::invalid_argument);
}

TEST_CASE("antisymmetry carries the printed coefficient") {
    // [z0,y1] -> (-1)^{1 + dx dy + (n-1)(dx+dy+1)} [y1,z0] = -[y1,z0] here
    ExprPtr b = expr_bracket(g(P3N2, "z0"), g(P3N2, "y1"));
    ExprPtr flipped = apply_rule(b, "antisym", {});
    CHECK(serialize(flipped) == "sc(2,br(gen(y1),gen(z0)))");
    // flipping twice restores the original expression
    ExprPtr back = apply_rule(flipped, "antisym", {0});
    CHECK(expr_equal(back, b));
}

TEST_CASE("derivation rule expands and contracts") {
    // [x, yz] = [x,y] z + (-1)^{dy(dx+n-1)} y [x,z]
    ExprPtr x = g(P3N2, "z0");
    ExprPtr yz = expr_product({g(P3N2, "y1"), g(P3N2, "z1")});
    ExprPtr b = expr_bracket(x, yz);
    ExprPtr expanded = apply_rule(b, "derivation", {});
    REQUIRE(expanded->kind == ExprKind::Sum);
    ExprPtr contracted = apply_rule(expanded, "derivation-contract", {});
    CHECK(expr_equal(contracted, b));
}

TEST_CASE("rule applications are positional and checked") {
    ExprPtr b = expr_bracket(g(P3N2, "z0"), g(P3N2, "y1"));
    CHECK(try_rule(b, "bracket-q", {}) == nullptr);      // no Q here
    CHECK_THROWS_AS(apply_rule(b, "bracket-q", {}), std::domain_error);
    CHECK_THROWS_AS(apply_rule(b, "no-such-rule", {}), std::invalid_argument);
    CHECK_THROWS_AS(subexpr_at(b, {5}), std::out_of_range);
    CHECK(serialize(subexpr_at(b, {1})) == "gen(y1)");
    CHECK(find_rule("antisym") != nullptr);
    CHECK(find_rule("flip") == nullptr);
    CHECK_FALSE(rule_table().empty());
}

TEST_CASE("bracket killing rules") {
    // [x, Q^s y] = 0, [x, zeta y] = 0
    ExprPtr qq = expr_bracket(g(P2N4, "e"), expr_q(2, g(P2N4, "w1")));
    CHECK(is_zero(apply_rule(qq, "bracket-q", {})));
    ExprPtr zz = expr_bracket(g(P3N2, "e"), expr_zeta(g(P3N2, "z1")));
    CHECK(is_zero(apply_rule(zz, "bracket-zeta", {})));
    // [x, xi y] = ad^p(y)(x)
    ExprPtr xi = expr_bracket(g(P3N2, "e"), expr_xi(g(P3N2, "z0")));
    CHECK(serialize(apply_rule(xi, "bracket-xi", {})) == "ad(3,gen(z0),gen(e))");
    // [e,e] = 0 when p = 2 or n odd, but not at odd p in even dimension
    CHECK(is_zero(apply_rule(expr_bracket(g(P2N2, "e"), g(P2N2, "e")), "bracket-point-geom", {})));
    CHECK(is_zero(apply_rule(expr_bracket(g(P3N3, "e"), g(P3N3, "e")), "bracket-point-geom", {})));
    CHECK(try_rule(expr_bracket(g(P3N2, "e"), g(P3N2, "e")), "bracket-point-geom", {}) == nullptr);
    // instead it contracts to the generator z0
    CHECK(serialize(apply_rule(expr_bracket(g(P3N2, "e"), g(P3N2, "e")), "contract-z0", {})) ==
          "gen(z0)");
}

TEST_CASE("point bracket strategy certifies the lemma cases") {
    struct Case {
        ExprContext ctx;
        ExprPtr z;
        Verdict verdict;
        std::size_t steps;
    };
    std::vector<Case> cases = {
        {P2N2, g(P2N2, "e"), Verdict::Vanishes, 1},
        {P2N2, g(P2N2, "x1"), Verdict::Vanishes, 4},
        {P2N2, g(P2N2, "x2"), Verdict::Vanishes, 7},
        {P2N2, g(P2N2, "x3"), Verdict::Vanishes, 10},
        {P3N2, g(P3N2, "z0"), Verdict::Vanishes, 3},
        {P3N2, g(P3N2, "z1"), Verdict::Vanishes, 7},
        {P3N2, g(P3N2, "z2"), Verdict::Vanishes, 13},
        {P3N2, g(P3N2, "y1"), Verdict::Vanishes, 6},
        {P3N2, g(P3N2, "y2"), Verdict::Vanishes, 29},
        {P3N3, g(P3N3, "e"), Verdict::Vanishes, 1},
        {P2N4, g(P2N4, "w1"), Verdict::Vanishes, 3},
        {P2N4, g(P2N4, "w2"), Verdict::Vanishes, 3},
        {P2N4, expr_q(2, g(P2N4, "w1")), Verdict::Vanishes, 2},
        {P3N2, expr_product({g(P3N2, "e"), g(P3N2, "e"), g(P3N2, "e")}), Verdict::Vanishes, 3},
        {P3N2, expr_xi(g(P3N2, "z1")), Verdict::Vanishes, 12},
        {P3N2, expr_zeta(g(P3N2, "z1")), Verdict::Vanishes, 2},
    };
    for (const auto& c : cases) {
        CAPTURE(serialize(c.z));
        ProofTrace t = check_point_bracket(c.z);
        CHECK(t.verdict == c.verdict);
        CHECK(t.steps.size() == c.steps);
        ReplayResult r = replay_trace(t.to_json_lines());
        CHECK(r.ok);
        CHECK(r.steps_checked == c.steps);
    }
}

TEST_CASE("the point self-bracket survives as a normal form at odd p, n = 2") {
    ProofTrace t = check_point_bracket(g(P3N2, "e"));
    CHECK(t.verdict == Verdict::NormalForm);
    REQUIRE(t.normal_form != nullptr);
    CHECK(serialize(t.normal_form) == "gen(z0)");
    CHECK(replay_trace(t.to_json_lines()).ok);
}

TEST_CASE("golden derivation for [z1, e]") {
    ProofTrace t = check_point_bracket(g(P3N2, "z1"));
    REQUIRE(t.steps.size() == 7);
    std::vector<std::string> rules;
    for (const auto& s : t.steps) rules.push_back(s.rule);
    CHECK(rules == std::vector<std::string>{"antisym", "def-z", "bracket-xi", "ad-inner", "antisym",
                                            "def-z0", "bracket-self-nested"});
    CHECK(t.steps[1].pos == Position{0, 1});
    CHECK(is_zero(t.final_expr()));
}

TEST_CASE("replay rejects tampering") {
    ProofTrace t = check_point_bracket(g(P3N2, "y1"));
    std::string lines = t.to_json_lines();
    REQUIRE(replay_trace(lines).ok);

    std::string bad_verdict = lines;
    auto vpos = bad_verdict.rfind("vanishes");
    REQUIRE(vpos != std::string::npos);
    bad_verdict.replace(vpos, 8, "normal-form");
    CHECK_FALSE(replay_trace(bad_verdict).ok);

    std::string bad_rule = lines;
    auto rpos = bad_rule.find("antisym");
    REQUIRE(rpos != std::string::npos);
    bad_rule.replace(rpos, 7, "def-z0w");
    CHECK_FALSE(replay_trace(bad_rule).ok);

    std::string bad_expr = lines;
    auto epos = bad_expr.find("br(gen(e),gen(y1))");
    REQUIRE(epos != std::string::npos);
    bad_expr.replace(epos, 18, "br(gen(e),gen(z1))");
    CHECK_FALSE(replay_trace(bad_expr).ok);
}

TEST_CASE("sign identities hold on sampled expressions") {
    for (auto [p, n] : {std::pair{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
        ExprContext ctx{Prime(p), n};
        auto samples = sample_expressions(ctx, 60, 7);
        REQUIRE(samples.size() == 60);
        SignCheckReport rep = verify_sign_identities(ctx, samples);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(rep.all_ok());
        CHECK(rep.antisym_involution == 60);
        CHECK(rep.antisym_coefficient == 60);
        CHECK(rep.jacobi_diagonal > 0);
    }
}
