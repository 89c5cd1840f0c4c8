#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "confalg/generators.hpp"
#include "confalg/ops.hpp"

namespace confalg {

struct ExprContext {
    Prime p;
    int n;

    ExprContext(Prime p_, int n_) : p(p_), n(n_) {
        if (n_ < 2) throw std::invalid_argument("ambient dimension must be >= 2");
    }
    friend bool operator==(const ExprContext& a, const ExprContext& b) {
        return a.p == b.p && a.n == b.n;
    }
    friend bool operator!=(const ExprContext& a, const ExprContext& b) { return !(a == b); }
};

enum class ExprKind : std::uint8_t {
    Zero,    // the zero class; recorded bidegree is advisory
    Gen,     // named generator reference
    Scalar,  // c * child, c in [2, p-1]
    Sum,     // >= 2 homogeneous terms, like terms merged, sorted
    Product, // >= 2 factors, flattened, canonically sorted with Koszul signs
    Bracket, // Browder bracket [a, b]
    Xi,      // top operation
    Beta,    // Bockstein
    BetaXi,  // composite beta.xi (odd p)
    Zeta,    // beta.xi - ad^{p-1}(-)(beta -) (odd p)
    Q,       // Dyer-Lashof Q^s
    Ad,      // ad^i(operand)(argument), iterated bracketing
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    ExprKind kind;
    ExprContext ctx;
    Bidegree bidegree;

    Generator gen{};              // Gen
    std::uint32_t coeff = 1;      // Scalar
    long long s = 0;              // Q
    long long ad_pow = 0;         // Ad
    std::vector<ExprPtr> children;

    Expr(ExprKind k, ExprContext c, Bidegree b) : kind(k), ctx(c), bidegree(b) {}
};

/* Smart constructors. These enforce the definedness side conditions (top
 * operation parity, Q windows, zeta only at odd p) and keep every tree in a
 * normal form: zero absorbs, scalars fold mod p and never stack, sums are
 * flat/merged/sorted and homogeneous, products are flat and canonically
 * sorted with Koszul signs, and brackets, products, beta, and Q distribute
 * over sums (xi, betaxi, zeta do not: the top operation is not additive).
 * Degenerate values are taken at construction: beta on a degree-0 class is
 * zero, Q^s below its window bottom is zero or a p-th power. */
ExprPtr expr_zero(const ExprContext& ctx, const Bidegree& b);
ExprPtr expr_gen(const ExprContext& ctx, const Generator& g);
ExprPtr expr_gen(const ExprContext& ctx, const std::string& name);
ExprPtr expr_scalar(std::uint32_t c, const ExprPtr& x);
ExprPtr expr_sum(std::vector<ExprPtr> terms);
ExprPtr expr_product(std::vector<ExprPtr> factors);
ExprPtr expr_bracket(const ExprPtr& a, const ExprPtr& b);
ExprPtr expr_xi(const ExprPtr& x);
ExprPtr expr_beta(const ExprPtr& x);
ExprPtr expr_betaxi(const ExprPtr& x);
ExprPtr expr_zeta(const ExprPtr& x);
ExprPtr expr_q(long long s, const ExprPtr& x);
ExprPtr expr_ad(long long i, const ExprPtr& operand, const ExprPtr& argument);

bool is_zero(const ExprPtr& e);

/* Prefix text form, the exchange format for traces:
 *   0, gen(e), sc(2,E), sum(E,...), mul(E,...), br(E,E),
 *   xi(E), beta(E), bxi(E), zeta(E), q(s,E), ad(i,E,E)
 * Serialization of a normalized tree parses back to an identical tree. */
std::string serialize(const ExprPtr& e);
ExprPtr parse_expr(const std::string& text, const ExprContext& ctx);

// structural equality (zero nodes compare equal regardless of recorded bidegree)
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    return serialize(a) == serialize(b);
}

Bidegree infer_bidegree(const ExprPtr& e);

} // namespace confalg
