#include "confalg/rewrite.hpp"

#include <stdexcept>

namespace confalg {

namespace {

bool is_gen(const ExprPtr& e, GenKind k) {
    return e->kind == ExprKind::Gen && e->gen.kind == k;
}

bool is_point(const ExprPtr& e) { return is_gen(e, GenKind::E); }

ExprPtr gen_ref(const ExprContext& ctx, const std::string& name) { return expr_gen(ctx, name); }

/* [x,y] = (-1)^{1+|x||y|+(n-1)(|x|+|y|+1)} [y,x] */
ExprPtr rw_antisym(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& x = e->children[0];
    const ExprPtr& y = e->children[1];
    long long dx = x->bidegree.deg, dy = y->bidegree.deg, n1 = e->ctx.n - 1;
    std::uint32_t sign = fp_sign(1 + dx * dy + n1 * (dx + dy + 1), e->ctx.p);
    return expr_scalar(sign, expr_bracket(y, x));
}

/* solved form of the printed Jacobi identity
 * (-1)^{(|x|+n-1)(|z|+n-1)}[x,[y,z]] + (-1)^{(|y|+n-1)(|x|+n-1)}[y,[z,x]]
 *                                    + (-1)^{(|z|+n-1)(|y|+n-1)}[z,[x,y]] = 0 */
ExprPtr rw_jacobi_rotate(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& x = e->children[0];
    const ExprPtr& inner = e->children[1];
    if (inner->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& y = inner->children[0];
    const ExprPtr& z = inner->children[1];
    long long n1 = e->ctx.n - 1;
    long long ax = x->bidegree.deg + n1, ay = y->bidegree.deg + n1, az = z->bidegree.deg + n1;
    std::uint32_t c1 = fp_sign(1 + ax * az + ay * ax, e->ctx.p);
    std::uint32_t c2 = fp_sign(1 + ax * az + az * ay, e->ctx.p);
    return expr_sum({expr_scalar(c1, expr_bracket(y, expr_bracket(z, x))),
                     expr_scalar(c2, expr_bracket(z, expr_bracket(x, y)))});
}

/* [x,yz] = [x,y]z + (-1)^{|y|(|x|+n-1)} y[x,z] */
ExprPtr rw_derivation(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& x = e->children[0];
    const ExprPtr& prod = e->children[1];
    if (prod->kind != ExprKind::Product) return nullptr;
    const ExprPtr& y = prod->children[0];
    ExprPtr z = prod->children.size() == 2
                    ? prod->children[1]
                    : expr_product({prod->children.begin() + 1, prod->children.end()});
    std::uint32_t sign =
        fp_sign(y->bidegree.deg * (x->bidegree.deg + e->ctx.n - 1), e->ctx.p);
    return expr_sum({expr_product({expr_bracket(x, y), z}),
                     expr_scalar(sign, expr_product({y, expr_bracket(x, z)}))});
}

/* inverse of the derivation expansion, matched by re-expanding a candidate */
ExprPtr rw_derivation_contract(const ExprPtr& e) {
    std::vector<ExprPtr> terms;
    if (e->kind == ExprKind::Sum)
        terms = e->children;
    else
        terms = {e};
    for (const auto& raw : terms) {
        ExprPtr t = raw->kind == ExprKind::Scalar ? raw->children[0] : raw;
        if (t->kind != ExprKind::Product) continue;
        for (std::size_t i = 0; i < t->children.size(); ++i) {
            const ExprPtr& f = t->children[i];
            if (f->kind != ExprKind::Bracket) continue;
            std::vector<ExprPtr> rest;
            for (std::size_t j = 0; j < t->children.size(); ++j)
                if (j != i) rest.push_back(t->children[j]);
            if (rest.empty()) continue;
            rest.push_back(f->children[1]);
            ExprPtr candidate = expr_bracket(f->children[0], expr_product(std::move(rest)));
            // normalization may have pulled a sign out of the rebuilt product
            ExprPtr core = candidate->kind == ExprKind::Scalar ? candidate->children[0] : candidate;
            if (core->kind != ExprKind::Bracket) continue;
            ExprPtr expanded = rw_derivation(core);
            if (!expanded) continue;
            if (candidate->kind == ExprKind::Scalar)
                expanded = expr_scalar(candidate->coeff, expanded);
            if (expr_equal(expanded, e)) return candidate;
        }
    }
    return nullptr;
}

/* [x, Q^s y] = 0 */
ExprPtr rw_bracket_q(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket || e->children[1]->kind != ExprKind::Q) return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* [x, zeta y] = 0 */
ExprPtr rw_bracket_zeta(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket || e->children[1]->kind != ExprKind::Zeta) return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* [x, xi y] = ad^p(y)(x); at p=2 that is [y,[y,x]] */
ExprPtr rw_bracket_xi(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket || e->children[1]->kind != ExprKind::Xi) return nullptr;
    const ExprPtr& x = e->children[0];
    const ExprPtr& y = e->children[1]->children[0];
    if (e->ctx.p.is_two()) return expr_bracket(y, expr_bracket(y, x));
    return expr_ad(e->ctx.p.value(), y, x);
}

/* beta[x,y] = [beta x, y] + (-1)^{n-1+|x|} [x, beta y] */
ExprPtr rw_bockstein_bracket(const ExprPtr& e) {
    if (e->kind != ExprKind::Beta || e->children[0]->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& x = e->children[0]->children[0];
    const ExprPtr& y = e->children[0]->children[1];
    std::uint32_t sign = fp_sign(e->ctx.n - 1 + x->bidegree.deg, e->ctx.p);
    return expr_sum({expr_bracket(expr_beta(x), y),
                     expr_scalar(sign, expr_bracket(x, expr_beta(y)))});
}

/* [x,x] = 0 over F_2 */
ExprPtr rw_bracket_self(const ExprPtr& e) {
    if (!e->ctx.p.is_two() || e->kind != ExprKind::Bracket) return nullptr;
    if (!expr_equal(e->children[0], e->children[1])) return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* [x,[x,x]] = 0 at odd p */
ExprPtr rw_bracket_self_nested(const ExprPtr& e) {
    if (e->ctx.p.is_two() || e->kind != ExprKind::Bracket) return nullptr;
    const ExprPtr& x = e->children[0];
    const ExprPtr& inner = e->children[1];
    if (inner->kind != ExprKind::Bracket) return nullptr;
    if (!expr_equal(x, inner->children[0]) || !expr_equal(x, inner->children[1]))
        return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* [e,e] = 0 when n is odd or p = 2: the bracket of the point class with
 * itself is twice a top class of real projective (n-1)-space */
ExprPtr rw_bracket_point_geom(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket) return nullptr;
    if (!is_point(e->children[0]) || !is_point(e->children[1])) return nullptr;
    if (e->ctx.n % 2 == 0 && e->ctx.p.odd()) return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* x_j = xi x_{j-1}, x_1 = xi e */
ExprPtr rw_def_x(const ExprPtr& e) {
    if (!is_gen(e, GenKind::X)) return nullptr;
    int j = e->gen.index;
    ExprPtr prev = j == 1 ? gen_ref(e->ctx, "e") : gen_ref(e->ctx, "x" + std::to_string(j - 1));
    return expr_xi(prev);
}

/* z_0 = [e,e] */
ExprPtr rw_def_z0(const ExprPtr& e) {
    if (!is_gen(e, GenKind::Z) || e->gen.index != 0) return nullptr;
    ExprPtr pt = gen_ref(e->ctx, "e");
    return expr_bracket(pt, pt);
}

/* the same definition read backwards, for normal-form reporting */
ExprPtr rw_contract_z0(const ExprPtr& e) {
    if (e->kind != ExprKind::Bracket) return nullptr;
    if (!is_point(e->children[0]) || !is_point(e->children[1])) return nullptr;
    if (e->ctx.p.is_two() || e->ctx.n != 2) return nullptr;
    return gen_ref(e->ctx, "z0");
}

/* z_j = xi z_{j-1} for j >= 1 */
ExprPtr rw_def_z(const ExprPtr& e) {
    if (!is_gen(e, GenKind::Z) || e->gen.index < 1) return nullptr;
    return expr_xi(gen_ref(e->ctx, "z" + std::to_string(e->gen.index - 1)));
}

/* y_j = beta xi z_{j-1} for j >= 1 */
ExprPtr rw_def_y(const ExprPtr& e) {
    if (!is_gen(e, GenKind::Y) || e->gen.index < 1) return nullptr;
    return expr_betaxi(gen_ref(e->ctx, "z" + std::to_string(e->gen.index - 1)));
}

/* w_1 = Q^1 e, w_j = Q^{2^{j-1}} w_{j-1} */
ExprPtr rw_def_omega(const ExprPtr& e) {
    if (!is_gen(e, GenKind::W)) return nullptr;
    int j = e->gen.index;
    if (j == 1) return expr_q(1, gen_ref(e->ctx, "e"));
    if (j - 1 >= 62) throw std::overflow_error("omega index too large");
    return expr_q(1LL << (j - 1), gen_ref(e->ctx, "w" + std::to_string(j - 1)));
}

/* beta z_j = y_j for j >= 1 */
ExprPtr rw_beta_gen_z(const ExprPtr& e) {
    if (e->kind != ExprKind::Beta) return nullptr;
    const ExprPtr& c = e->children[0];
    if (!is_gen(c, GenKind::Z) || c->gen.index < 1) return nullptr;
    return gen_ref(e->ctx, "y" + std::to_string(c->gen.index));
}

/* beta on a degree-0 class is zero; the constructors take this eagerly, so
 * the pattern only arises when replaying hand-written traces */
ExprPtr rw_beta_deg0(const ExprPtr& e) {
    if (e->kind != ExprKind::Beta || e->children[0]->bidegree.deg != 0) return nullptr;
    return expr_zero(e->ctx, e->bidegree);
}

/* beta xi x, unfolded to the composite */
ExprPtr rw_betaxi_compose(const ExprPtr& e) {
    if (e->kind != ExprKind::BetaXi) return nullptr;
    return expr_beta(expr_xi(e->children[0]));
}

/* zeta = beta xi - ad^{p-1}(-)(beta -), read as beta xi x = zeta x + ad^{p-1}(x)(beta x) */
ExprPtr rw_betaxi_via_zeta(const ExprPtr& e) {
    if (e->kind != ExprKind::BetaXi) return nullptr;
    const ExprPtr& x = e->children[0];
    return expr_sum(
        {expr_zeta(x), expr_ad(e->ctx.p.value() - 1, x, expr_beta(x))});
}

/* the same definition read forwards */
ExprPtr rw_zeta_def(const ExprPtr& e) {
    if (e->kind != ExprKind::Zeta) return nullptr;
    const ExprPtr& x = e->children[0];
    std::uint32_t minus = fp_neg(1u, e->ctx.p);
    return expr_sum({expr_betaxi(x),
                     expr_scalar(minus, expr_ad(e->ctx.p.value() - 1, x, expr_beta(x)))});
}

/* ad^i(x)(y) = [x, ad^{i-1}(x)(y)] */
ExprPtr rw_ad_expand(const ExprPtr& e) {
    if (e->kind != ExprKind::Ad) return nullptr;
    return expr_bracket(e->children[0], expr_ad(e->ad_pow - 1, e->children[0], e->children[1]));
}

/* ad^i(x)(y) = ad^{i-1}(x)([x,y]), peeling from the inside */
ExprPtr rw_ad_inner(const ExprPtr& e) {
    if (e->kind != ExprKind::Ad) return nullptr;
    return expr_ad(e->ad_pow - 1, e->children[0], expr_bracket(e->children[0], e->children[1]));
}

} // namespace

const std::vector<RewriteRule>& rule_table() {
    static const std::vector<RewriteRule> table = {
        {"antisym", "[x,y] = (-1)^{1+|x||y|+(n-1)(|x|+|y|+1)} [y,x]", rw_antisym},
        {"jacobi-rotate",
         "(-1)^{(|x|+n-1)(|z|+n-1)}[x,[y,z]] + (-1)^{(|y|+n-1)(|x|+n-1)}[y,[z,x]] + "
         "(-1)^{(|z|+n-1)(|y|+n-1)}[z,[x,y]] = 0, solved for the first term",
         rw_jacobi_rotate},
        {"derivation", "[x,yz] = [x,y]z + (-1)^{|y|(|x|+n-1)} y[x,z]", rw_derivation},
        {"derivation-contract", "inverse of derivation, verified by re-expansion",
         rw_derivation_contract},
        {"bracket-q", "[x, Q^s y] = 0", rw_bracket_q},
        {"bracket-zeta", "[x, zeta y] = 0", rw_bracket_zeta},
        {"bracket-xi", "[x, xi y] = ad^p(y)(x)", rw_bracket_xi},
        {"bockstein-bracket", "beta[x,y] = [beta x, y] + (-1)^{n-1+|x|} [x, beta y]",
         rw_bockstein_bracket},
        {"bracket-self", "[x,x] = 0 over F_2", rw_bracket_self},
        {"bracket-self-nested", "[x,[x,x]] = 0 at odd p", rw_bracket_self_nested},
        {"bracket-point-geom", "[e,e] = 0 when n is odd or p = 2", rw_bracket_point_geom},
        {"def-x", "x_1 = xi e, x_j = xi x_{j-1}", rw_def_x},
        {"def-z0", "z_0 = [e,e]", rw_def_z0},
        {"contract-z0", "[e,e] = z_0 (n = 2, odd p)", rw_contract_z0},
        {"def-z", "z_j = xi z_{j-1}", rw_def_z},
        {"def-y", "y_j = beta xi z_{j-1}", rw_def_y},
        {"def-omega", "w_1 = Q^1 e, w_j = Q^{2^{j-1}} w_{j-1}", rw_def_omega},
        {"beta-gen-z", "beta z_j = y_j", rw_beta_gen_z},
        {"beta-deg0", "beta vanishes on degree-0 classes", rw_beta_deg0},
        {"betaxi-compose", "beta xi x, as the composite", rw_betaxi_compose},
        {"betaxi-via-zeta", "beta xi x = zeta x + ad^{p-1}(x)(beta x)", rw_betaxi_via_zeta},
        {"zeta-def", "zeta x = beta xi x - ad^{p-1}(x)(beta x)", rw_zeta_def},
        {"ad-expand", "ad^i(x)(y) = [x, ad^{i-1}(x)(y)]", rw_ad_expand},
        {"ad-inner", "ad^i(x)(y) = ad^{i-1}(x)([x,y])", rw_ad_inner},
    };
    return table;
}

const RewriteRule* find_rule(const std::string& name) {
    for (const auto& r : rule_table())
        if (r.name == name) return &r;
    return nullptr;
}

ExprPtr subexpr_at(const ExprPtr& root, const Position& pos) {
    ExprPtr cur = root;
    for (int idx : pos) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= cur->children.size())
            throw std::out_of_range("position leaves the expression tree");
        cur = cur->children[static_cast<std::size_t>(idx)];
    }
    return cur;
}

namespace {

ExprPtr rebuild_with(const ExprPtr& node, std::size_t idx, const ExprPtr& child) {
    std::vector<ExprPtr> kids = node->children;
    kids.at(idx) = child;
    switch (node->kind) {
    case ExprKind::Scalar: return expr_scalar(node->coeff, kids[0]);
    case ExprKind::Sum: return expr_sum(std::move(kids));
    case ExprKind::Product: return expr_product(std::move(kids));
    case ExprKind::Bracket: return expr_bracket(kids[0], kids[1]);
    case ExprKind::Xi: return expr_xi(kids[0]);
    case ExprKind::Beta: return expr_beta(kids[0]);
    case ExprKind::BetaXi: return expr_betaxi(kids[0]);
    case ExprKind::Zeta: return expr_zeta(kids[0]);
    case ExprKind::Q: return expr_q(node->s, kids[0]);
    case ExprKind::Ad: return expr_ad(node->ad_pow, kids[0], kids[1]);
    default: throw std::logic_error("node kind has no children to rebuild");
    }
}

ExprPtr rewrite_at(const ExprPtr& node, const Position& pos, std::size_t depth,
                   const RewriteRule& rule) {
    if (depth == pos.size()) {
        ExprPtr out = rule.apply(node);
        if (!out) return nullptr;
        return out;
    }
    int idx = pos[depth];
    if (idx < 0 || static_cast<std::size_t>(idx) >= node->children.size())
        throw std::out_of_range("position leaves the expression tree");
    ExprPtr sub = rewrite_at(node->children[static_cast<std::size_t>(idx)], pos, depth + 1, rule);
    if (!sub) return nullptr;
    return rebuild_with(node, static_cast<std::size_t>(idx), sub);
}

} // namespace

ExprPtr try_rule(const ExprPtr& root, const std::string& rule_name, const Position& pos) {
    const RewriteRule* r = find_rule(rule_name);
    if (!r) throw std::invalid_argument("unknown rewrite rule: " + rule_name);
    return rewrite_at(root, pos, 0, *r);
}

ExprPtr apply_rule(const ExprPtr& root, const std::string& rule_name, const Position& pos) {
    ExprPtr out = try_rule(root, rule_name, pos);
    if (!out)
        throw std::domain_error("rule " + rule_name + " does not match at the given position");
    return out;
}

} // namespace confalg
