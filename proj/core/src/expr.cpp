#include "confalg/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace confalg {

namespace {

void check_ctx(const ExprContext& a, const ExprContext& b) {
    if (a != b) throw std::invalid_argument("expression mixes ambient parameters");
}

std::shared_ptr<Expr> make(ExprKind k, const ExprContext& ctx, const Bidegree& b) {
    return std::make_shared<Expr>(k, ctx, b);
}

// strips one scalar wrapper, returning (coefficient, core)
std::pair<std::uint32_t, ExprPtr> split_scalar(const ExprPtr& e) {
    if (e->kind == ExprKind::Scalar) return {e->coeff, e->children[0]};
    return {1u, e};
}

Generator point_generator() {
    Generator g;
    g.kind = GenKind::E;
    g.index = 0;
    g.bidegree = Bidegree(0, 1);
    g.exterior = false;
    return g;
}

} // namespace

ExprPtr expr_zero(const ExprContext& ctx, const Bidegree& b) {
    return make(ExprKind::Zero, ctx, b);
}

bool is_zero(const ExprPtr& e) { return e->kind == ExprKind::Zero; }

ExprPtr expr_gen(const ExprContext& ctx, const Generator& g) {
    if (g.kind == GenKind::E) {
        auto node = make(ExprKind::Gen, ctx, Bidegree(0, 1));
        node->gen = point_generator();
        return node;
    }
    // route through the family so the bidegree and exterior flag are canonical
    GeneratorSet gs = GeneratorSet::for_params(ctx.p, ctx.n);
    Generator canon = gs.by_name(g.name());
    auto node = make(ExprKind::Gen, ctx, canon.bidegree);
    node->gen = canon;
    return node;
}

ExprPtr expr_gen(const ExprContext& ctx, const std::string& name) {
    if (name == "e") return expr_gen(ctx, point_generator());
    GeneratorSet gs = GeneratorSet::for_params(ctx.p, ctx.n);
    return expr_gen(ctx, gs.by_name(name));
}

ExprPtr expr_scalar(std::uint32_t c, const ExprPtr& x) {
    const Prime p = x->ctx.p;
    std::uint32_t r = fp_reduce(static_cast<long long>(c), p);
    if (r == 0 || is_zero(x)) return expr_zero(x->ctx, x->bidegree);
    if (x->kind == ExprKind::Scalar) return expr_scalar(fp_mul(r, x->coeff, p), x->children[0]);
    if (x->kind == ExprKind::Sum) {
        std::vector<ExprPtr> scaled;
        scaled.reserve(x->children.size());
        for (const auto& t : x->children) scaled.push_back(expr_scalar(r, t));
        return expr_sum(std::move(scaled));
    }
    if (r == 1) return x;
    auto node = make(ExprKind::Scalar, x->ctx, x->bidegree);
    node->coeff = r;
    node->children = {x};
    return node;
}

ExprPtr expr_sum(std::vector<ExprPtr> terms) {
    if (terms.empty()) throw std::invalid_argument("empty sum");
    const ExprContext ctx = terms.front()->ctx;
    const Bidegree b = terms.front()->bidegree;

    // flatten nested sums, drop zeros (their recorded bidegree is advisory)
    std::vector<ExprPtr> flat;
    for (const auto& t : terms) {
        check_ctx(ctx, t->ctx);
        if (is_zero(t)) continue;
        if (t->kind == ExprKind::Sum) {
            for (const auto& u : t->children) flat.push_back(u);
        } else {
            flat.push_back(t);
        }
    }
    if (flat.empty()) return expr_zero(ctx, b);
    for (const auto& t : flat)
        if (t->bidegree != flat.front()->bidegree)
            throw std::invalid_argument("sum is not homogeneous: " + t->bidegree.str() +
                                        " vs " + flat.front()->bidegree.str());

    // collect like terms, keyed by the scalar-free core
    std::map<std::string, std::pair<std::uint32_t, ExprPtr>> buckets;
    for (const auto& t : flat) {
        auto [c, core] = split_scalar(t);
        std::string key = serialize(core);
        auto it = buckets.find(key);
        if (it == buckets.end())
            buckets.emplace(key, std::make_pair(c, core));
        else
            it->second.first = fp_add(it->second.first, c, ctx.p);
    }

    std::vector<ExprPtr> out;
    for (const auto& [key, entry] : buckets) {
        (void)key;
        if (entry.first == 0) continue;
        out.push_back(expr_scalar(entry.first, entry.second));
    }
    if (out.empty()) return expr_zero(ctx, flat.front()->bidegree);
    if (out.size() == 1) return out.front();
    auto node = make(ExprKind::Sum, ctx, flat.front()->bidegree);
    node->children = std::move(out);
    return node;
}

ExprPtr expr_product(std::vector<ExprPtr> factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    const ExprContext ctx = factors.front()->ctx;
    Bidegree total(0, 0);
    for (const auto& f : factors) {
        check_ctx(ctx, f->ctx);
        total = total + f->bidegree;
    }
    for (const auto& f : factors)
        if (is_zero(f)) return expr_zero(ctx, total);

    // pull scalars, flatten nested products
    std::uint32_t coeff = 1;
    std::vector<ExprPtr> flat;
    for (const auto& f : factors) {
        auto [c, core] = split_scalar(f);
        coeff = fp_mul(coeff, c, ctx.p);
        if (core->kind == ExprKind::Product) {
            for (const auto& g : core->children) flat.push_back(g);
        } else {
            flat.push_back(core);
        }
    }

    // distribute over the first sum factor, if any
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat[i]->kind != ExprKind::Sum) continue;
        std::vector<ExprPtr> expanded;
        for (const auto& term : flat[i]->children) {
            std::vector<ExprPtr> copy = flat;
            copy[i] = term;
            expanded.push_back(expr_product(std::move(copy)));
        }
        return expr_scalar(coeff, expr_sum(std::move(expanded)));
    }

    if (flat.size() == 1) return expr_scalar(coeff, flat.front());

    // canonical order with the Koszul sign: swapping two odd-degree factors
    // negates, and an odd-degree factor repeats only in characteristic 2
    std::vector<std::string> keys;
    keys.reserve(flat.size());
    for (const auto& f : flat) keys.push_back(serialize(f));

    long long odd_inversions = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        for (std::size_t j = i + 1; j < flat.size(); ++j) {
            if (keys[i] > keys[j] && flat[i]->bidegree.deg % 2 != 0 &&
                flat[j]->bidegree.deg % 2 != 0)
                ++odd_inversions;
        }
    }
    if (ctx.p.odd()) {
        for (std::size_t i = 0; i < flat.size(); ++i)
            for (std::size_t j = i + 1; j < flat.size(); ++j)
                if (flat[i]->bidegree.deg % 2 != 0 && keys[i] == keys[j])
                    return expr_zero(ctx, total);
    }

    std::vector<std::size_t> order(flat.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    auto node = make(ExprKind::Product, ctx, total);
    for (std::size_t i : order) node->children.push_back(flat[i]);
    coeff = fp_mul(coeff, fp_sign(odd_inversions, ctx.p), ctx.p);
    return expr_scalar(coeff, node);
}

ExprPtr expr_bracket(const ExprPtr& a, const ExprPtr& b) {
    check_ctx(a->ctx, b->ctx);
    const ExprContext ctx = a->ctx;
    Bidegree target = bracket_bidegree(a->bidegree, b->bidegree, ctx.n);
    if (is_zero(a) || is_zero(b)) return expr_zero(ctx, target);
    auto [ca, corea] = split_scalar(a);
    auto [cb, coreb] = split_scalar(b);
    std::uint32_t c = fp_mul(ca, cb, ctx.p);
    if (c != 1 || corea != a || coreb != b)
        return expr_scalar(c, expr_bracket(corea, coreb));
    if (a->kind == ExprKind::Sum) {
        std::vector<ExprPtr> terms;
        for (const auto& t : a->children) terms.push_back(expr_bracket(t, b));
        return expr_sum(std::move(terms));
    }
    if (b->kind == ExprKind::Sum) {
        std::vector<ExprPtr> terms;
        for (const auto& t : b->children) terms.push_back(expr_bracket(a, t));
        return expr_sum(std::move(terms));
    }
    auto node = make(ExprKind::Bracket, ctx, target);
    node->children = {a, b};
    return node;
}

ExprPtr expr_xi(const ExprPtr& x) {
    if (is_zero(x)) return x;
    Bidegree target = apply_xi(x->bidegree, x->ctx.p, x->ctx.n);
    auto node = make(ExprKind::Xi, x->ctx, target);
    node->children = {x};
    return node;
}

ExprPtr expr_beta(const ExprPtr& x) {
    const ExprContext ctx = x->ctx;
    if (x->bidegree.deg == 0) // Bockstein of a degree-0 class is zero
        return expr_zero(ctx, Bidegree(0, x->bidegree.par));
    Bidegree target(x->bidegree.deg - 1, x->bidegree.par);
    if (is_zero(x)) return expr_zero(ctx, target);
    if (x->kind == ExprKind::Scalar) return expr_scalar(x->coeff, expr_beta(x->children[0]));
    if (x->kind == ExprKind::Sum) {
        std::vector<ExprPtr> terms;
        for (const auto& t : x->children) terms.push_back(expr_beta(t));
        return expr_sum(std::move(terms));
    }
    auto node = make(ExprKind::Beta, ctx, target);
    node->children = {x};
    return node;
}

ExprPtr expr_betaxi(const ExprPtr& x) {
    if (x->ctx.p.is_two())
        throw std::invalid_argument("beta.xi requires odd p");
    if (is_zero(x)) return x;
    Bidegree xi_target = apply_xi(x->bidegree, x->ctx.p, x->ctx.n);
    auto node = make(ExprKind::BetaXi, x->ctx, Bidegree(xi_target.deg - 1, xi_target.par));
    node->children = {x};
    return node;
}

ExprPtr expr_zeta(const ExprPtr& x) {
    if (x->ctx.p.is_two())
        throw std::invalid_argument("zeta requires odd p");
    if (is_zero(x)) return x;
    Bidegree xi_target = apply_xi(x->bidegree, x->ctx.p, x->ctx.n);
    auto node = make(ExprKind::Zeta, x->ctx, Bidegree(xi_target.deg - 1, xi_target.par));
    node->children = {x};
    return node;
}

ExprPtr expr_q(long long s, const ExprPtr& x) {
    const ExprContext ctx = x->ctx;
    if (is_zero(x)) return x;
    if (x->kind == ExprKind::Scalar) return expr_scalar(x->coeff, expr_q(s, x->children[0]));
    if (x->kind == ExprKind::Sum) {
        std::vector<ExprPtr> terms;
        for (const auto& t : x->children) terms.push_back(expr_q(s, t));
        return expr_sum(std::move(terms));
    }
    QResult r = apply_q(s, x->bidegree, ctx.p, ctx.n); // throws at or above the window top
    if (std::holds_alternative<QZero>(r))
        return expr_zero(ctx, x->bidegree); // recorded bidegree is advisory on zero
    if (std::holds_alternative<QSquare>(r)) {
        std::vector<ExprPtr> copies(static_cast<std::size_t>(ctx.p.value()), x);
        return expr_product(std::move(copies));
    }
    auto node = make(ExprKind::Q, ctx, std::get<Bidegree>(r));
    node->s = s;
    node->children = {x};
    return node;
}

ExprPtr expr_ad(long long i, const ExprPtr& operand, const ExprPtr& argument) {
    check_ctx(operand->ctx, argument->ctx);
    const ExprContext ctx = operand->ctx;
    if (i < 0) throw std::invalid_argument("negative ad iterate");
    if (i == 0) return argument;
    Bidegree target(i * (operand->bidegree.deg + ctx.n - 1) + argument->bidegree.deg,
                    i * operand->bidegree.par + argument->bidegree.par);
    if (is_zero(operand) || is_zero(argument)) return expr_zero(ctx, target);

    // ad is an iterated bracket, so it is linear in the argument and a scalar
    // on the operand contributes its i-th power
    auto [cop, opcore] = split_scalar(operand);
    auto [carg, argcore] = split_scalar(argument);
    if (cop != 1 || carg != 1) {
        std::uint32_t c = carg;
        for (long long k = 0; k < i; ++k) c = fp_mul(c, cop, ctx.p);
        return expr_scalar(c, expr_ad(i, opcore, argcore));
    }
    if (argument->kind == ExprKind::Sum) {
        std::vector<ExprPtr> terms;
        for (const auto& t : argument->children) terms.push_back(expr_ad(i, operand, t));
        return expr_sum(std::move(terms));
    }
    auto node = make(ExprKind::Ad, ctx, target);
    node->ad_pow = i;
    node->children = {operand, argument};
    return node;
}

Bidegree infer_bidegree(const ExprPtr& e) { return e->bidegree; }

namespace {

void serialize_into(const ExprPtr& e, std::ostringstream& out) {
    switch (e->kind) {
    case ExprKind::Zero:
        out << "0";
        return;
    case ExprKind::Gen:
        out << "gen(" << e->gen.name() << ")";
        return;
    case ExprKind::Scalar:
        out << "sc(" << e->coeff << ",";
        serialize_into(e->children[0], out);
        out << ")";
        return;
    case ExprKind::Sum:
    case ExprKind::Product:
        out << (e->kind == ExprKind::Sum ? "sum(" : "mul(");
        for (std::size_t i = 0; i < e->children.size(); ++i) {
            if (i) out << ",";
            serialize_into(e->children[i], out);
        }
        out << ")";
        return;
    case ExprKind::Bracket:
        out << "br(";
        serialize_into(e->children[0], out);
        out << ",";
        serialize_into(e->children[1], out);
        out << ")";
        return;
    case ExprKind::Xi:
    case ExprKind::Beta:
    case ExprKind::BetaXi:
    case ExprKind::Zeta: {
        const char* tag = e->kind == ExprKind::Xi      ? "xi"
                          : e->kind == ExprKind::Beta  ? "beta"
                          : e->kind == ExprKind::BetaXi ? "bxi"
                                                        : "zeta";
        out << tag << "(";
        serialize_into(e->children[0], out);
        out << ")";
        return;
    }
    case ExprKind::Q:
        out << "q(" << e->s << ",";
        serialize_into(e->children[0], out);
        out << ")";
        return;
    case ExprKind::Ad:
        out << "ad(" << e->ad_pow << ",";
        serialize_into(e->children[0], out);
        out << ",";
        serialize_into(e->children[1], out);
        out << ")";
        return;
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace

std::string serialize(const ExprPtr& e) {
    std::ostringstream out;
    serialize_into(e, out);
    return out.str();
}

} // namespace confalg
