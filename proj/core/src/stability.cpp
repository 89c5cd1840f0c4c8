#include "confalg/stability.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "confalg/parallel.hpp"

namespace confalg {

namespace {

long long checked_pow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i)
        r = Rational::checked_mul(r, base);
    return r;
}

} // namespace

Rational RangeConstant::at(long long k) const {
    return Rational(Rational::checked_sub(Rational::checked_mul(B, k), C), A);
}

RangeConstant range_constant(Prime p, int m) {
    if (m < 1) throw std::domain_error("range constant needs m >= 1");
    RangeConstant rc;
    rc.p = p.value();
    rc.m = m;
    rc.A = checked_pow(p.value(), m);
    rc.B = rc.A - 1;
    rc.C = 0;
    if (p.odd()) {
        for (int j = 0; j < m; ++j)
            rc.C = Rational::checked_add(rc.C, rc.A - 2 * checked_pow(p.value(), j));
    }
    return rc;
}

Rational D_constant(Prime p, int m, long long k) { return range_constant(p, m).at(k); }

long long floor_threshold(Prime p, int m, long long k) { return D_constant(p, m, k).floor(); }

long long strict_threshold(Prime p, int m, long long k) {
    Rational d = D_constant(p, m, k);
    long long f = d.floor();
    return d.is_integer() ? f - 1 : f;
}

bool unstable_member(const Bidegree& b, Prime p, int m) {
    return Rational(b.deg) >= D_constant(p, m, b.par);
}

bool ideal_member(const Monomial& mono, const IdealSpec& ideal, const GeneratorSet& gs) {
    for (const Generator& g : ideal.gens)
        if (mono.exponent(static_cast<std::uint32_t>(gs.ordinal_of(g))) > 0) return true;
    return false;
}

Generator stability_class(const GeneratorSet& gs, int m) {
    if (m < 0) throw std::domain_error("stability class needs m >= 0");
    if (m == 0) return gs.generator(0);
    GenKind k;
    switch (gs.family()) {
    case Family::SurfaceF2: k = GenKind::X; break;
    case Family::SurfaceOddP: k = GenKind::Y; break;
    case Family::HigherDimF2: k = GenKind::W; break;
    default: throw std::logic_error("unreachable");
    }
    Generator g;
    g.kind = k;
    g.index = m;
    return gs.generator(gs.ordinal_of(g));
}

IdealSpec stability_ideal(const GeneratorSet& gs, int m) {
    IdealSpec ideal;
    for (int j = 0; j < m; ++j) ideal.gens.push_back(stability_class(gs, j));
    return ideal;
}

namespace {

/* Counts basis monomials of bidegree b built only from gens (any list, in
 * canonical order); used for quotient-algebra dimensions. Returns an example
 * monomial through `example` when nonnull and the count is positive. */
std::uint64_t count_filtered(const GeneratorSet& gs, const std::vector<Generator>& gens,
                             std::size_t idx, long long deg_left, long long par_left,
                             std::vector<Monomial::Entry>* stack,
                             std::optional<Monomial>* example) {
    if (deg_left == 0 && par_left == 0) {
        if (example && !example->has_value() && stack) {
            std::vector<Monomial::Entry> entries(stack->rbegin(), stack->rend());
            *example = Monomial(std::move(entries));
        }
        return 1;
    }
    if (idx == 0) return 0;
    const Generator& g = gens[idx - 1];
    long long emax = par_left / g.bidegree.par;
    if (g.exterior && emax > 1) emax = 1;
    if (g.bidegree.deg > 0) {
        long long dmax = deg_left / g.bidegree.deg;
        if (dmax < emax) emax = dmax;
    }
    std::uint64_t total = 0;
    for (long long a = 0; a <= emax; ++a) {
        if (stack && a > 0)
            stack->emplace_back(static_cast<std::uint32_t>(gs.ordinal_of(g)),
                                static_cast<std::uint32_t>(a));
        std::uint64_t c = count_filtered(gs, gens, idx - 1, deg_left - a * g.bidegree.deg,
                                         par_left - a * g.bidegree.par, stack, example);
        if (stack && a > 0) stack->pop_back();
        std::uint64_t s = total + c;
        if (s < total) throw std::overflow_error("dimension overflow");
        total = s;
    }
    return total;
}

std::uint64_t quotient_dim(const GeneratorSet& gs, const IdealSpec& excluded, const Bidegree& b,
                           std::optional<Monomial>* example) {
    std::vector<Generator> gens;
    for (const Generator& g : gs.up_to_par(b.par)) {
        bool skip = false;
        for (const Generator& x : excluded.gens)
            if (g == x) skip = true;
        if (!skip) gens.push_back(g);
    }
    std::vector<Monomial::Entry> stack;
    return count_filtered(gs, gens, gens.size(), b.deg, b.par, example ? &stack : nullptr,
                          example);
}

} // namespace

std::uint64_t cone_dim(const GeneratorSet& gs, int m, const Bidegree& b) {
    if (m < 0) throw std::domain_error("cone order must be >= 0");
    if (m == 0) return dim(gs, b);
    return quotient_dim(gs, stability_ideal(gs, m), b, nullptr);
}

std::uint64_t stab_cokernel_dim(const GeneratorSet& gs, int m, const Bidegree& b) {
    return cone_dim(gs, m + 1, b);
}

nlohmann::ordered_json VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["statement"] = statement;
    j["params"] = params;
    j["checked"] = checked;
    j["violations"] = nlohmann::ordered_json::array();
    for (const Violation& v : violations) {
        nlohmann::ordered_json jv;
        jv["k"] = v.k;
        jv["i"] = v.i;
        jv["target"] = {v.target.deg, v.target.par};
        jv["monomial"] = v.monomial;
        j["violations"].push_back(jv);
    }
    j["witness"] = nullptr;
    j["boundary"] = nlohmann::ordered_json::array();
    for (const BoundaryInfo& b : boundary) {
        nlohmann::ordered_json jb;
        jb["k"] = b.k;
        jb["i_floor"] = b.i_floor;
        jb["exact"] = b.exact;
        j["boundary"].push_back(jb);
    }
    return j;
}

namespace {

nlohmann::ordered_json verify_params(const GeneratorSet& gs, int m, long long k_max,
                                     long long i_slack) {
    nlohmann::ordered_json p;
    p["case"] = gs.case_name();
    p["p"] = gs.p().value();
    p["n"] = gs.n();
    p["m"] = m;
    p["k_max"] = k_max;
    p["i_slack"] = i_slack;
    return p;
}

struct PerK {
    std::uint64_t checked = 0;
    std::vector<Violation> violations;
    BoundaryInfo boundary;
};

} // namespace

VerifyReport verify_ideal_coverage(const GeneratorSet& gs, int m, long long k_max, int threads,
                                   long long i_slack) {
    if (m < 1) throw std::domain_error("ideal coverage needs m >= 1");
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    const Generator w = stability_class(gs, m - 1);
    const IdealSpec ideal = stability_ideal(gs, m);
    const RangeConstant rc = range_constant(gs.p(), m);

    std::vector<PerK> per(static_cast<std::size_t>(k_max) + 1);
    parallel_for(per.size(), threads, [&](std::size_t ki) {
        const long long k = static_cast<long long>(ki);
        PerK& slot = per[ki];
        Rational d = rc.at(k);
        slot.boundary = BoundaryInfo{k, d.floor(), d.is_integer()};
        const long long i_lo = -w.bidegree.deg;
        const long long i_hi = d.floor() + i_slack;
        for (long long i = i_lo; i <= i_hi; ++i) {
            Bidegree target(i + w.bidegree.deg, k + w.bidegree.par);
            ++slot.checked;
            for (const Monomial& mono : enumerate_basis(gs, target)) {
                if (!ideal_member(mono, ideal, gs))
                    slot.violations.push_back(Violation{k, i, target, mono.str(gs)});
            }
        }
    });

    VerifyReport r;
    r.statement = "ideal-coverage";
    r.params = verify_params(gs, m, k_max, i_slack);
    for (const PerK& slot : per) {
        r.checked += slot.checked;
        r.violations.insert(r.violations.end(), slot.violations.begin(), slot.violations.end());
        r.boundary.push_back(slot.boundary);
    }
    return r;
}

VerifyReport verify_iso_range(const GeneratorSet& gs, int m, long long k_max, int threads,
                              long long i_slack) {
    if (m < 0) throw std::domain_error("iso range needs m >= 0");
    if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
    const Generator w = stability_class(gs, m);
    const IdealSpec quotient_ideal = stability_ideal(gs, m + 1);
    const RangeConstant rc = range_constant(gs.p(), m + 1);

    std::vector<PerK> per(static_cast<std::size_t>(k_max) + 1);
    parallel_for(per.size(), threads, [&](std::size_t ki) {
        const long long k = static_cast<long long>(ki);
        PerK& slot = per[ki];
        Rational d = rc.at(k);
        slot.boundary = BoundaryInfo{k, d.floor(), d.is_integer()};
        const long long i_lo = -w.bidegree.deg;
        const long long i_hi = d.floor() + i_slack;
        for (long long i = i_lo; i <= i_hi; ++i) {
            Bidegree target(i + w.bidegree.deg, k + w.bidegree.par);
            ++slot.checked;
            std::optional<Monomial> example;
            std::uint64_t c = quotient_dim(gs, quotient_ideal, target, &example);
            if (c != 0)
                slot.violations.push_back(Violation{k, i, target, example->str(gs)});
        }
    });

    VerifyReport r;
    r.statement = "iso-range";
    r.params = verify_params(gs, m, k_max, i_slack);
    for (const PerK& slot : per) {
        r.checked += slot.checked;
        r.violations.insert(r.violations.end(), slot.violations.begin(), slot.violations.end());
        r.boundary.push_back(slot.boundary);
    }
    return r;
}

std::optional<Witness> optimality_witness(const GeneratorSet& gs, int m, long long k_max) {
    if (m < 0) throw std::domain_error("optimality needs m >= 0");
    const Generator w = stability_class(gs, m);
    const IdealSpec quotient_ideal = stability_ideal(gs, m + 1);
    const RangeConstant rc = range_constant(gs.p(), m + 1);

    for (long long k = 0; k <= k_max; ++k) {
        Rational d = rc.at(k);
        /* every nonunit monomial has deg < par, so the cokernel at target
         * particle count k + par(w_m) is empty once i is large enough */
        const long long i_max = k + w.bidegree.par - w.bidegree.deg - 1;
        for (long long i = d.floor() + 1; i <= i_max; ++i) {
            long long tdeg = i + w.bidegree.deg;
            if (tdeg < 0) continue;
            Bidegree target(tdeg, k + w.bidegree.par);
            std::optional<Monomial> example;
            std::uint64_t c = quotient_dim(gs, quotient_ideal, target, &example);
            if (c != 0) {
                Witness wit;
                wit.source_k = k;
                wit.i = i;
                wit.target = target;
                wit.monomial = example->str(gs);
                wit.bound = d;
                return wit;
            }
        }
    }
    return std::nullopt;
}

nlohmann::ordered_json witness_report(const GeneratorSet& gs, int m, long long k_max,
                                      const std::optional<Witness>& w) {
    nlohmann::ordered_json j;
    j["statement"] = "optimality";
    j["params"] = verify_params(gs, m, k_max, 0);
    j["checked"] = k_max + 1;
    j["violations"] = nlohmann::ordered_json::array();
    if (w) {
        nlohmann::ordered_json jw;
        jw["k"] = w->source_k;
        jw["i"] = w->i;
        jw["target"] = {w->target.deg, w->target.par};
        jw["monomial"] = w->monomial;
        jw["bound"] = w->bound.str();
        j["witness"] = jw;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

} // namespace confalg
