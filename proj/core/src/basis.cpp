#include "confalg/basis.hpp"

#include <algorithm>
#include <stdexcept>

#include "confalg/parallel.hpp"

namespace confalg {

namespace {

std::uint64_t checked_inc(std::uint64_t v) {
    if (v == UINT64_MAX) throw std::overflow_error("dimension overflow");
    return v + 1;
}

/* Walk exponent choices for gens[0..idx], largest ordinal first, calling
 * leaf(deg, par) for every assignment that exhausts the budget exactly.
 * Exact-target mode: leaf called only when deg_left==0 after the last
 * generator; grid mode (exact=false): every assignment with deg <= budget
 * is a leaf. Generator 0 is always e with bidegree (0,1), handled closed
 * form at the bottom. */
template <class Leaf>
void walk(const std::vector<Generator>& gens, std::size_t idx, long long deg_left,
          long long par_left, bool exact, Leaf&& leaf) {
    if (idx == 0) {
        // exponent of e soaks up particles without changing degree
        if (exact) {
            if (deg_left == 0) leaf(0, 0); // remaining par_left spent on e
        } else {
            for (long long a = 0; a <= par_left; ++a) leaf(deg_left, par_left - a);
        }
        return;
    }
    const Generator& g = gens[idx];
    long long emax = par_left / g.bidegree.par;
    if (g.exterior && emax > 1) emax = 1;
    if (g.bidegree.deg > 0) {
        long long dmax = deg_left / g.bidegree.deg;
        if (dmax < emax) emax = dmax;
    }
    for (long long a = 0; a <= emax; ++a) {
        walk(gens, idx - 1, deg_left - a * g.bidegree.deg, par_left - a * g.bidegree.par, exact,
             leaf);
    }
}

/* Same walk but materializing the exponent vector; cur holds exponents for
 * ordinals idx..top already chosen (in descending ordinal order). */
void walk_collect(const GeneratorSet& gs, const std::vector<Generator>& gens, std::size_t idx,
                  long long deg_left, long long par_left,
                  std::vector<Monomial::Entry>& cur, std::vector<Monomial>& out) {
    if (idx == 0) {
        if (deg_left != 0) return;
        std::vector<Monomial::Entry> entries;
        if (par_left > 0) entries.emplace_back(0u, static_cast<std::uint32_t>(par_left));
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) entries.push_back(*it);
        out.emplace_back(std::move(entries));
        return;
    }
    const Generator& g = gens[idx];
    long long emax = par_left / g.bidegree.par;
    if (g.exterior && emax > 1) emax = 1;
    if (g.bidegree.deg > 0) {
        long long dmax = deg_left / g.bidegree.deg;
        if (dmax < emax) emax = dmax;
    }
    for (long long a = 0; a <= emax; ++a) {
        if (a > 0)
            cur.emplace_back(static_cast<std::uint32_t>(gs.ordinal_of(g)),
                             static_cast<std::uint32_t>(a));
        walk_collect(gs, gens, idx - 1, deg_left - a * g.bidegree.deg,
                     par_left - a * g.bidegree.par, cur, out);
        if (a > 0) cur.pop_back();
    }
}

} // namespace

std::vector<Monomial> enumerate_basis(const GeneratorSet& gs, const Bidegree& b) {
    std::vector<Monomial> out;
    if (b.par == 0) {
        if (b.deg == 0) out.emplace_back();
        return out;
    }
    std::vector<Generator> gens = gs.up_to_par(b.par);
    std::vector<Monomial::Entry> cur;
    walk_collect(gs, gens, gens.size() - 1, b.deg, b.par, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t dim(const GeneratorSet& gs, const Bidegree& b) {
    if (b.par == 0) return b.deg == 0 ? 1 : 0;
    std::vector<Generator> gens = gs.up_to_par(b.par);
    std::uint64_t n = 0;
    walk(gens, gens.size() - 1, b.deg, b.par, true, [&](long long, long long) { n = checked_inc(n); });
    return n;
}

std::uint64_t DimTable::at(long long i, long long k) const {
    if (i < 0 || i > max_deg || k < 0 || k > max_par)
        throw std::out_of_range("DimTable::at outside grid");
    return dims[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
}

DimTable dim_table(const GeneratorSet& gs, long long max_deg, long long max_par, int threads) {
    if (max_deg < 0 || max_par < 0) throw std::invalid_argument("dim_table: negative bounds");
    DimTable t;
    t.case_name = gs.case_name();
    t.p = gs.p().value();
    t.max_deg = max_deg;
    t.max_par = max_par;
    const std::size_t rows = static_cast<std::size_t>(max_deg) + 1;
    const std::size_t cols = static_cast<std::size_t>(max_par) + 1;

    if (max_par == 0) {
        t.dims.assign(rows, std::vector<std::uint64_t>(cols, 0));
        t.dims[0][0] = 1;
        return t;
    }
    std::vector<Generator> gens = gs.up_to_par(max_par);
    std::size_t top = gens.size() - 1;

    /* Partition on the exponent of the largest generator; each task fills a
     * private grid and the grids are summed in task order. Cell values are
     * sums of visit counts, so the partition does not affect the result. */
    long long top_emax = 0;
    if (top > 0) {
        const Generator& g = gens[top];
        top_emax = max_par / g.bidegree.par;
        if (g.exterior && top_emax > 1) top_emax = 1;
        if (g.bidegree.deg > 0) {
            long long dmax = max_deg / g.bidegree.deg;
            if (dmax < top_emax) top_emax = dmax;
        }
    }
    std::size_t tasks = top > 0 ? static_cast<std::size_t>(top_emax) + 1 : 1;
    std::vector<std::vector<std::vector<std::uint64_t>>> partial(
        tasks, std::vector<std::vector<std::uint64_t>>(rows, std::vector<std::uint64_t>(cols, 0)));

    parallel_for(tasks, threads, [&](std::size_t a) {
        auto& grid = partial[a];
        long long d0 = 0, k0 = 0;
        std::size_t start = top;
        if (top > 0) {
            const Generator& g = gens[top];
            d0 = static_cast<long long>(a) * g.bidegree.deg;
            k0 = static_cast<long long>(a) * g.bidegree.par;
            if (d0 > max_deg || k0 > max_par) return;
            start = top - 1;
        }
        walk(gens, start, max_deg - d0, max_par - k0, false,
             [&](long long deg_left, long long par_left) {
                 std::size_t i = static_cast<std::size_t>(max_deg - deg_left);
                 std::size_t k = static_cast<std::size_t>(max_par - par_left);
                 grid[i][k] = checked_inc(grid[i][k]);
             });
    });

    t.dims.assign(rows, std::vector<std::uint64_t>(cols, 0));
    for (std::size_t a = 0; a < tasks; ++a)
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                std::uint64_t s = t.dims[i][k] + partial[a][i][k];
                if (s < t.dims[i][k]) throw std::overflow_error("dimension overflow");
                t.dims[i][k] = s;
            }
    return t;
}

std::string DimTable::to_csv() const {
    std::string s = "i\\k";
    for (long long k = 0; k <= max_par; ++k) s += "," + std::to_string(k);
    s += "\n";
    for (long long i = 0; i <= max_deg; ++i) {
        s += std::to_string(i);
        for (long long k = 0; k <= max_par; ++k) s += "," + std::to_string(at(i, k));
        s += "\n";
    }
    return s;
}

std::string DimTable::to_md() const {
    std::string s = "| i\\k |";
    for (long long k = 0; k <= max_par; ++k) s += " " + std::to_string(k) + " |";
    s += "\n|---|";
    for (long long k = 0; k <= max_par; ++k) s += "---|";
    s += "\n";
    for (long long i = 0; i <= max_deg; ++i) {
        s += "| " + std::to_string(i) + " |";
        for (long long k = 0; k <= max_par; ++k) s += " " + std::to_string(at(i, k)) + " |";
        s += "\n";
    }
    return s;
}

nlohmann::ordered_json DimTable::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = case_name;
    j["p"] = p;
    j["dims"] = dims;
    return j;
}

} // namespace confalg
