#include "confalg/series.hpp"

#include <stdexcept>

namespace confalg {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    if (r < a) throw std::overflow_error("series coefficient overflow");
    return r;
}

} // namespace

Series2 Series2::one(long long max_deg, long long max_par) {
    if (max_deg < 0 || max_par < 0) throw std::invalid_argument("Series2: negative bounds");
    Series2 s;
    s.max_deg = max_deg;
    s.max_par = max_par;
    s.coeff.assign(static_cast<std::size_t>(max_deg) + 1,
                   std::vector<std::uint64_t>(static_cast<std::size_t>(max_par) + 1, 0));
    s.coeff[0][0] = 1;
    return s;
}

std::uint64_t Series2::at(long long i, long long k) const {
    if (i < 0 || i > max_deg || k < 0 || k > max_par)
        throw std::out_of_range("Series2::at outside grid");
    return coeff[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
}

Series2 poincare(const GeneratorSet& gs, long long max_deg, long long max_par) {
    Series2 acc = Series2::one(max_deg, max_par);
    if (max_par == 0) return acc;
    for (const Generator& g : gs.up_to_par(max_par)) {
        const long long d = g.bidegree.deg, q = g.bidegree.par;
        if (g.exterior) {
            // multiply by (1 + t^d s^q): new[i][k] = old[i][k] + old[i-d][k-q]
            Series2 next = acc;
            for (long long i = d; i <= max_deg; ++i)
                for (long long k = q; k <= max_par; ++k)
                    next.coeff[i][k] =
                        checked_add(next.coeff[i][k], acc.coeff[i - d][k - q]);
            acc = std::move(next);
        } else {
            // multiply by 1/(1 - t^d s^q): new[i][k] = old[i][k] + new[i-d][k-q]
            for (long long i = 0; i <= max_deg; ++i)
                for (long long k = 0; k <= max_par; ++k) {
                    if (i - d < 0 || k - q < 0) continue;
                    acc.coeff[i][k] =
                        checked_add(acc.coeff[i][k], acc.coeff[i - d][k - q]);
                }
        }
    }
    return acc;
}

} // namespace confalg
