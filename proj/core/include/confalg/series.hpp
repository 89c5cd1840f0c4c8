#pragma once

#include <cstdint>
#include <vector>

#include "confalg/generators.hpp"

namespace confalg {

/* Truncated two-variable Poincare series: coeff[i][k] is the coefficient of
 * t^i s^k, for 0 <= i <= max_deg, 0 <= k <= max_par. */
struct Series2 {
    long long max_deg = 0;
    long long max_par = 0;
    std::vector<std::vector<std::uint64_t>> coeff;

    static Series2 one(long long max_deg, long long max_par);
    std::uint64_t at(long long i, long long k) const;
};

/* Product over the generators with particle count <= max_par of
 *   1/(1 - t^deg s^par)  for polynomial generators,
 *   (1 + t^deg s^par)    for exterior generators,
 * expanded factor by factor with truncation to the grid. This recomputes the
 * dimension table along a path with no code shared with enumerate_basis. */
Series2 poincare(const GeneratorSet& gs, long long max_deg, long long max_par);

} // namespace confalg
