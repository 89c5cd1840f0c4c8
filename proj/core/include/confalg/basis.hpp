#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confalg/monomial.hpp"

namespace confalg {

/* All basis monomials of the given bidegree, in strictly increasing canonical
 * order. The free graded-commutative presentation makes monomials in the
 * generators a basis, so this is the homology basis in that bidegree. */
std::vector<Monomial> enumerate_basis(const GeneratorSet& gs, const Bidegree& b);

// |enumerate_basis| computed by counting, without materializing monomials
std::uint64_t dim(const GeneratorSet& gs, const Bidegree& b);

/* Dimension grid over 0 <= i <= max_deg, 0 <= k <= max_par. Values come from
 * direct monomial enumeration; the Poincare series in series.hpp recomputes
 * the same grid along an independent path. */
struct DimTable {
    std::string case_name;
    int p = 2;
    long long max_deg = 0;
    long long max_par = 0;
    std::vector<std::vector<std::uint64_t>> dims; // dims[i][k]

    std::uint64_t at(long long i, long long k) const;

    std::string to_csv() const;
    std::string to_md() const;
    nlohmann::ordered_json to_json() const;
};

DimTable dim_table(const GeneratorSet& gs, long long max_deg, long long max_par, int threads = 1);

} // namespace confalg
