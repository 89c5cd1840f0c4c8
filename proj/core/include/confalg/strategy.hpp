#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "confalg/trace.hpp"

namespace confalg {

/* Certifies the vanishing of the Browder bracket of z against the point
 * class e, producing a replayable trace. The search is a fixed priority loop
 * over the rule table that follows the structure of z:
 *   - p-th powers fall to the derivation rule and like-term collection in
 *     characteristic p,
 *   - Q^s-images and zeta-images fall to the bracket killing rules,
 *   - e itself falls to the geometric rule when n is odd or p = 2,
 *   - x_i, z_i, y_i fall to their definitional recursions through xi, zeta,
 *     the Jacobi rotation, and the Bockstein,
 * and anything else ends Unknown. For n even and odd p the bracket [e,e]
 * does not vanish; the strategy reports it as a normal form, contracted to
 * the generator z_0 when n = 2. A Vanishes or NormalForm verdict is exact;
 * Unknown reports only that this strategy found no derivation. */
ProofTrace check_point_bracket(const ExprPtr& z);

// the same loop run on an arbitrary starting expression
ProofTrace run_point_strategy(const ExprPtr& start, long long max_steps = 4000);

/* Spot checks of the printed signs on concrete expressions:
 *   - the antisymmetry coefficient against an independent recomputation, and
 *     the double-flip involution,
 *   - the Jacobi identity summed on the diagonal (x,x,x) with the printed
 *     exponents, which must collapse to zero through like-term collection
 *     and the self-bracket rules; the result is flagged in the report rather
 *     than assumed elsewhere,
 *   - the derivation rule against a re-expansion round trip.
 * Violations are reported, never corrected. */
struct SignCheckReport {
    int p = 0;
    int n = 0;
    std::size_t antisym_involution = 0;
    std::size_t antisym_coefficient = 0;
    std::size_t jacobi_diagonal = 0;
    std::size_t derivation_roundtrip = 0;
    std::vector<std::string> violations;

    bool all_ok() const { return violations.empty(); }
    nlohmann::ordered_json to_json() const;
};

SignCheckReport verify_sign_identities(const ExprContext& ctx,
                                       const std::vector<ExprPtr>& samples);

// deterministic sample expressions over the family for (p, n); seeded
std::vector<ExprPtr> sample_expressions(const ExprContext& ctx, std::size_t count,
                                        std::uint64_t seed);

} // namespace confalg
