#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confalg/basis.hpp"
#include "confalg/monomial.hpp"
#include "confalg/rational.hpp"

namespace confalg {

/* Range bound for the m-th order stability comparison:
 *   D(p,m,k) = (B*k - C) / A with A = p^m, B = p^m - 1,
 *   C = sum_{j=0}^{m-1} (p^m - 2 p^j) for odd p and C = 0 for p = 2.
 * A class of bidegree (i,k) is in the m-th unstable range when i >= D(p,m,k).
 */
struct RangeConstant {
    int p = 2;
    int m = 1;
    long long A = 0, B = 0, C = 0;

    Rational at(long long k) const; // D(p,m,k)
};

RangeConstant range_constant(Prime p, int m); // m >= 1
Rational D_constant(Prime p, int m, long long k);

// largest integer i with i <= D resp. i < D
long long floor_threshold(Prime p, int m, long long k);
long long strict_threshold(Prime p, int m, long long k);

bool unstable_member(const Bidegree& b, Prime p, int m);

/* Monomial ideal generated by a list of generators; membership is
 * divisibility by one of them. */
struct IdealSpec {
    std::vector<Generator> gens;
};

bool ideal_member(const Monomial& mono, const IdealSpec& ideal, const GeneratorSet& gs);

/* The stability sequence w_0 = e, w_m = x_m (SurfaceF2), y_m (SurfaceOddP),
 * w_m (HigherDimF2); stability_ideal(gs, m) is (w_0, ..., w_{m-1}). */
Generator stability_class(const GeneratorSet& gs, int m);
IdealSpec stability_ideal(const GeneratorSet& gs, int m);

/* Dimension of the m-th iterated mapping cone of the stabilization maps in
 * one bidegree: multiplication by each w_j is injective on the quotient by
 * the earlier ones, so the cone homology is the quotient algebra by
 * (w_0,...,w_{m-1}) and its basis is the set of basis monomials with zero
 * exponent on those generators. */
std::uint64_t cone_dim(const GeneratorSet& gs, int m, const Bidegree& b);

/* Cokernel of multiplication by w_m on the order-m cone in one target
 * bidegree; equals cone_dim at order m+1. */
std::uint64_t stab_cokernel_dim(const GeneratorSet& gs, int m, const Bidegree& b);

struct Violation {
    long long k = 0; // source particle count
    long long i = 0; // source degree offset
    Bidegree target;
    std::string monomial; // an offending basis monomial
};

struct BoundaryInfo {
    long long k = 0;
    long long i_floor = 0; // floor(D) at this k
    bool exact = false;    // D is an integer here
};

struct VerifyReport {
    std::string statement;
    nlohmann::ordered_json params;
    std::uint64_t checked = 0; // bidegrees inspected
    std::vector<Violation> violations;
    std::vector<BoundaryInfo> boundary;

    bool pass() const { return violations.empty(); }
    nlohmann::ordered_json to_json() const;
};

/* Checks the coverage statement at order m >= 1: for every source particle
 * count k <= k_max and every integer i <= D(p,m,k), each basis monomial of
 * bidegree (i + deg w_{m-1}, k + par w_{m-1}) lies in (w_0,...,w_{m-1}).
 * i_slack widens the checked range past the bound (used to confirm the bound
 * is sharp: slack 1 should produce violations). */
VerifyReport verify_ideal_coverage(const GeneratorSet& gs, int m, long long k_max,
                                   int threads = 1, long long i_slack = 0);

/* Checks that multiplication by w_m is onto within the order-(m+1) range:
 * stab_cokernel_dim vanishes at (i + deg w_m, k + par w_m) for every k <=
 * k_max and integer i <= D(p,m+1,k). Passing here is equivalent to
 * verify_ideal_coverage at order m+1 over the same bounds. */
VerifyReport verify_iso_range(const GeneratorSet& gs, int m, long long k_max,
                              int threads = 1, long long i_slack = 0);

struct Witness {
    long long source_k = 0;
    long long i = 0; // first integer above D(p,m+1,source_k) with nonzero cokernel
    Bidegree target;
    std::string monomial; // spanning monomial of the cokernel
    Rational bound;       // D(p,m+1,source_k)
};

/* Searches k = 0..k_max in order, and for each k scans i upward from
 * floor(D(p,m+1,k))+1, for the first nonzero cokernel of multiplication by
 * w_m; returns the lexicographically least (k,i) hit. A witness shows the
 * range bound cannot be raised. */
std::optional<Witness> optimality_witness(const GeneratorSet& gs, int m, long long k_max);

nlohmann::ordered_json witness_report(const GeneratorSet& gs, int m, long long k_max,
                                      const std::optional<Witness>& w);

} // namespace confalg
