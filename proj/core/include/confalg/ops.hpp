#pragma once

#include <variant>

#include "confalg/bidegree.hpp"
#include "confalg/fp.hpp"

namespace confalg {

/* Bidegree bookkeeping for the homology operations on configuration spaces
 * of R^n. These compute target bidegrees and enforce the definedness windows;
 * the operations themselves act on classes elsewhere. */

// Browder bracket target: H_q x H_r -> H_{q+r+n-1}, particle counts add
Bidegree bracket_bidegree(const Bidegree& a, const Bidegree& b, int n);

/* Top operation xi on a class of bidegree (q,k): target (pq+(n-1)(p-1), pk).
 * For odd p it exists only when q+n-1 is even; violating that is a domain
 * error. For p=2 it is defined for every q. */
Bidegree apply_xi(const Bidegree& b, Prime p, int n);
bool xi_defined(const Bidegree& b, Prime p, int n);

/* Dyer-Lashof operation Q^s on (q,k).
 *   p=2:  target (q+s, 2k),        window s-q < n-1
 *   p odd: target (q+2s(p-1), pk), window 2s-q < n-1
 * Below the window bottom the value degenerates: Zero when s<q (2s<q for odd
 * p), and the p-th power of the argument when s=q (2s=q). Those degeneracies
 * are values, reported with symbolic tags; s at or above the window top is a
 * domain error (the operation is undefined there, which is different from
 * being zero). */
struct QZero {};
struct QSquare {}; // p-th power of the argument (square when p=2)
using QResult = std::variant<QZero, QSquare, Bidegree>;

QResult apply_q(long long s, const Bidegree& b, Prime p, int n);
bool q_admissible(long long s, const Bidegree& b, Prime p, int n);

} // namespace confalg
