#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "confalg/bidegree.hpp"
#include "confalg/fp.hpp"

namespace confalg {

/* The three free graded-commutative presentations we materialize:
 *   SurfaceF2    : F_2[e, x_1, x_2, ...]                        (n = 2, p = 2)
 *   SurfaceOddP  : F_p[e, y_1, y_2, ...] (x) Lambda[z_0, z_1, ...] (n = 2, p odd)
 *   HigherDimF2  : F_2[e, w_1, w_2, ...]                        (n > 2, p = 2)
 * The HigherDimF2 case is the subfamily generated by the iterated Q-classes
 * w_j; it is exposed so the range verifiers can run against that family too.
 */
enum class Family : std::uint8_t { SurfaceF2, SurfaceOddP, HigherDimF2 };

enum class GenKind : std::uint8_t { E, X, Y, Z, W };

struct Generator {
    GenKind kind = GenKind::E;
    int index = 0; // the j in x_j / y_j / z_j / w_j; 0 for e
    Bidegree bidegree;
    bool exterior = false;

    std::string name() const;

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

/* Lazily indexed generator family. Generators are totally ordered by
 * (particle count, name, index); ordinal t is the position in that order.
 * The family is infinite, so callers always pass a particle-count cutoff. */
class GeneratorSet {
public:
    GeneratorSet(Family f, Prime p, int n);

    // picks the family from the ambient parameters; p odd with n > 2 is unsupported
    static GeneratorSet for_params(Prime p, int n);

    Family family() const { return family_; }
    Prime p() const { return p_; }
    int n() const { return n_; }
    std::string case_name() const;

    Generator generator(std::size_t ordinal) const;
    std::size_t ordinal_of(const Generator& g) const;

    // all generators with particle count <= par_bound, in canonical order
    std::vector<Generator> up_to_par(long long par_bound) const;
    std::size_t count_up_to_par(long long par_bound) const;

    // parses "e", "x1", "y2", "z0", "w3"; rejects names outside the family
    Generator by_name(const std::string& name) const;

private:
    Family family_;
    Prime p_;
    int n_;
};

} // namespace confalg
