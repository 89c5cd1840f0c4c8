#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confalg/generators.hpp"

namespace confalg {

/* Monomial in a GeneratorSet: sparse exponent vector over generator ordinals,
 * entries sorted by ordinal, exponents positive. Exterior generators may only
 * carry exponent 1. The empty monomial is the unit. */
struct Monomial {
    using Entry = std::pair<std::uint32_t, std::uint32_t>; // (ordinal, exponent)
    std::vector<Entry> data;

    Monomial() = default;
    explicit Monomial(std::vector<Entry> d) : data(std::move(d)) {}

    bool is_unit() const { return data.empty(); }
    std::uint32_t exponent(std::uint32_t ordinal) const;

    // total order used for basis listings and polynomial keys
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.data < b.data; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.data == b.data; }

    std::string str(const GeneratorSet& gs) const; // e.g. "e^3*z0*y1"
};

// checks sortedness, positive exponents, exterior exponents <= 1
void validate(const Monomial& m, const GeneratorSet& gs);

Bidegree bidegree_of(const Monomial& m, const GeneratorSet& gs);

/* Graded-commutative product of two monomials. The coefficient is the Koszul
 * sign from interleaving the odd-degree generator occurrences into canonical
 * order; a repeated exterior generator gives coefficient 0 (monomial unit). */
struct Term {
    std::uint32_t coeff = 0;
    Monomial mono;
};
Term multiply(const Monomial& a, const Monomial& b, const GeneratorSet& gs);

/* Finite F_p-linear combination of monomials; coefficients are nonzero least
 * nonnegative residues. */
class Polynomial {
public:
    Polynomial() = default;
    static Polynomial zero() { return Polynomial(); }
    static Polynomial term(std::uint32_t coeff, const Monomial& m, Prime p);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, std::uint32_t>& terms() const { return terms_; }

    void add_term(std::uint32_t coeff, const Monomial& m, Prime p);
    Polynomial add(const Polynomial& o, Prime p) const;
    Polynomial scale(std::uint32_t c, Prime p) const;
    Polynomial mul(const Polynomial& o, const GeneratorSet& gs) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    std::string str(const GeneratorSet& gs) const;

private:
    std::map<Monomial, std::uint32_t> terms_;
};

} // namespace confalg
