#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace confalg {

/* Bidegree of a homology class: homological degree together with the particle
 * count (the configuration-space grading). Both components are nonnegative. */
struct Bidegree {
    long long deg = 0; // homological degree i
    long long par = 0; // particle count k

    Bidegree() = default;
    Bidegree(long long d, long long k) : deg(d), par(k) {
        if (d < 0 || k < 0)
            throw std::invalid_argument("Bidegree: negative component (" + std::to_string(d) +
                                        "," + std::to_string(k) + ")");
    }

    Bidegree operator+(const Bidegree& o) const { return Bidegree(deg + o.deg, par + o.par); }
    Bidegree& operator+=(const Bidegree& o) { return *this = *this + o; }

    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;

    std::string str() const { return "(" + std::to_string(deg) + "," + std::to_string(par) + ")"; }
};

} // namespace confalg
