#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace confalg {

/* Validated prime modulus. Everything in this library works over F_p for a
 * small prime p; coefficients are kept as least nonnegative residues. */
class Prime {
public:
    explicit Prime(int p) : p_(p) {
        if (p < 2 || !is_prime(p))
            throw std::invalid_argument("Prime: " + std::to_string(p) + " is not prime");
    }

    int value() const { return p_; }
    bool is_two() const { return p_ == 2; }
    bool odd() const { return p_ != 2; }

    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
    friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    int p_;
};

// residue arithmetic, least nonnegative representatives
inline std::uint32_t fp_reduce(long long v, Prime p) {
    long long m = v % p.value();
    if (m < 0) m += p.value();
    return static_cast<std::uint32_t>(m);
}

inline std::uint32_t fp_add(std::uint32_t a, std::uint32_t b, Prime p) {
    return (a + b) % static_cast<std::uint32_t>(p.value());
}

inline std::uint32_t fp_neg(std::uint32_t a, Prime p) {
    return a == 0 ? 0u : static_cast<std::uint32_t>(p.value()) - a;
}

inline std::uint32_t fp_mul(std::uint32_t a, std::uint32_t b, Prime p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) %
                                      static_cast<std::uint64_t>(p.value()));
}

// (-1)^e as a residue
inline std::uint32_t fp_sign(long long e, Prime p) {
    return (e % 2 == 0) ? 1u : fp_neg(1u, p);
}

} // namespace confalg
