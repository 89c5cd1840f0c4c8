#include "confalg/ops.hpp"

#include <stdexcept>

namespace confalg {

Bidegree bracket_bidegree(const Bidegree& a, const Bidegree& b, int n) {
    if (n < 2) throw std::invalid_argument("ambient dimension must be >= 2");
    return Bidegree(a.deg + b.deg + n - 1, a.par + b.par);
}

bool xi_defined(const Bidegree& b, Prime p, int n) {
    if (p.is_two()) return true;
    return (b.deg + n - 1) % 2 == 0;
}

Bidegree apply_xi(const Bidegree& b, Prime p, int n) {
    if (n < 2) throw std::invalid_argument("ambient dimension must be >= 2");
    if (!xi_defined(b, p, n))
        throw std::domain_error("xi undefined: p odd needs deg+n-1 even, got deg=" +
                                std::to_string(b.deg) + ", n=" + std::to_string(n));
    long long P = p.value();
    return Bidegree(P * b.deg + static_cast<long long>(n - 1) * (P - 1), P * b.par);
}

bool q_admissible(long long s, const Bidegree& b, Prime p, int n) {
    if (p.is_two()) return s - b.deg < n - 1;
    return 2 * s - b.deg < n - 1;
}

QResult apply_q(long long s, const Bidegree& b, Prime p, int n) {
    if (n < 2) throw std::invalid_argument("ambient dimension must be >= 2");
    if (!q_admissible(s, b, p, n))
        throw std::domain_error("Q^" + std::to_string(s) + " undefined on deg " +
                                std::to_string(b.deg) + " for n=" + std::to_string(n));
    long long P = p.value();
    if (p.is_two()) {
        if (s < b.deg) return QZero{};
        if (s == b.deg) return QSquare{};
        return Bidegree(b.deg + s, 2 * b.par);
    }
    if (2 * s < b.deg) return QZero{};
    if (2 * s == b.deg) return QSquare{};
    return Bidegree(b.deg + 2 * s * (P - 1), P * b.par);
}

} // namespace confalg
