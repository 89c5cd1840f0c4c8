#include "confalg/monomial.hpp"

#include <stdexcept>

namespace confalg {

std::uint32_t Monomial::exponent(std::uint32_t ordinal) const {
    for (const auto& [t, e] : data)
        if (t == ordinal) return e;
    return 0;
}

std::string Monomial::str(const GeneratorSet& gs) const {
    if (data.empty()) return "1";
    std::string s;
    for (const auto& [t, e] : data) {
        if (!s.empty()) s += "*";
        s += gs.generator(t).name();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

void validate(const Monomial& m, const GeneratorSet& gs) {
    std::uint32_t prev = 0;
    bool first = true;
    for (const auto& [t, e] : m.data) {
        if (!first && t <= prev) throw std::invalid_argument("monomial entries out of order");
        if (e == 0) throw std::invalid_argument("monomial with zero exponent");
        if (gs.generator(t).exterior && e > 1)
            throw std::invalid_argument("exterior generator with exponent > 1");
        prev = t;
        first = false;
    }
}

Bidegree bidegree_of(const Monomial& m, const GeneratorSet& gs) {
    long long deg = 0, par = 0;
    for (const auto& [t, e] : m.data) {
        Generator g = gs.generator(t);
        long long d, k;
        if (__builtin_mul_overflow(g.bidegree.deg, static_cast<long long>(e), &d) ||
            __builtin_add_overflow(deg, d, &deg))
            throw std::overflow_error("bidegree overflow");
        if (__builtin_mul_overflow(g.bidegree.par, static_cast<long long>(e), &k) ||
            __builtin_add_overflow(par, k, &par))
            throw std::overflow_error("bidegree overflow");
    }
    return Bidegree(deg, par);
}

Term multiply(const Monomial& a, const Monomial& b, const GeneratorSet& gs) {
    Prime p = gs.p();
    // Koszul sign: count transpositions of odd-degree occurrences needed to
    // merge b's occurrences into a's. Only exterior generators have odd degree
    // (p odd), and they carry exponent <= 1, so this is a pair inversion count.
    long long inversions = 0;
    if (p.odd()) {
        for (const auto& [tb, eb] : b.data) {
            if (!gs.generator(tb).exterior) continue;
            for (const auto& [ta, ea] : a.data) {
                if (ta > tb && gs.generator(ta).exterior) inversions += ea;
            }
        }
    }

    Term out;
    out.mono.data.reserve(a.data.size() + b.data.size());
    std::size_t i = 0, j = 0;
    while (i < a.data.size() || j < b.data.size()) {
        if (j == b.data.size() || (i < a.data.size() && a.data[i].first < b.data[j].first)) {
            out.mono.data.push_back(a.data[i++]);
        } else if (i == a.data.size() || b.data[j].first < a.data[i].first) {
            out.mono.data.push_back(b.data[j++]);
        } else {
            std::uint32_t t = a.data[i].first;
            if (gs.generator(t).exterior) return Term{0u, Monomial{}}; // square of exterior class
            out.mono.data.emplace_back(t, a.data[i].second + b.data[j].second);
            ++i;
            ++j;
        }
    }
    out.coeff = fp_sign(inversions, p);
    return out;
}

Polynomial Polynomial::term(std::uint32_t coeff, const Monomial& m, Prime p) {
    Polynomial out;
    out.add_term(coeff, m, p);
    return out;
}

void Polynomial::add_term(std::uint32_t coeff, const Monomial& m, Prime p) {
    coeff %= static_cast<std::uint32_t>(p.value());
    if (coeff == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second = fp_add(it->second, coeff, p);
    if (it->second == 0) terms_.erase(it);
}

Polynomial Polynomial::add(const Polynomial& o, Prime p) const {
    Polynomial out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(c, m, p);
    return out;
}

Polynomial Polynomial::scale(std::uint32_t c, Prime p) const {
    Polynomial out;
    for (const auto& [m, k] : terms_) out.add_term(fp_mul(k, c, p), m, p);
    return out;
}

Polynomial Polynomial::mul(const Polynomial& o, const GeneratorSet& gs) const {
    Polynomial out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Term t = multiply(ma, mb, gs);
            if (t.coeff == 0) continue;
            out.add_term(fp_mul(fp_mul(ca, cb, gs.p()), t.coeff, gs.p()), t.mono, gs.p());
        }
    }
    return out;
}

std::string Polynomial::str(const GeneratorSet& gs) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (c != 1 || m.is_unit()) {
            s += std::to_string(c);
            if (!m.is_unit()) s += "*";
        }
        if (!m.is_unit()) s += m.str(gs);
    }
    return s;
}

} // namespace confalg
