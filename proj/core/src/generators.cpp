#include "confalg/generators.hpp"

#include <stdexcept>

namespace confalg {

namespace {

// p^j with overflow detection; particle counts stay within long long here
long long checked_pow(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r))
            throw std::overflow_error("generator index too large");
    }
    return r;
}

} // namespace

std::string Generator::name() const {
    switch (kind) {
    case GenKind::E: return "e";
    case GenKind::X: return "x" + std::to_string(index);
    case GenKind::Y: return "y" + std::to_string(index);
    case GenKind::Z: return "z" + std::to_string(index);
    case GenKind::W: return "w" + std::to_string(index);
    }
    return "?";
}

GeneratorSet::GeneratorSet(Family f, Prime p, int n) : family_(f), p_(p), n_(n) {
    switch (f) {
    case Family::SurfaceF2:
        if (!p.is_two() || n != 2)
            throw std::invalid_argument("SurfaceF2 requires p=2, n=2");
        break;
    case Family::SurfaceOddP:
        if (!p.odd() || n != 2)
            throw std::invalid_argument("SurfaceOddP requires odd p, n=2");
        break;
    case Family::HigherDimF2:
        if (!p.is_two() || n <= 2)
            throw std::invalid_argument("HigherDimF2 requires p=2, n>2");
        break;
    }
}

GeneratorSet GeneratorSet::for_params(Prime p, int n) {
    if (n < 2) throw std::invalid_argument("ambient dimension must be >= 2");
    if (n == 2) return GeneratorSet(p.is_two() ? Family::SurfaceF2 : Family::SurfaceOddP, p, 2);
    if (p.is_two()) return GeneratorSet(Family::HigherDimF2, p, n);
    throw std::invalid_argument("no generator family for odd p with n>2");
}

std::string GeneratorSet::case_name() const {
    switch (family_) {
    case Family::SurfaceF2: return "surface-f2";
    case Family::SurfaceOddP: return "surface-fp-odd";
    case Family::HigherDimF2: return "higher-f2-words";
    }
    return "?";
}

Generator GeneratorSet::generator(std::size_t t) const {
    Generator g;
    if (t == 0) {
        g.kind = GenKind::E;
        g.index = 0;
        g.bidegree = Bidegree(0, 1);
        g.exterior = false;
        return g;
    }
    switch (family_) {
    case Family::SurfaceF2:
    case Family::HigherDimF2: {
        // ordinal t >= 1 is x_t resp. w_t with bidegree (2^t - 1, 2^t)
        int j = static_cast<int>(t);
        long long par = checked_pow(2, j);
        g.kind = family_ == Family::SurfaceF2 ? GenKind::X : GenKind::W;
        g.index = j;
        g.bidegree = Bidegree(par - 1, par);
        g.exterior = false;
        return g;
    }
    case Family::SurfaceOddP: {
        // ordinal 1 is z_0; then (y_j, z_j) pairs share particle count 2p^j
        if (t == 1) {
            g.kind = GenKind::Z;
            g.index = 0;
            g.bidegree = Bidegree(1, 2);
            g.exterior = true;
            return g;
        }
        int j = static_cast<int>(t / 2);
        long long par = 2 * checked_pow(p_.value(), j);
        if (t % 2 == 0) {
            g.kind = GenKind::Y;
            g.index = j;
            g.bidegree = Bidegree(par - 2, par);
            g.exterior = false;
        } else {
            g.kind = GenKind::Z;
            g.index = j;
            g.bidegree = Bidegree(par - 1, par);
            g.exterior = true;
        }
        return g;
    }
    }
    throw std::logic_error("unreachable");
}

std::size_t GeneratorSet::ordinal_of(const Generator& g) const {
    if (g.kind == GenKind::E) return 0;
    switch (family_) {
    case Family::SurfaceF2:
        if (g.kind == GenKind::X && g.index >= 1) return static_cast<std::size_t>(g.index);
        break;
    case Family::HigherDimF2:
        if (g.kind == GenKind::W && g.index >= 1) return static_cast<std::size_t>(g.index);
        break;
    case Family::SurfaceOddP:
        if (g.kind == GenKind::Z && g.index == 0) return 1;
        if (g.kind == GenKind::Y && g.index >= 1) return 2 * static_cast<std::size_t>(g.index);
        if (g.kind == GenKind::Z && g.index >= 1) return 2 * static_cast<std::size_t>(g.index) + 1;
        break;
    }
    throw std::invalid_argument("generator " + g.name() + " not in family " + case_name());
}

std::vector<Generator> GeneratorSet::up_to_par(long long par_bound) const {
    std::vector<Generator> out;
    for (std::size_t t = 0;; ++t) {
        Generator g = generator(t);
        if (g.bidegree.par > par_bound) break;
        out.push_back(g);
    }
    return out;
}

std::size_t GeneratorSet::count_up_to_par(long long par_bound) const {
    return up_to_par(par_bound).size();
}

Generator GeneratorSet::by_name(const std::string& name) const {
    if (name.empty()) throw std::invalid_argument("empty generator name");
    if (name == "e") return generator(0);
    char c = name[0];
    int j = 0;
    try {
        j = std::stoi(name.substr(1));
    } catch (const std::exception&) {
        throw std::invalid_argument("bad generator name: " + name);
    }
    Generator g;
    switch (c) {
    case 'x': g.kind = GenKind::X; break;
    case 'y': g.kind = GenKind::Y; break;
    case 'z': g.kind = GenKind::Z; break;
    case 'w': g.kind = GenKind::W; break;
    default: throw std::invalid_argument("bad generator name: " + name);
    }
    g.index = j;
    if ((g.kind == GenKind::X || g.kind == GenKind::Y || g.kind == GenKind::W) && j < 1)
        throw std::invalid_argument("bad generator index: " + name);
    if (g.kind == GenKind::Z && j < 0)
        throw std::invalid_argument("bad generator index: " + name);
    return generator(ordinal_of(g)); // fills bidegree and validates family
}

} // namespace confalg
