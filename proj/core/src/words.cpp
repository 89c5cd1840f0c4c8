#include "confalg/words.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "confalg/parallel.hpp"
#include "confalg/stability.hpp"

namespace confalg {

namespace {

Bidegree advance(const Bidegree& b, const WordOp& op, int n) {
    if (op.xi) return Bidegree{2 * b.deg + (n - 1), 2 * b.par};
    // squares keep the same target shape (s + deg, 2 par) as honest Q's
    return Bidegree{op.s + b.deg, 2 * b.par};
}

} // namespace

OpWord::OpWord(int n) : n_(n) {
    if (n <= 2) throw std::invalid_argument("OpWord: the Q window is empty unless n > 2");
}

bool OpWord::outer_square() const {
    if (ops_.empty() || ops_.back().xi) return false;
    Bidegree b{0, 1};
    for (std::size_t i = 0; i + 1 < ops_.size(); ++i) b = advance(b, ops_[i], n_);
    return ops_.back().s == b.deg;
}

OpWord OpWord::with_q(long long s) const {
    if (outer_square())
        throw std::invalid_argument("OpWord: cannot operate on a square; reduce it first");
    long long q = bidegree_.deg;
    if (s < q) throw std::invalid_argument("OpWord: Q^" + std::to_string(s) +
                                           " kills degree " + std::to_string(q));
    if (s - q >= n_ - 1)
        throw std::domain_error("OpWord: Q^" + std::to_string(s) + " is outside the window at degree " +
                                std::to_string(q));
    OpWord out = *this;
    out.ops_.push_back(WordOp{false, s});
    out.bidegree_ = advance(bidegree_, out.ops_.back(), n_);
    return out;
}

OpWord OpWord::with_xi() const {
    if (outer_square())
        throw std::invalid_argument("OpWord: cannot operate on a square; reduce it first");
    OpWord out = *this;
    out.ops_.push_back(WordOp{true, 0});
    out.bidegree_ = advance(bidegree_, out.ops_.back(), n_);
    return out;
}

OpWord OpWord::pop_outer() const {
    if (ops_.empty()) throw std::invalid_argument("OpWord: e has no outer op");
    OpWord out(n_);
    for (std::size_t i = 0; i + 1 < ops_.size(); ++i) {
        out.ops_.push_back(ops_[i]);
        out.bidegree_ = advance(out.bidegree_, ops_[i], n_);
    }
    return out;
}

std::string OpWord::str() const {
    std::string out;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (it->xi)
            out += "xi ";
        else
            out += "Q" + std::to_string(it->s) + " ";
    }
    return out + "e";
}

OpWord OpWord::omega(int j, int n) {
    if (j < 1 || j > 60) throw std::invalid_argument("omega: index out of range");
    OpWord w(n); // rejects n <= 2
    for (int i = 0; i < j; ++i) w = w.with_q(1LL << i);
    return w;
}

int OpWord::omega_index() const {
    if (ops_.empty()) return 0;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (ops_[i].xi || ops_[i].s != (1LL << i)) return 0;
    }
    return static_cast<int>(ops_.size());
}

bool operator<(const OpWord& a, const OpWord& b) {
    if (a.bidegree_.par != b.bidegree_.par) return a.bidegree_.par < b.bidegree_.par;
    if (a.bidegree_.deg != b.bidegree_.deg) return a.bidegree_.deg < b.bidegree_.deg;
    // outermost-first lexicographic tie-break
    auto ai = a.ops_.rbegin(), bi = b.ops_.rbegin();
    for (; ai != a.ops_.rend() && bi != b.ops_.rend(); ++ai, ++bi) {
        if (ai->xi != bi->xi) return bi->xi; // Q before xi
        if (!ai->xi && ai->s != bi->s) return ai->s < bi->s;
    }
    return a.ops_.size() < b.ops_.size();
}

WordMonomial::WordMonomial(std::vector<OpWord> fs) : factors(std::move(fs)) {
    std::sort(factors.begin(), factors.end());
}

Bidegree WordMonomial::bidegree() const {
    Bidegree b{0, 0};
    for (const auto& f : factors) {
        b.deg += f.bidegree().deg;
        b.par += f.bidegree().par;
    }
    return b;
}

std::string WordMonomial::str() const {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += " * ";
        const auto& f = factors[i];
        out += f.ops().empty() ? f.str() : "(" + f.str() + ")";
    }
    return out;
}

namespace {

struct WordCase {
    bool ideal = false;
    std::string tag;  // i..vi or "ideal"
    std::string note; // the printed case
};

/* Case analysis for a single reduced word. Total: a reduced word is e, an
 * omega, or an admissible op applied to one of those or to a shorter reduced
 * word, and every branch below lands in exactly one case. */
WordCase classify_word(const OpWord& w, int m) {
    if (int j = w.omega_index(); j > 0) {
        if (j < m) return {true, "ideal", "omega_" + std::to_string(j) + " generates the ideal"};
        return {false, "i", "omega_j with j >= m"};
    }
    if (w.empty()) return {true, "ideal", "the point class e generates the ideal"};

    const WordOp outer = w.ops().back();
    OpWord inner = w.pop_outer();
    int ij = inner.omega_index();
    if (outer.xi) {
        if (inner.empty()) return {false, "vi", "xi e"};
        if (ij > 0) return {false, "ii", "xi omega_j"};
        WordCase sub = classify_word(inner, m);
        // inner cannot be ideal here: the only ideal words are e and omega_j
        return {false, "iii", "operation on the unstable word (" + inner.str() + "), case " + sub.tag};
    }
    if (inner.empty()) return {false, "vi", "Q^s e with 1 < s < n-1"};
    if (ij > 0) return {false, "v", "Q^s omega_j above the omega ladder"};
    WordCase sub = classify_word(inner, m);
    return {false, "iii", "operation on the unstable word (" + inner.str() + "), case " + sub.tag};
}

} // namespace

Classification classify(const WordMonomial& w, int n, int m) {
    if (m < 1) throw std::invalid_argument("classify: m >= 1");
    for (std::size_t i = 0; i < w.factors.size(); ++i) {
        const auto& f = w.factors[i];
        if (f.n() != n) throw std::invalid_argument("classify: factor built for a different n");
        if (!f.outer_square()) continue;
        OpWord half = f.pop_outer();
        std::vector<OpWord> fs;
        fs.reserve(w.factors.size() + 1);
        for (std::size_t j = 0; j < w.factors.size(); ++j) {
            if (j == i) continue;
            fs.push_back(w.factors[j]);
        }
        fs.push_back(half);
        fs.push_back(half);
        Classification out;
        out.verdict = WordVerdict::Reduces;
        out.tag = "Q-degenerate";
        out.justification = "Q^{deg} is squaring: (" + f.str() + ") = (" + half.str() + ")^2";
        out.reduced = WordMonomial(std::move(fs));
        return out;
    }
    for (const auto& f : w.factors) {
        WordCase c = classify_word(f, m);
        if (c.ideal) {
            Classification out;
            out.verdict = WordVerdict::IdealMember;
            out.tag = "ideal";
            out.justification = "factor " + f.str() + ": " + c.note;
            return out;
        }
    }
    Classification out;
    out.verdict = WordVerdict::Unstable;
    if (w.factors.empty()) {
        out.tag = "iv";
        out.justification = "empty product; bidegree (0,0) meets every range";
    } else if (w.factors.size() == 1) {
        WordCase c = classify_word(w.factors.front(), m);
        out.tag = c.tag;
        out.justification = c.note;
    } else {
        out.tag = "iv";
        out.justification = "product of unstable words; the bound is linear in par with zero intercept";
    }
    return out;
}

std::vector<OpWord> enumerate_reduced_words(int n, long long par_bound) {
    std::vector<OpWord> out;
    std::deque<OpWord> queue;
    queue.emplace_back(n);
    while (!queue.empty()) {
        OpWord w = std::move(queue.front());
        queue.pop_front();
        if (w.bidegree().par > par_bound) continue;
        if (2 * w.bidegree().par <= par_bound) {
            long long q = w.bidegree().deg;
            for (long long s = q + 1; s - q < n - 1; ++s) queue.push_back(w.with_q(s));
            queue.push_back(w.with_xi());
        }
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool& saturated) {
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    if (a > cap - b) {
        saturated = true;
        return cap;
    }
    return a + b;
}

} // namespace

WordRangeReport verify_word_ranges(int n, int m, long long par_bound, const WordRangeOptions& opts) {
    if (m < 1) throw std::invalid_argument("verify_word_ranges: m >= 1");
    if (par_bound < 1) throw std::invalid_argument("verify_word_ranges: par_bound >= 1");
    WordRangeReport rep;
    rep.n = n;
    rep.m = m;
    rep.par_bound = par_bound;
    rep.strict = opts.strict;

    const RangeConstant rc = range_constant(Prime(2), m);
    // product closure of the word-level check needs the zero intercept
    if (rc.C != 0)
        throw std::logic_error("verify_word_ranges: nonzero intercept breaks product closure");
    auto in_range = [&](const Bidegree& b) {
        Rational bound = rc.at(b.par);
        return opts.strict ? Rational(b.deg) > bound : Rational(b.deg) >= bound;
    };

    const std::vector<OpWord> words = enumerate_reduced_words(n, par_bound);
    rep.words_checked = words.size();

    std::vector<Classification> cls(words.size());
    parallel_for(words.size(), opts.threads,
                 [&](std::size_t i) { cls[i] = classify(WordMonomial({words[i]}), n, m); });

    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto& w = words[i];
        ++rep.word_tags[cls[i].tag];
        if (cls[i].verdict != WordVerdict::Unstable) continue;
        Rational bound = rc.at(w.bidegree().par);
        if (rep.boundary.empty() && Rational(w.bidegree().deg) == bound)
            rep.boundary = w.str() + " at (" + std::to_string(w.bidegree().deg) + "," +
                           std::to_string(w.bidegree().par) + ") = D";
        if (!in_range(w.bidegree()))
            rep.violations.push_back("word " + w.str() + " (" + std::to_string(w.bidegree().deg) + "," +
                                     std::to_string(w.bidegree().par) + ") below D = " + bound.str() +
                                     " [" + cls[i].tag + "]");
    }

    /* Monomial-count recurrence: exact multiset counts of products of
     * non-ideal words per bidegree, within the grid deg,par <= par_bound.
     * Factors of degree beyond the grid cannot appear in a grid cell, so
     * dropping them keeps the counts exact. The forbidden cells (below D)
     * must all count zero; saturation only ever overstates a count. */
    const long long G = par_bound;
    std::vector<std::vector<std::uint64_t>> counts(
        static_cast<std::size_t>(G + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(G + 1), 0));
    counts[0][0] = 1; // the unit monomial
    bool saturated = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (cls[i].verdict != WordVerdict::Unstable) continue;
        const Bidegree wb = words[i].bidegree();
        if (wb.deg > G) continue;
        for (long long d = 0; d + wb.deg <= G; ++d)
            for (long long k = 0; k + wb.par <= G; ++k) {
                std::uint64_t c = counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
                if (!c) continue;
                auto& cell =
                    counts[static_cast<std::size_t>(d + wb.deg)][static_cast<std::size_t>(k + wb.par)];
                cell = sat_add(cell, c, saturated);
            }
    }
    rep.counts_saturated = saturated;
    for (long long k = 0; k <= G; ++k) {
        Rational bound = rc.at(k);
        for (long long d = 0; d <= G; ++d) {
            bool forbidden = opts.strict ? Rational(d) <= bound : Rational(d) < bound;
            if (!forbidden) continue;
            std::uint64_t c = counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            if (c)
                rep.violations.push_back("recurrence: " + std::to_string(c) +
                                         " non-ideal monomial(s) at (" + std::to_string(d) + "," +
                                         std::to_string(k) + ") below D = " + bound.str());
        }
    }

    /* Explicit multiset walk under the cap: classify every monomial and
     * cross-check the recurrence cell by cell. */
    const long long cap = std::min(par_bound, opts.monomial_walk_cap);
    std::vector<std::vector<std::uint64_t>> walk_counts(
        static_cast<std::size_t>(cap + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(cap + 1), 0));
    std::vector<OpWord> stack;
    std::size_t walked = 0;
    bool walk_ok = true;
    auto visit = [&](const WordMonomial& mono) {
        ++walked;
        Classification c = classify(mono, n, m);
        ++rep.monomial_tags[c.tag];
        if (c.verdict == WordVerdict::Reduces) {
            walk_ok = false; // reduced factors never square
            rep.violations.push_back("walk: unexpected reduction at " + mono.str());
            return;
        }
        const Bidegree b = mono.bidegree();
        if (c.verdict == WordVerdict::Unstable) {
            if (b.deg <= cap && b.par <= cap)
                ++walk_counts[static_cast<std::size_t>(b.deg)][static_cast<std::size_t>(b.par)];
            if (!in_range(b))
                rep.violations.push_back("walk: monomial " + mono.str() + " (" + std::to_string(b.deg) +
                                         "," + std::to_string(b.par) + ") below D = " +
                                         rc.at(b.par).str() + " [" + c.tag + "]");
        }
    };
    // factors in nondecreasing enumeration order so each multiset appears once
    auto walk = [&](auto&& self, std::size_t from, long long par_left) -> void {
        visit(WordMonomial(stack));
        for (std::size_t i = from; i < words.size(); ++i) {
            if (cls[i].verdict != WordVerdict::Unstable) continue;
            if (words[i].bidegree().par > par_left) continue;
            stack.push_back(words[i]);
            self(self, i, par_left - words[i].bidegree().par);
            stack.pop_back();
        }
    };
    walk(walk, 0, cap);
    rep.walk_monomials = walked;

    for (long long d = 0; d <= cap && walk_ok; ++d)
        for (long long k = 0; k <= cap; ++k) {
            std::uint64_t want = walk_counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            std::uint64_t got = counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
            if (want != got) {
                walk_ok = false;
                rep.violations.push_back("recurrence disagrees with walk at (" + std::to_string(d) + "," +
                                         std::to_string(k) + "): " + std::to_string(got) + " vs " +
                                         std::to_string(want));
                break;
            }
        }
    rep.walk_grid_consistent = walk_ok;
    return rep;
}

nlohmann::ordered_json WordRangeReport::to_json() const {
    nlohmann::ordered_json j;
    j["statement"] = "word-ranges";
    j["params"] = {{"p", 2}, {"n", n}, {"m", m}, {"par_bound", par_bound}, {"strict", strict}};
    j["checked"] = {{"words", words_checked},
                    {"walk_monomials", walk_monomials},
                    {"walk_grid_consistent", walk_grid_consistent},
                    {"counts_saturated", counts_saturated}};
    j["word_tags"] = word_tags;
    j["monomial_tags"] = monomial_tags;
    j["violations"] = violations;
    if (!boundary.empty()) j["boundary"] = boundary;
    j["pass"] = passed();
    return j;
}

} // namespace confalg
