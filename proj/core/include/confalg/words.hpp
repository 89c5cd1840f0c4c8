#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confalg/bidegree.hpp"

namespace confalg {

struct WordOp {
    bool xi = false; // true: the top operation; false: Q^s
    long long s = 0; // exponent when !xi

    friend bool operator==(const WordOp& a, const WordOp& b) {
        return a.xi == b.xi && (a.xi || a.s == b.s);
    }
};

/* Formal operation word on the point class over F_2, ambient n > 2. Ops are
 * stored in application order (innermost first); display and canonical order
 * are outermost-first. Construction enforces the Q window at every level.
 * A degenerate op is a value, not a word: Q^s below the degree is the zero
 * class and is rejected, Q^{deg} is a square and is tolerated only as the
 * outermost op so the classifier can reduce it; stacking anything on top of
 * a square is a construction error. */
class OpWord {
public:
    explicit OpWord(int n);

    OpWord with_q(long long s) const;
    OpWord with_xi() const;
    OpWord pop_outer() const;

    int n() const { return n_; }
    const Bidegree& bidegree() const { return bidegree_; }
    const std::vector<WordOp>& ops() const { return ops_; }
    bool empty() const { return ops_.empty(); }
    bool outer_square() const;
    std::string str() const;

    /* the omega ladder Q^{2^{j-1}} ... Q^2 Q^1 e of bidegree (2^j - 1, 2^j);
     * needs n > 2 for the window 1 < n-1 at every level */
    static OpWord omega(int j, int n);
    // j >= 1 when this word is omega(j), 0 otherwise
    int omega_index() const;

    friend bool operator==(const OpWord& a, const OpWord& b) {
        return a.n_ == b.n_ && a.ops_ == b.ops_;
    }
    friend bool operator<(const OpWord& a, const OpWord& b);

private:
    int n_;
    std::vector<WordOp> ops_;
    Bidegree bidegree_{0, 1};
};

/* A formal product of words; the empty factor list is the unit monomial.
 * Factors are kept in canonical order and the bidegree is additive. */
struct WordMonomial {
    std::vector<OpWord> factors;

    WordMonomial() = default;
    explicit WordMonomial(std::vector<OpWord> fs);

    Bidegree bidegree() const;
    std::string str() const;
};

enum class WordVerdict { IdealMember, Unstable, Reduces };

/* Verdict plus the printed case justifying it: tags i..vi for the unstable
 * cases, Q-degenerate for a square reduction, ideal for membership in
 * K_{m-1} = (e, omega_1, ..., omega_{m-1}). */
struct Classification {
    WordVerdict verdict;
    std::string tag;
    std::string justification;
    WordMonomial reduced; // populated for Reduces
};

Classification classify(const WordMonomial& w, int n, int m);

// all strictly reduced words (no degenerate op anywhere) with par <= par_bound
std::vector<OpWord> enumerate_reduced_words(int n, long long par_bound);

struct WordRangeOptions {
    bool strict = false;              // demand deg > D instead of deg >= D
    long long monomial_walk_cap = 12; // explicit multiset walk particle bound
    int threads = 0;
};

/* Checks that every monomial in words with particle count <= par_bound that
 * is not in the ideal K_{m-1} lies in the m-th unstable range, by exact
 * rational comparison against D(2,m,par):
 *   - every reduced word is classified and checked individually;
 *   - products are covered exactly because D(2,m,k) is linear in k with zero
 *     intercept, so sums of unstable factors stay unstable; the same fact is
 *     verified numerically by a monomial-count recurrence over the full grid
 *     whose forbidden region (below D, off the ideal) must count zero;
 *   - an explicit multiset walk up to monomial_walk_cap re-derives the grid
 *     counts and checks each monomial directly.
 * Reports per-tag histograms for words and walked monomials. */
struct WordRangeReport {
    int n = 0;
    int m = 0;
    long long par_bound = 0;
    bool strict = false;
    std::size_t words_checked = 0;
    std::size_t walk_monomials = 0;
    bool walk_grid_consistent = false;
    bool counts_saturated = false;
    std::map<std::string, std::uint64_t> word_tags;
    std::map<std::string, std::uint64_t> monomial_tags;
    std::vector<std::string> violations;
    std::string boundary; // a word meeting D with equality, when one exists

    bool passed() const { return violations.empty() && walk_grid_consistent; }
    nlohmann::ordered_json to_json() const;
};

WordRangeReport verify_word_ranges(int n, int m, long long par_bound,
                                   const WordRangeOptions& opts = {});

} // namespace confalg
