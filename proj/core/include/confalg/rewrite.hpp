#pragma once

#include <functional>
#include <string>
#include <vector>

#include "confalg/expr.hpp"

namespace confalg {

/* One named rewrite step. `apply` matches at the root of the given subtree
 * and returns the replacement, or nullptr when the pattern does not match.
 * Every rule preserves the inferred bidegree of the node it rewrites. */
struct RewriteRule {
    std::string name;
    std::string statement; // the identity the rule encodes, in text form
    std::function<ExprPtr(const ExprPtr&)> apply;
};

const std::vector<RewriteRule>& rule_table();
const RewriteRule* find_rule(const std::string& name);

/* Positions address subtrees by child index from the root. Child order is
 * the stored order: brackets are [0]=left, [1]=right; ad is [0]=operand,
 * [1]=argument; unary nodes have the single child at [0]. */
using Position = std::vector<int>;

ExprPtr subexpr_at(const ExprPtr& root, const Position& pos);

/* Rewrites the subtree at `pos` with the named rule, then rebuilds the spine
 * through the normalizing constructors (so the result is again normal: zeros
 * absorb, sums re-merge, products re-sort). Throws std::domain_error when
 * the rule does not match there; try_rule returns nullptr instead. */
ExprPtr apply_rule(const ExprPtr& root, const std::string& rule_name, const Position& pos);
ExprPtr try_rule(const ExprPtr& root, const std::string& rule_name, const Position& pos);

} // namespace confalg
