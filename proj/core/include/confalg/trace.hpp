#pragma once

#include <string>
#include <vector>

#include "confalg/rewrite.hpp"

namespace confalg {

enum class Verdict { Vanishes, NormalForm, Unknown };

std::string verdict_name(Verdict v);

struct TraceStep {
    std::string rule;
    Position pos;
    ExprPtr expr; // the whole expression after this step
};

/* A replayable derivation: the initial expression, every rewrite step with
 * the rule name, the position it fired at, and the resulting expression, and
 * a final verdict. Vanishes claims the final expression is zero; NormalForm
 * claims it equals `normal_form` and that no further strategy step applies;
 * Unknown makes no claim.
 *
 * The text form is JSON lines:
 *   {"kind":"initial","p":3,"n":2,"expr":"br(gen(y1),gen(e))"}
 *   {"kind":"step","rule":"antisym","pos":[0],"expr":"..."}
 *   {"kind":"verdict","verdict":"vanishes"}
 */
struct ProofTrace {
    ExprContext ctx;
    ExprPtr initial;
    std::vector<TraceStep> steps;
    Verdict verdict = Verdict::Unknown;
    ExprPtr normal_form; // set when verdict == NormalForm

    ExprPtr final_expr() const { return steps.empty() ? initial : steps.back().expr; }
    std::string to_json_lines() const;
};

struct ReplayResult {
    bool ok = false;
    std::size_t steps_checked = 0;
    std::string message;
};

/* Re-derives the trace from its text form: parses the initial expression,
 * re-applies every step through the rule table, and compares each recorded
 * expression against the recomputed one. A Vanishes verdict must land on
 * zero and a NormalForm verdict on the recorded normal form. The checker
 * trusts nothing but the rule table; it never consults the search strategy
 * that produced the trace. */
ReplayResult replay_trace(const std::string& json_lines);

ProofTrace parse_trace(const std::string& json_lines);

} // namespace confalg
