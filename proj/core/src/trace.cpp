#include "confalg/trace.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace confalg {

using json = nlohmann::ordered_json;

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Vanishes: return "vanishes";
    case Verdict::NormalForm: return "normal-form";
    case Verdict::Unknown: return "unknown";
    }
    throw std::logic_error("unreachable verdict");
}

std::string ProofTrace::to_json_lines() const {
    std::ostringstream out;
    json head;
    head["kind"] = "initial";
    head["p"] = ctx.p.value();
    head["n"] = ctx.n;
    head["expr"] = serialize(initial);
    out << head.dump() << "\n";
    for (const auto& st : steps) {
        json line;
        line["kind"] = "step";
        line["rule"] = st.rule;
        line["pos"] = st.pos;
        line["expr"] = serialize(st.expr);
        out << line.dump() << "\n";
    }
    json tail;
    tail["kind"] = "verdict";
    tail["verdict"] = verdict_name(verdict);
    if (verdict == Verdict::NormalForm) tail["expr"] = serialize(normal_form);
    out << tail.dump() << "\n";
    return out.str();
}

namespace {

std::vector<json> parse_lines(const std::string& text) {
    std::vector<json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(json::parse(line));
    }
    if (lines.empty()) throw std::invalid_argument("empty trace");
    return lines;
}

} // namespace

ProofTrace parse_trace(const std::string& json_lines) {
    std::vector<json> lines = parse_lines(json_lines);
    const json& head = lines.front();
    if (head.at("kind") != "initial") throw std::invalid_argument("trace must open with the initial line");
    ExprContext ctx(Prime(head.at("p").get<int>()), head.at("n").get<int>());
    ProofTrace tr{ctx, parse_expr(head.at("expr").get<std::string>(), ctx), {}, Verdict::Unknown, nullptr};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const json& line = lines[i];
        std::string kind = line.at("kind").get<std::string>();
        if (kind == "step") {
            TraceStep st;
            st.rule = line.at("rule").get<std::string>();
            st.pos = line.at("pos").get<Position>();
            st.expr = parse_expr(line.at("expr").get<std::string>(), ctx);
            tr.steps.push_back(std::move(st));
        } else if (kind == "verdict") {
            std::string v = line.at("verdict").get<std::string>();
            if (v == "vanishes") tr.verdict = Verdict::Vanishes;
            else if (v == "normal-form") {
                tr.verdict = Verdict::NormalForm;
                tr.normal_form = parse_expr(line.at("expr").get<std::string>(), ctx);
            } else if (v == "unknown") tr.verdict = Verdict::Unknown;
            else throw std::invalid_argument("unknown verdict: " + v);
            if (i + 1 != lines.size()) throw std::invalid_argument("verdict must be the last line");
        } else {
            throw std::invalid_argument("unknown trace line kind: " + kind);
        }
    }
    return tr;
}

ReplayResult replay_trace(const std::string& json_lines) {
    ReplayResult res;
    std::vector<json> lines;
    try {
        lines = parse_lines(json_lines);
    } catch (const std::exception& ex) {
        res.message = std::string("unreadable trace: ") + ex.what();
        return res;
    }
    try {
        const json& head = lines.front();
        if (head.at("kind") != "initial") {
            res.message = "trace must open with the initial line";
            return res;
        }
        ExprContext ctx(Prime(head.at("p").get<int>()), head.at("n").get<int>());
        ExprPtr current = parse_expr(head.at("expr").get<std::string>(), ctx);
        bool saw_verdict = false;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const json& line = lines[i];
            std::string kind = line.at("kind").get<std::string>();
            if (kind == "step") {
                if (saw_verdict) {
                    res.message = "step after verdict";
                    return res;
                }
                std::string rule = line.at("rule").get<std::string>();
                Position pos = line.at("pos").get<Position>();
                ExprPtr next;
                try {
                    next = apply_rule(current, rule, pos);
                } catch (const std::exception& ex) {
                    res.message = "step " + std::to_string(res.steps_checked + 1) + " (" +
                                  rule + "): " + ex.what();
                    return res;
                }
                std::string recorded = line.at("expr").get<std::string>();
                if (serialize(next) != recorded) {
                    res.message = "step " + std::to_string(res.steps_checked + 1) + " (" + rule +
                                  "): recorded result does not match the replay: " + recorded +
                                  " vs " + serialize(next);
                    return res;
                }
                current = next;
                ++res.steps_checked;
            } else if (kind == "verdict") {
                saw_verdict = true;
                std::string v = line.at("verdict").get<std::string>();
                if (v == "vanishes") {
                    if (!is_zero(current)) {
                        res.message = "verdict claims vanishing but the final expression is " +
                                      serialize(current);
                        return res;
                    }
                } else if (v == "normal-form") {
                    ExprPtr nf = parse_expr(line.at("expr").get<std::string>(), ctx);
                    if (!expr_equal(nf, current)) {
                        res.message = "verdict normal form " + serialize(nf) +
                                      " does not match the final expression " + serialize(current);
                        return res;
                    }
                } else if (v != "unknown") {
                    res.message = "unknown verdict: " + v;
                    return res;
                }
            } else {
                res.message = "unknown trace line kind: " + kind;
                return res;
            }
        }
        if (!saw_verdict) {
            res.message = "trace has no verdict line";
            return res;
        }
        res.ok = true;
        res.message = "replayed " + std::to_string(res.steps_checked) + " steps";
        return res;
    } catch (const std::exception& ex) {
        res.message = std::string("malformed trace: ") + ex.what();
        return res;
    }
}

} // namespace confalg
