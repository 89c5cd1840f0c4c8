#include "cli.hpp"

#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "confalg/basis.hpp"
#include "confalg/expr.hpp"
#include "confalg/parallel.hpp"
#include "confalg/series.hpp"
#include "confalg/stability.hpp"
#include "confalg/strategy.hpp"
#include "confalg/trace.hpp"
#include "confalg/words.hpp"

namespace confalg {

namespace {

struct Sink {
    std::string out_file;

    // writes the artifact; a trailing newline is part of the byte contract
    int write(const std::string& text, std::ostream& out, std::ostream& err) const {
        std::string body = text;
        if (body.empty() || body.back() != '\n') body += '\n';
        if (out_file.empty()) {
            out << body;
            return 0;
        }
        std::ofstream f(out_file, std::ios::binary);
        if (!f) {
            err << "confalg: cannot open " << out_file << " for writing\n";
            return 1;
        }
        f << body;
        return f.good() ? 0 : 1;
    }
};

std::string render_json(const nlohmann::ordered_json& j) { return j.dump(2); }

/* Generic markdown rendering of a report object: top-level scalars as a
 * bullet list, arrays and objects nested one level. Deterministic because
 * ordered_json preserves insertion order. */
std::string render_md(const nlohmann::ordered_json& j, const std::string& title) {
    std::ostringstream os;
    os << "# " << title << "\n";
    for (const auto& [key, val] : j.items()) {
        if (val.is_array()) {
            os << "- " << key << " (" << val.size() << ")\n";
            std::size_t shown = 0;
            for (const auto& item : val) {
                if (shown == 20) {
                    os << "  - ... " << (val.size() - shown) << " more\n";
                    break;
                }
                os << "  - " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
                ++shown;
            }
        } else if (val.is_object()) {
            os << "- " << key << ":\n";
            for (const auto& [k2, v2] : val.items())
                os << "  - " << k2 << ": " << (v2.is_string() ? v2.get<std::string>() : v2.dump())
                   << "\n";
        } else {
            os << "- " << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
               << "\n";
        }
    }
    return os.str();
}

std::string render_table(const DimTable& t, const std::string& format) {
    if (format == "csv") return t.to_csv();
    if (format == "md") return t.to_md();
    return render_json(t.to_json());
}

std::string render_report(const nlohmann::ordered_json& j, const std::string& format,
                          const std::string& title) {
    if (format == "md") return render_md(j, title);
    return render_json(j);
}

ExprPtr parse_class_flag(const ExprContext& ctx, const std::string& name) {
    if (name == "e^p") {
        std::vector<ExprPtr> fs(static_cast<std::size_t>(ctx.p.value()), expr_gen(ctx, "e"));
        return expr_product(std::move(fs));
    }
    return expr_gen(ctx, name); // e, x<j>, y<j>, z<j>, w<j>, validated by the family
}

struct Options {
    int p = 2;
    int n = 2;
    int m = 1;
    long long k_max = 20;
    long long max_deg = 10;
    long long max_par = 20;
    long long slack = 0;
    long long walk_cap = 12;
    int threads = 0;
    bool strict = false;
    std::string format = "json";
    std::string class_name;
    Sink sink;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bigraded homology of configuration spaces of R^n over F_p:\n"
                 "dimension tables, stability range verification, Browder bracket\n"
                 "certificates, and the F_2 operation-word classifier.",
                 "confalg"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, std::initializer_list<const char*> formats) {
        sub->add_option("--out", o.sink.out_file, "Write the artifact to FILE instead of stdout");
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember(std::vector<std::string>(formats.begin(), formats.end())));
        sub->add_option("--threads", o.threads,
                        "Worker threads (0 = all cores); results do not depend on it")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_pn = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "Coefficient prime")->check(CLI::PositiveNumber);
        sub->add_option("--n", o.n, "Ambient dimension, n >= 2")->check(CLI::Range(2, 1000));
    };

    CLI::App* dim = app.add_subcommand("dim-table", "Dimension grid by direct basis enumeration");
    add_pn(dim);
    dim->add_option("--max-deg", o.max_deg, "Largest homological degree")->check(CLI::NonNegativeNumber);
    dim->add_option("--max-par", o.max_par, "Largest particle count")->check(CLI::NonNegativeNumber);
    add_common(dim, {"csv", "json", "md"});

    CLI::App* poi = app.add_subcommand("poincare", "The same grid from the Poincare series");
    add_pn(poi);
    poi->add_option("--max-deg", o.max_deg, "Largest homological degree")->check(CLI::NonNegativeNumber);
    poi->add_option("--max-par", o.max_par, "Largest particle count")->check(CLI::NonNegativeNumber);
    add_common(poi, {"csv", "json", "md"});

    CLI::App* cone = app.add_subcommand("cone-dim", "Dimension grid of the order-m mapping cone");
    add_pn(cone);
    cone->add_option("--m", o.m, "Cone order (0 = the full algebra)")->check(CLI::NonNegativeNumber);
    cone->add_option("--max-deg", o.max_deg, "Largest homological degree")->check(CLI::NonNegativeNumber);
    cone->add_option("--max-par", o.max_par, "Largest particle count")->check(CLI::NonNegativeNumber);
    add_common(cone, {"csv", "json", "md"});

    CLI::App* ver = app.add_subcommand(
        "verify-range", "Check the order-m stability range D(p,m,k) by exhaustive enumeration");
    add_pn(ver);
    ver->add_option("--m", o.m, "Range order, m >= 1")->check(CLI::PositiveNumber);
    ver->add_option("--k-max", o.k_max, "Largest source particle count")->check(CLI::NonNegativeNumber);
    ver->add_option("--slack", o.slack,
                    "Widen the checked degree range past the bound (sharpness probe)")
        ->check(CLI::NonNegativeNumber);
    add_common(ver, {"json", "md"});

    CLI::App* opt = app.add_subcommand(
        "optimality", "Find the first cokernel class above D(p,m,k): the bound is sharp");
    add_pn(opt);
    opt->add_option("--m", o.m, "Range order, m >= 1")->check(CLI::PositiveNumber);
    opt->add_option("--k-max", o.k_max, "Largest source particle count searched")
        ->check(CLI::NonNegativeNumber);
    add_common(opt, {"json", "md"});

    CLI::App* br = app.add_subcommand(
        "bracket-check", "Certify [z, e] = 0 with a replayable trace; classes: e, x<j>, y<j>, "
                         "z<j>, w<j>, e^p");
    add_pn(br);
    br->add_option("--class", o.class_name, "Class to bracket against the point")->required();
    add_common(br, {"json", "md"});

    CLI::App* wv = app.add_subcommand(
        "words-verify", "Classify F_2 operation words (n > 2) and verify the unstable range");
    wv->add_option("--n", o.n, "Ambient dimension, n >= 3")->check(CLI::Range(3, 1000));
    wv->add_option("--m", o.m, "Range order, m >= 1")->check(CLI::PositiveNumber);
    wv->add_option("--max-par", o.max_par, "Largest particle count")->check(CLI::PositiveNumber);
    wv->add_flag("--strict", o.strict, "Demand strict inequality (fails on the boundary)");
    wv->add_option("--walk-cap", o.walk_cap, "Particle bound for the explicit monomial walk")
        ->check(CLI::NonNegativeNumber);
    add_common(wv, {"json", "md"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help(); // delegates to the parsed subcommand when one was named
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "confalg: " << e.what() << "\n";
        return 1;
    }

    try {
        if (dim->parsed() || poi->parsed()) {
            GeneratorSet gs = GeneratorSet::for_params(Prime(o.p), o.n);
            DimTable t;
            if (dim->parsed()) {
                t = dim_table(gs, o.max_deg, o.max_par, o.threads);
            } else {
                Series2 s = poincare(gs, o.max_deg, o.max_par);
                t.case_name = gs.case_name();
                t.p = o.p;
                t.max_deg = o.max_deg;
                t.max_par = o.max_par;
                t.dims.assign(static_cast<std::size_t>(o.max_deg + 1),
                              std::vector<std::uint64_t>(static_cast<std::size_t>(o.max_par + 1)));
                for (long long i = 0; i <= o.max_deg; ++i)
                    for (long long k = 0; k <= o.max_par; ++k)
                        t.dims[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = s.at(i, k);
            }
            return o.sink.write(render_table(t, o.format), out, err);
        }

        if (cone->parsed()) {
            GeneratorSet gs = GeneratorSet::for_params(Prime(o.p), o.n);
            DimTable t;
            t.case_name = gs.case_name() + " cone m=" + std::to_string(o.m);
            t.p = o.p;
            t.max_deg = o.max_deg;
            t.max_par = o.max_par;
            t.dims.assign(static_cast<std::size_t>(o.max_deg + 1),
                          std::vector<std::uint64_t>(static_cast<std::size_t>(o.max_par + 1)));
            parallel_for(static_cast<std::size_t>(o.max_deg + 1), o.threads, [&](std::size_t i) {
                for (long long k = 0; k <= o.max_par; ++k)
                    t.dims[i][static_cast<std::size_t>(k)] =
                        cone_dim(gs, o.m, Bidegree{static_cast<long long>(i), k});
            });
            return o.sink.write(render_table(t, o.format), out, err);
        }

        if (ver->parsed()) {
            GeneratorSet gs = GeneratorSet::for_params(Prime(o.p), o.n);
            // --m M states the range D(p,M,k); the map checked is by w_{M-1}
            VerifyReport rep = verify_iso_range(gs, o.m - 1, o.k_max, o.threads, o.slack);
            int rc = o.sink.write(render_report(rep.to_json(), o.format, rep.statement), out, err);
            return rc != 0 ? rc : (rep.pass() ? 0 : 2);
        }

        if (opt->parsed()) {
            GeneratorSet gs = GeneratorSet::for_params(Prime(o.p), o.n);
            auto w = optimality_witness(gs, o.m - 1, o.k_max);
            nlohmann::ordered_json j = witness_report(gs, o.m - 1, o.k_max, w);
            int rc = o.sink.write(render_report(j, o.format, "optimality"), out, err);
            return rc != 0 ? rc : (w.has_value() ? 0 : 2);
        }

        if (br->parsed()) {
            ExprContext ctx{Prime(o.p), o.n};
            ExprPtr z = parse_class_flag(ctx, o.class_name);
            ProofTrace trace = check_point_bracket(z);
            std::string lines = trace.to_json_lines();
            ReplayResult replay = replay_trace(lines);
            if (!replay.ok) {
                err << "confalg: trace replay failed: " << replay.message << "\n";
                return 2;
            }
            std::string artifact = lines;
            if (o.format == "md") {
                nlohmann::ordered_json j;
                j["class"] = o.class_name;
                j["p"] = o.p;
                j["n"] = o.n;
                j["verdict"] = verdict_name(trace.verdict);
                if (trace.verdict == Verdict::NormalForm)
                    j["normal_form"] = serialize(trace.normal_form);
                j["steps"] = trace.steps.size();
                j["replayed"] = replay.steps_checked;
                artifact = render_md(j, "bracket-check");
            }
            int rc = o.sink.write(artifact, out, err);
            return rc != 0 ? rc : (trace.verdict == Verdict::Unknown ? 2 : 0);
        }

        // words-verify
        WordRangeOptions wopts;
        wopts.strict = o.strict;
        wopts.monomial_walk_cap = o.walk_cap;
        wopts.threads = o.threads;
        WordRangeReport rep = verify_word_ranges(o.n, o.m, o.max_par, wopts);
        int rc = o.sink.write(render_report(rep.to_json(), o.format, "word-ranges"), out, err);
        return rc != 0 ? rc : (rep.passed() ? 0 : 2);
    } catch (const std::exception& e) {
        err << "confalg: " << e.what() << "\n";
        return 1;
    }
}

} // namespace confalg
