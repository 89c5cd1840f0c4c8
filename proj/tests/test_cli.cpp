#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "confalg/trace.hpp"

using namespace confalg;

namespace {
struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}
} // namespace

TEST_CASE("dim-table emits the expected grid") {
    Run r = cli({"dim-table", "--p", "3", "--n", "2", "--max-deg", "2", "--max-par", "4",
                 "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "i\\k,0,1,2,3,4\n0,1,1,1,1,1\n1,0,0,1,1,1\n2,0,0,0,0,0\n");

    Run j = cli({"dim-table", "--p", "3", "--n", "2", "--max-deg", "2", "--max-par", "4"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["p"] == 3);
    CHECK(parsed["dims"][1][2] == 1);
    CHECK(parsed["dims"][1][1] == 0);
}

TEST_CASE("poincare reproduces dim-table byte for byte") {
    std::vector<std::string> base = {"--p", "2", "--n", "2", "--max-deg", "8", "--max-par", "12",
                                     "--format", "csv"};
    std::vector<std::string> a = {"dim-table"}, b = {"poincare"};
    a.insert(a.end(), base.begin(), base.end());
    b.insert(b.end(), base.begin(), base.end());
    Run ra = cli(a), rb = cli(b);
    CHECK(ra.code == 0);
    CHECK(rb.code == 0);
    CHECK(ra.out == rb.out);
}

TEST_CASE("identical invocations are byte-identical") {
    std::vector<std::string> args = {"verify-range", "--p", "3", "--n", "2", "--m", "1",
                                     "--k-max", "10"};
    Run r1 = cli(args), r2 = cli(args);
    CHECK(r1.out == r2.out);
    std::vector<std::string> t1 = {"dim-table", "--p", "5", "--n", "2", "--max-deg", "6",
                                   "--max-par", "6", "--threads", "1", "--format", "md"};
    std::vector<std::string> t3 = t1;
    t3[t3.size() - 3] = "3";
    CHECK(cli(t1).out == cli(t3).out); // thread count does not leak into output
}

TEST_CASE("verify-range exit codes") {
    Run pass = cli({"verify-range", "--p", "3", "--n", "2", "--m", "1", "--k-max", "12"});
    CHECK(pass.code == 0);
    auto j = nlohmann::json::parse(pass.out);
    CHECK(j["violations"].empty());

    Run fail = cli({"verify-range", "--p", "3", "--n", "2", "--m", "1", "--k-max", "12",
                    "--slack", "1"});
    CHECK(fail.code == 2); // sharpness probe crosses the boundary
    Run md = cli({"verify-range", "--p", "2", "--n", "2", "--m", "2", "--k-max", "10",
                  "--format", "md"});
    CHECK(md.code == 0);
    CHECK(md.out.find("# iso-range") == 0);
}

TEST_CASE("optimality reports the first witness") {
    Run r = cli({"optimality", "--p", "2", "--n", "2", "--m", "1", "--k-max", "10"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["witness"]["monomial"] == "x1");
    CHECK(j["witness"]["k"] == 1);
}

TEST_CASE("cone-dim quotients the stability classes") {
    Run r = cli({"cone-dim", "--p", "3", "--n", "2", "--m", "1", "--max-deg", "1", "--max-par",
                 "3", "--format", "csv"});
    CHECK(r.code == 0);
    // killing e leaves z0 alone in degree 1
    CHECK(r.out == "i\\k,0,1,2,3\n0,1,0,0,0\n1,0,0,1,0\n");
}

TEST_CASE("bracket-check emits replayable traces") {
    Run r = cli({"bracket-check", "--p", "3", "--n", "2", "--class", "y1"});
    CHECK(r.code == 0);
    ReplayResult rep = replay_trace(r.out);
    CHECK(rep.ok);
    CHECK(r.out.find("\"verdict\":\"vanishes\"") != std::string::npos);

    Run nf = cli({"bracket-check", "--p", "3", "--n", "2", "--class", "e", "--format", "md"});
    CHECK(nf.code == 0);
    CHECK(nf.out.find("normal-form") != std::string::npos);
    CHECK(nf.out.find("gen(z0)") != std::string::npos);

    Run ep = cli({"bracket-check", "--p", "3", "--n", "2", "--class", "e^p"});
    CHECK(ep.code == 0);
    CHECK(replay_trace(ep.out).ok);
}

TEST_CASE("words-verify exit codes") {
    Run ok = cli({"words-verify", "--n", "3", "--m", "1", "--max-par", "16"});
    CHECK(ok.code == 0);
    Run strict = cli({"words-verify", "--n", "3", "--m", "1", "--max-par", "16", "--strict"});
    CHECK(strict.code == 2);
}

TEST_CASE("usage errors exit with status one") {
    CHECK(cli({"dim-table", "--p", "4", "--n", "2"}).code == 1);    // not prime
    CHECK(cli({"dim-table", "--p", "3", "--n", "1"}).code == 1);    // n < 2
    CHECK(cli({"no-such-command"}).code == 1);
    CHECK(cli({}).code == 1);                                       // a subcommand is required
    CHECK(cli({"dim-table", "--format", "yaml"}).code == 1);        // unknown format
    CHECK(cli({"bracket-check", "--p", "3", "--n", "2", "--class", "q1"}).code == 1);
    CHECK(cli({"bracket-check", "--p", "3", "--n", "2"}).code == 1); // --class is required
    CHECK(cli({"verify-range", "--p", "3", "--n", "2", "--m", "0"}).code == 1);
    CHECK(cli({"words-verify", "--n", "2", "--m", "1"}).code == 1); // words need n >= 3
    Run help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("bracket-check") != std::string::npos);
}

TEST_CASE("--out writes the artifact to a file") {
    std::string path = "cli_out_test.json";
    Run r = cli({"words-verify", "--n", "3", "--m", "1", "--max-par", "8", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream body;
    body << f.rdbuf();
    auto j = nlohmann::json::parse(body.str());
    CHECK(j["pass"] == true);
    f.close();
    std::remove(path.c_str());
}
