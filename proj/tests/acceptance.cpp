/* Acceptance gate: one check per release criterion, each printed as a single
 * [PASS]/[FAIL] line with its runtime. Exit status is the number of failed
 * criteria (0 = release ready). */

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "confalg/basis.hpp"
#include "confalg/expr.hpp"
#include "confalg/series.hpp"
#include "confalg/stability.hpp"
#include "confalg/strategy.hpp"
#include "confalg/trace.hpp"
#include "confalg/words.hpp"

using namespace confalg;

namespace {

int failures = 0;

void report(int idx, const std::string& label, bool ok, double seconds, const std::string& extra) {
    std::printf("[%s] %d. %s [%.2fs]%s%s\n", ok ? "PASS" : "FAIL", idx, label.c_str(), seconds,
                extra.empty() ? "" : " ", extra.c_str());
    if (!ok) ++failures;
}

template <typename F>
void criterion(int idx, const std::string& label, double budget_s, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string extra;
    try {
        ok = body(extra);
    } catch (const std::exception& e) {
        ok = false;
        extra = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt > budget_s) {
        ok = false;
        extra += (extra.empty() ? "" : "; ") + std::string("over time budget");
    }
    report(idx, label, ok, dt, extra);
}

} // namespace

int main() {
    criterion(1, "enumeration equals the generating function (p=2,3,5; i<=20, k<=60)", 30.0,
              [](std::string& extra) {
                  std::uint64_t cells = 0;
                  for (int p : {2, 3, 5}) {
                      GeneratorSet gs = GeneratorSet::for_params(Prime(p), 2);
                      DimTable t = dim_table(gs, 20, 60, 0);
                      Series2 s = poincare(gs, 20, 60);
                      for (long long i = 0; i <= 20; ++i)
                          for (long long k = 0; k <= 60; ++k) {
                              if (t.at(i, k) != s.at(i, k)) {
                                  extra = "first mismatch p=" + std::to_string(p) + " at (" +
                                          std::to_string(i) + "," + std::to_string(k) + ")";
                                  return false;
                              }
                              ++cells;
                          }
                  }
                  extra = std::to_string(cells) + " cells agree";
                  return true;
              });

    criterion(2, "first-order range: point-multiplication cokernel empty for i <= D(p,1,k), "
                 "k <= 60, and the bound is sharp at (1,2)",
              0, [](std::string& extra) {
                  for (int p : {2, 3, 5}) {
                      GeneratorSet gs = GeneratorSet::for_params(Prime(p), 2);
                      VerifyReport rep = verify_iso_range(gs, 0, 60, 0);
                      if (!rep.pass()) {
                          extra = "violations at p=" + std::to_string(p);
                          return false;
                      }
                      auto w = optimality_witness(gs, 0, 60);
                      const char* want = (p == 2) ? "x1" : "z0";
                      if (!w || w->target != Bidegree{1, 2} || w->source_k != 1 ||
                          w->monomial != want || !(Rational(w->i) > w->bound)) {
                          extra = "witness shape off at p=" + std::to_string(p);
                          return false;
                      }
                  }
                  extra = "witnesses: x1 (p=2), z0 (p=3,5) at (1,2) from k=1";
                  return true;
              });

    criterion(3, "second-order range: cokernel on the point-quotient empty for i <= D(p,2,k), "
                 "k <= 40 (p=2 via x1, p=3 via y1)",
              0, [](std::string& extra) {
                  for (int p : {2, 3}) {
                      GeneratorSet gs = GeneratorSet::for_params(Prime(p), 2);
                      VerifyReport rep = verify_iso_range(gs, 1, 40, 0);
                      if (!rep.pass()) {
                          extra = "violations at p=" + std::to_string(p);
                          return false;
                      }
                      auto w = optimality_witness(gs, 1, 40);
                      if (!w) {
                          extra = "no boundary witness within k<=40 at p=" + std::to_string(p);
                          return false;
                      }
                      extra += (extra.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) +
                               " witness " + w->monomial + " at " + w->target.str() + " from k=" +
                               std::to_string(w->source_k);
                  }
                  return true;
              });

    criterion(4, "higher-order ranges pass (p=2 orders 1..4, p=3 orders 1..3, k <= 48)", 120.0,
              [](std::string& extra) {
                  std::uint64_t checked = 0;
                  GeneratorSet f2 = GeneratorSet::for_params(Prime(2), 2);
                  for (int m = 0; m <= 3; ++m) {
                      VerifyReport rep = verify_iso_range(f2, m, 48, 0);
                      if (!rep.pass()) {
                          extra = "p=2 fails at multiplier order " + std::to_string(m);
                          return false;
                      }
                      checked += rep.checked;
                  }
                  GeneratorSet f3 = GeneratorSet::for_params(Prime(3), 2);
                  for (int m = 0; m <= 2; ++m) {
                      VerifyReport rep = verify_iso_range(f3, m, 48, 0);
                      if (!rep.pass()) {
                          extra = "p=3 fails at multiplier order " + std::to_string(m);
                          return false;
                      }
                      checked += rep.checked;
                  }
                  extra = std::to_string(checked) + " bidegrees checked";
                  return true;
              });

    criterion(5, "bracket against the point vanishes with replayable traces; [e,e] at odd p, "
                 "n=2 normalizes to z0",
              0, [](std::string& extra) {
                  ExprContext p2n2{Prime(2), 2}, p3n2{Prime(3), 2}, p3n3{Prime(3), 3},
                      p2n4{Prime(2), 4}, p3n4{Prime(3), 4};
                  std::vector<ExprPtr> vanish = {
                      expr_product({expr_gen(p3n2, "e"), expr_gen(p3n2, "e"), expr_gen(p3n2, "e")}),
                      expr_gen(p2n2, "e"),
                      expr_gen(p3n3, "e"),
                      expr_q(2, expr_gen(p2n4, "w1")),
                      expr_q(1, expr_gen(p3n4, "e")),
                      expr_gen(p2n2, "x1"),
                      expr_gen(p2n2, "x2"),
                      expr_gen(p3n2, "y1"),
                      expr_gen(p3n2, "y2"),
                      expr_gen(p3n2, "z0"),
                      expr_gen(p3n2, "z1"),
                  };
                  std::size_t steps = 0;
                  for (const auto& z : vanish) {
                      ProofTrace t = check_point_bracket(z);
                      ReplayResult r = replay_trace(t.to_json_lines());
                      if (t.verdict != Verdict::Vanishes || !r.ok) {
                          extra = "failed for z = " + serialize(z);
                          return false;
                      }
                      steps += r.steps_checked;
                  }
                  ProofTrace nf = check_point_bracket(expr_gen(p3n2, "e"));
                  ReplayResult nr = replay_trace(nf.to_json_lines());
                  if (nf.verdict != Verdict::NormalForm || !nr.ok ||
                      serialize(nf.normal_form) != "gen(z0)") {
                      extra = "[e,e] at p=3, n=2 did not normalize to z0";
                      return false;
                  }
                  extra = std::to_string(vanish.size()) + " vanishing certificates, " +
                          std::to_string(steps + nr.steps_checked) + " replayed steps";
                  return true;
              });

    criterion(6, "antisymmetry and the characteristic-p self-bracket identities hold on >= 100 "
                 "sampled expressions per (n,p) in {2,3}x{2,3}",
              0, [](std::string& extra) {
                  for (int n : {2, 3})
                      for (int p : {2, 3}) {
                          ExprContext ctx{Prime(p), n};
                          auto samples = sample_expressions(ctx, 140, 20260822ULL);
                          SignCheckReport rep = verify_sign_identities(ctx, samples);
                          if (!rep.all_ok() || samples.size() < 100 ||
                              rep.antisym_involution < 100 || rep.antisym_coefficient < 100 ||
                              rep.jacobi_diagonal < 100) {
                              extra = "p=" + std::to_string(p) + ", n=" + std::to_string(n) + ": " +
                                      (rep.all_ok() ? "too few applicable samples"
                                                    : rep.violations.front());
                              return false;
                          }
                      }
                  extra = "140 samples per context";
                  return true;
              });

    criterion(7, "operation-word ranges: every non-ideal monomial has deg >= D(2,m,par) "
                 "(n=3,4,5; m=1,2,3; particles <= 64)",
              60.0, [](std::string& extra) {
                  std::size_t words = 0;
                  for (int n : {3, 4, 5})
                      for (int m : {1, 2, 3}) {
                          WordRangeReport rep = verify_word_ranges(n, m, 64);
                          if (!rep.passed()) {
                              extra = "n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                                      " reported " + std::to_string(rep.violations.size()) +
                                      " violations";
                              return false;
                          }
                          words += rep.words_checked;
                      }
                  extra = std::to_string(words) + " words classified";
                  return true;
              });

    criterion(8, "H_1 is one-dimensional for k >= 2 and trivial below (p=2,3,5)", 0,
              [](std::string& extra) {
                  for (int p : {2, 3, 5}) {
                      GeneratorSet gs = GeneratorSet::for_params(Prime(p), 2);
                      for (long long k = 0; k <= 60; ++k) {
                          std::uint64_t want = k >= 2 ? 1 : 0;
                          if (dim(gs, Bidegree{1, k}) != want) {
                              extra = "p=" + std::to_string(p) + ", k=" + std::to_string(k);
                              return false;
                          }
                      }
                  }
                  extra = "k <= 60 at each prime";
                  return true;
              });

    if (failures == 0)
        std::printf("acceptance: all 8 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
