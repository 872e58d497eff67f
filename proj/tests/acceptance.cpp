// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Tolerances and sample sizes are pinned below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/pipeline.hpp"
#include "symrtlo/rules.hpp"
#include "symrtlo/verify.hpp"

namespace symrtlo {
namespace {

using testing::all_fixtures;
using testing::fixture_path;
using testing::load_fixture;
using testing::read_text;
using testing::squash;

constexpr double kFsmExampleSeconds = 5.0;
constexpr double kGoldenSeconds = 10.0;
constexpr int kCompleteMachines = 200;
constexpr std::size_t kCompleteMaxStates = 6;
constexpr double kCompleteSeconds = 60.0;
constexpr int kPartialMachines = 50;
constexpr std::size_t kPartialMaxStates = 8;
constexpr std::size_t kPartialTraceDepth = 6;
constexpr double kPartialSeconds = 120.0;
constexpr int kCombPairs = 500;
constexpr unsigned kCombMaxInputBits = 12;
constexpr double kCombSeconds = 120.0;
constexpr int kGapTrials = 1000;
constexpr int kGapMinHits = 990;
constexpr int kConflictCases = 200;
constexpr int kPassKDraws = 100000;
constexpr double kPassKTolerance = 0.01;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string &why) {
    if (pass)
      detail = why;
    pass = false;
  }
};

const RuleLibrary &library() {
  static const RuleLibrary lib = load_rules(std::string(SYMRTLO_RULES) + "/default.json");
  return lib;
}

OptimizeResult optimize_fixture(const std::string &fixture, Goal goal,
                                std::vector<RewriteTemplate> injected = {}) {
  OptimizeOptions o;
  o.goal = goal;
  o.injected = std::move(injected);
  std::string path = fixture_path(fixture);
  return optimize(parse_file(path), read_text(path), fixture, library(), o);
}

std::string normalized(Design d) {
  d.name = "m";
  return squash(emit(d));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1 ---------------------------------------------------------------------

Outcome fsm_example_reduction() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  OptimizeResult r = optimize_fixture("fsm_example1_state.v", Goal::Area);
  if (!r.report.success || !r.report.fsm || !r.report.fsm->applied) {
    o.fail("optimization did not apply the reduced machine");
    return o;
  }
  const std::map<std::string, std::string> classes = {
      {"S0", "S0_S4"}, {"S1", "S1"},    {"S2", "S2"},
      {"S3", "S3_S5"}, {"S4", "S0_S4"}, {"S5", "S3_S5"}};
  for (const auto &[from, to] : classes)
    if (r.report.fsm->mapping.count(from) == 0 || r.report.fsm->mapping.at(from) != to)
      o.fail("state " + from + " not merged into " + to);

  // Rows: state, then the successor on in = 00, 01, 10, 11.
  const char *reduced[4][5] = {{"S2", "S1", "S3_S5", "S2", "S0_S4"},
                               {"S0_S4", "S0_S4", "S1", "S2", "S3_S5"},
                               {"S1", "S0_S4", "S3_S5", "S1", "S3_S5"},
                               {"S3_S5", "S1", "S0_S4", "S0_S4", "S3_S5"}};
  SymbolicFsm g = extract_fsm(r.design);
  if (g.states.size() != 4)
    o.fail("re-emitted machine has " + std::to_string(g.states.size()) + " states");
  const char *symbols[4] = {"00", "01", "10", "11"};
  for (const auto &row : reduced) {
    auto q = g.find_state(row[0]);
    if (!q) {
      o.fail(std::string("missing state ") + row[0]);
      continue;
    }
    for (std::size_t s = 0; s < g.symbol_count(); ++s) {
      std::string name = g.symbol_name(s);
      std::size_t col = 4;
      for (std::size_t c = 0; c < 4; ++c)
        if (name.size() >= 2 && name.substr(name.size() - 2) == symbols[c])
          col = c;
      if (col == 4 || !g.next[*q][s] || g.states[*g.next[*q][s]] != row[col + 1])
        o.fail(std::string(row[0]) + " on " + name + " does not go to " +
               (col < 4 ? row[col + 1] : "?"));
    }
  }
  const auto &last = r.report.verification.back();
  if (last.stage != "final" || last.verdict.verdict != Verdict::Equivalent ||
      last.verdict.mode != CheckMode::ProductReachability)
    o.fail("final verdict " + last.verdict.summary());
  EquivalenceVerdict direct = check_equiv_seq(load_fixture("fsm_example1_state.v"),
                                              r.design, SeqMode::product());
  if (!direct.equivalent())
    o.fail("product check " + direct.summary());
  double s = seconds_since(t0);
  if (s >= kFsmExampleSeconds)
    o.fail("took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = "6 -> 4 states, product reachability Equivalent";
  return o;
}

// --- 2 ---------------------------------------------------------------------

Outcome golden_rewrites() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::string raw, golden;
    std::vector<std::string> templates;
  };
  const std::vector<Case> cases = {
      {"dce_raw.v", "dce_golden.v", {"DeadCodeElimination"}},
      {"cse_raw.v", "cse_golden.v", {"CommonSubexpressionElimination"}},
      {"algsimp_raw.v",
       "algsimp_golden.v",
       {"AlgebraicSimplification", "TemporaryVariableElimination",
        "DeadCodeElimination"}}};
  for (const auto &c : cases) {
    Design d = load_fixture(c.raw);
    std::size_t accepted = 0;
    for (const auto &name : c.templates) {
      Application app = apply_template(d, *find_template(name));
      // A step with nothing left to rewrite is a no-op, not a rejection.
      if (!app.entry.accepted && app.entry.reason != "no-op")
        o.fail(c.raw + ": " + name + " rejected, " + app.entry.reason.value_or(""));
      accepted += app.entry.accepted;
      d = app.design;
    }
    if (accepted == 0)
      o.fail(c.raw + ": nothing was rewritten");
    Design golden = load_fixture(c.golden);
    if (normalized(d) != normalized(golden))
      o.fail(c.raw + ": result differs from " + c.golden);
    Design raw = load_fixture(c.raw);
    EquivalenceVerdict narrow =
        check_equiv_comb(testing::with_parameter(raw, "BW", 2),
                         testing::with_parameter(golden, "BW", 2), CombMode::Exhaustive);
    if (!narrow.equivalent() || narrow.mode != CheckMode::Exhaustive)
      o.fail(c.raw + " at BW=2: " + narrow.summary());
    EquivalenceVerdict wide = check_equiv_comb(raw, golden, CombMode::Propositional);
    if (!wide.equivalent())
      o.fail(c.raw + " at BW=8: " + wide.summary());
  }
  double s = seconds_since(t0);
  if (s >= kGoldenSeconds)
    o.fail("took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = "3/3 goldens, exhaustive at BW=2 and miter at BW=8";
  return o;
}

// --- 3 ---------------------------------------------------------------------

Outcome complete_machine_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  int agree = 0;
  for (int trial = 0; trial < kCompleteMachines; ++trial) {
    std::size_t n = 1 + rng() % kCompleteMaxStates;
    unsigned bits = 1 + rng() % 2; // |Σ| is 2 or 4
    SymbolicFsm f = testing::random_machine(rng, n, bits, 1 + rng() % 3);
    MinimizeResult m = minimize(f);
    if (m.fsm.states.size() == testing::brute_force_minimum(f))
      ++agree;
    else if (o.pass)
      o.fail("trial " + std::to_string(trial) + " disagrees:\n" + f.describe());
  }
  double s = seconds_since(t0);
  if (s >= kCompleteSeconds)
    o.fail("took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = std::to_string(agree) + "/" + std::to_string(kCompleteMachines) +
               " match the partition oracle";
  return o;
}

// --- 4 ---------------------------------------------------------------------

// Compatibility by greatest fixpoint, written independently of the library.
std::vector<std::vector<bool>> compatible_matrix(const SymbolicFsm &f) {
  std::size_t n = f.states.size(), k = f.symbol_count();
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, true));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t s = 0; s < k; ++s)
        if (f.out[p][s] != f.out[q][s])
          ok[p][q] = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (!ok[p][q])
          continue;
        for (std::size_t s = 0; s < k; ++s)
          if (f.next[p][s] && f.next[q][s] && !ok[*f.next[p][s]][*f.next[q][s]]) {
            ok[p][q] = ok[q][p] = false;
            changed = true;
            break;
          }
      }
  }
  return ok;
}

// Smallest closed cover by exhaustive search over all compatible classes.
// Each step adds a class containing the first uncovered state, or else a
// class containing the first unsatisfied implied set; any closed cover
// contains such a class, so no smaller cover is missed.
std::size_t exhaustive_cover_size(const SymbolicFsm &f, std::size_t limit) {
  std::size_t n = f.states.size(), k = f.symbol_count();
  auto ok = compatible_matrix(f);
  std::vector<std::uint32_t> classes;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool all = true;
    for (std::size_t p = 0; p < n && all; ++p)
      for (std::size_t q = p + 1; q < n && all; ++q)
        if ((mask >> p & 1) && (mask >> q & 1) && !ok[p][q])
          all = false;
    if (all)
      classes.push_back(mask);
  }
  auto implied = [&](std::uint32_t c, std::size_t s) {
    std::uint32_t out = 0;
    for (std::size_t q = 0; q < n; ++q)
      if ((c >> q & 1) && f.next[q][s])
        out |= 1u << *f.next[q][s];
    return out;
  };
  std::size_t best = limit;
  std::vector<std::uint32_t> chosen;
  std::function<void()> go = [&] {
    if (chosen.size() >= best)
      return;
    std::uint32_t covered = 0;
    for (auto c : chosen)
      covered |= c;
    std::uint32_t need = 0;
    if (covered != (1u << n) - 1) {
      need = 1u << std::countr_one(covered);
    } else {
      for (auto c : chosen)
        for (std::size_t s = 0; s < k && !need; ++s) {
          std::uint32_t i = implied(c, s);
          if (i && std::none_of(chosen.begin(), chosen.end(),
                                [&](std::uint32_t d) { return (i & d) == i; }))
            need = i;
        }
      if (!need) {
        best = chosen.size();
        return;
      }
    }
    for (auto c : classes)
      if ((c & need) == need) {
        chosen.push_back(c);
        go();
        chosen.pop_back();
      }
  };
  go();
  return best;
}

Outcome partial_machine_exactness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4096);
  std::size_t merged = 0;
  for (int trial = 0; trial < kPartialMachines; ++trial) {
    std::size_t n = 2 + rng() % (kPartialMaxStates - 1);
    SymbolicFsm f = testing::random_machine(rng, n, 1, 2, 0.35);
    MinimizeResult m = minimize(f);
    std::size_t got = m.fsm.states.size();
    std::string tag = "trial " + std::to_string(trial) + ": ";
    if (!m.exact)
      o.fail(tag + "cover not flagged exact");
    std::size_t smaller = exhaustive_cover_size(f, got);
    if (smaller < got)
      o.fail(tag + "enumeration found " + std::to_string(smaller) + " classes, search " +
             std::to_string(got) + "\n" + f.describe());
    if (auto w = testing::trace_mismatch(f, m.fsm, kPartialTraceDepth))
      o.fail(tag + "traces differ after " + std::to_string(w->size()) + " symbols");
    merged += n - got;
  }
  double s = seconds_since(t0);
  if (s >= kPartialSeconds)
    o.fail("took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = std::to_string(kPartialMachines) + " machines minimal and trace-equivalent (" +
               std::to_string(merged) + " states merged)";
  return o;
}

// --- 5 ---------------------------------------------------------------------

Outcome verifier_soundness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(31337);
  std::vector<testing::Var> vars = {{"a", 4}, {"b", 3}, {"c", 1}, {"d", 4}};
  unsigned bits = 0;
  for (const auto &v : vars)
    bits += v.width;
  if (bits > kCombMaxInputBits)
    o.fail("generator exceeds the input-bit limit");
  int agree = 0, different = 0;
  for (int trial = 0; trial < kCombPairs; ++trial) {
    ExprPtr e = testing::random_expr(rng, vars, 3);
    ExprPtr f = rng() % 2 ? testing::commute(e, rng) : testing::perturb(e, rng);
    unsigned w = 1 + static_cast<unsigned>(rng() % 6);
    Design a = testing::comb_design("lhs", vars, w, e);
    Design b = testing::comb_design("rhs", vars, w, f);
    EquivalenceVerdict x = check_equiv_comb(a, b, CombMode::Exhaustive);
    EquivalenceVerdict y = check_equiv_comb(a, b, CombMode::Propositional);
    if (x.verdict == y.verdict)
      ++agree;
    else
      o.fail("pair " + std::to_string(trial) + ": " + emit_expr(*e) + " vs " +
             emit_expr(*f));
    if (y.verdict == Verdict::NotEquivalent) {
      ++different;
      if (!replay_differs(a, b, y))
        o.fail("pair " + std::to_string(trial) + ": counterexample does not replay");
    }
  }
  double s = seconds_since(t0);
  if (s >= kCombSeconds)
    o.fail("took " + std::to_string(s) + " s");
  if (o.pass)
    o.detail = std::to_string(agree) + "/" + std::to_string(kCombPairs) + " agree, " +
               std::to_string(different) + " counterexamples replayed";
  return o;
}

// --- 6 ---------------------------------------------------------------------

Outcome fault_injection_safety() {
  Outcome o;
  auto broken = testing::broken_templates();
  std::set<std::string> names;
  for (const auto &b : broken)
    names.insert(b.name);
  std::size_t rejected = 0;
  for (const auto &fx : all_fixtures()) {
    OptimizeResult r = optimize_fixture(fx, Goal::Area, broken);
    if (!r.report.success)
      o.fail(fx + ": " + r.report.failure.value_or("failed"));
    EquivalenceVerdict v = check_equiv(load_fixture(fx), r.design);
    if (!verdict_accepts(v))
      o.fail(fx + ": escaped, " + v.summary());
    std::set<std::string> seen;
    for (const auto &e : r.report.rewrite_log.entries) {
      if (!names.count(e.template_name))
        continue;
      seen.insert(e.template_name);
      if (e.accepted)
        o.fail(fx + ": " + e.template_name + " accepted");
      else
        ++rejected;
    }
    if (!r.report.plan.templates.empty() && seen.size() != names.size())
      o.fail(fx + ": only " + std::to_string(seen.size()) + " broken templates logged");
  }
  if (o.pass)
    o.detail = "0 escapes, " + std::to_string(rejected) + " broken applications rejected";
  return o;
}

// --- 7 ---------------------------------------------------------------------

Rule make_rule(std::string name, std::string pattern, std::string objectives) {
  Rule r;
  r.name = std::move(name);
  r.pattern = std::move(pattern);
  r.rewrite = "restructure the logic";
  r.category = "combinational/dataflow";
  r.objective_improvement = std::move(objectives);
  return r;
}

std::string search_text(const SearchResult &r) {
  std::ostringstream os;
  os.precision(17);
  for (const auto &s : r.ranked)
    os << s.rule->name << " " << s.score << "\n";
  os << "elbow " << r.elbow << "\n";
  for (const auto &f : r.filtered)
    os << "filtered " << f << "\n";
  for (const auto &s : r.selected)
    os << "selected " << s.rule->name << " " << s.score << "\n";
  return os.str();
}

Outcome retrieval_determinism() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> high(0.8, 0.9), low(0.1, 0.3);
  int hits = 0;
  for (int trial = 0; trial < kGapTrials; ++trial) {
    std::size_t m = 2 + rng() % 19;
    std::size_t k = 1 + rng() % (m - 1);
    std::vector<double> s;
    for (std::size_t i = 0; i < m; ++i)
      s.push_back(i < k ? high(rng) : low(rng));
    std::sort(s.rbegin(), s.rend());
    hits += elbow_cutoff(s) == k;
  }
  if (hits < kGapMinHits)
    o.fail("planted gap recovered " + std::to_string(hits) + "/" +
           std::to_string(kGapTrials));

  // Constructed conflicts: a rule tagged with one side of a table row and
  // serving that row's goal, queried for the opposing goal.
  const auto rows = ConflictTable::defaults().entries();
  const char *filler[] = {"adder", "shift", "mux", "state", "constant", "register"};
  int excluded = 0;
  for (int c = 0; c < kConflictCases; ++c) {
    const Conflict &row = rows[c % rows.size()];
    bool flip = (c / rows.size()) % 2;
    std::string tag = flip ? row.conflicting_pattern : row.pattern;
    Goal serves = flip ? row.conflicting_goal : row.goal;
    Goal asked = flip ? row.goal : row.conflicting_goal;
    std::vector<Rule> rules;
    rules.push_back(make_rule("Conflicting", "apply " + tag + " to the " +
                                                 filler[rng() % 6] + " path",
                              goal_name(serves)));
    std::size_t extra = rng() % 4;
    for (std::size_t i = 0; i < extra; ++i)
      rules.push_back(make_rule("Other" + std::to_string(i),
                                std::string(filler[rng() % 6]) + " " + filler[rng() % 6],
                                goal_name(asked)));
    RuleLibrary lib = RuleLibrary::build(rules);
    SearchResult r = search(tag + " " + filler[rng() % 6], asked, lib, 5);
    bool present = std::any_of(r.selected.begin(), r.selected.end(), [](const auto &s) {
      return s.rule->name == "Conflicting";
    });
    if (present)
      o.fail("conflict case " + std::to_string(c) + " (" + tag + ") not filtered");
    else
      ++excluded;
  }

  const std::vector<std::string> queries = {
      "detect multiplication by zero to improve area",
      "detect repeated subexpressions to improve power",
      "pipelining registers for timing", "zzz unknown words", ""};
  for (const auto &q : queries)
    for (Goal g : {Goal::Area, Goal::Power, Goal::Timing})
      if (search_text(search(q, g, library(), 5)) !=
          search_text(search(q, g, load_rules(std::string(SYMRTLO_RULES) +
                                              "/default.json"),
                             5)))
        o.fail("search output differs for '" + q + "'");
  if (o.pass)
    o.detail = "gap " + std::to_string(hits) + "/" + std::to_string(kGapTrials) +
               ", conflicts " + std::to_string(excluded) + "/" +
               std::to_string(kConflictCases) + ", search byte-identical";
  return o;
}

// --- 8 ---------------------------------------------------------------------

Outcome pass_at_k_sampling() {
  Outcome o;
  std::mt19937_64 rng(8);
  double worst = 0;
  for (auto [n, c] : {std::pair<int, int>{10, 5}, {10, 2}, {20, 7}})
    for (int k : {1, 5, 10}) {
      std::vector<int> pool(n, 0);
      std::fill(pool.begin(), pool.begin() + c, 1);
      int hits = 0;
      for (int i = 0; i < kPassKDraws; ++i) {
        std::shuffle(pool.begin(), pool.end(), rng);
        hits += std::any_of(pool.begin(), pool.begin() + k, [](int x) { return x; });
      }
      double closed = pass_at_k(n, c, {static_cast<std::uint64_t>(k)})[0];
      double gap = std::abs(static_cast<double>(hits) / kPassKDraws - closed);
      worst = std::max(worst, gap);
      if (gap > kPassKTolerance)
        o.fail("n=" + std::to_string(n) + " c=" + std::to_string(c) +
               " k=" + std::to_string(k) + " off by " + std::to_string(gap));
    }
  if (o.pass)
    o.detail = "max deviation " + std::to_string(worst);
  return o;
}

// --- 9 ---------------------------------------------------------------------

Outcome cost_direction() {
  Outcome o;
  const std::set<std::string> strict = {"dce_raw.v", "cse_raw.v", "algsimp_raw.v"};
  std::size_t lower = 0;
  for (const auto &fx : all_fixtures()) {
    OptimizeResult r = optimize_fixture(fx, Goal::Area);
    std::size_t before = r.report.cost_before.cells, after = r.report.cost_after.cells;
    if (after > before)
      o.fail(fx + ": cells " + std::to_string(before) + " -> " + std::to_string(after));
    if (strict.count(fx) && after >= before)
      o.fail(fx + ": no strict decrease");
    lower += after < before;
  }
  if (o.pass)
    o.detail = std::to_string(all_fixtures().size()) + " fixtures never grow, " +
               std::to_string(lower) + " shrink";
  return o;
}

// --- 10 --------------------------------------------------------------------

std::string report_without_timings(const std::string &path) {
  auto j = nlohmann::ordered_json::parse(read_text(path));
  j.erase("timings_ms");
  return j.dump();
}

Outcome cli_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "symrtlo_acceptance";
  fs::create_directories(dir);
  std::string out = (dir / "out.v").string(), report = (dir / "report.json").string();
  for (const auto &fx : all_fixtures()) {
    std::string texts[2], reports[2];
    for (int run = 0; run < 2; ++run) {
      fs::remove(out);
      fs::remove(report);
      std::string cmd = std::string("\"") + SYMRTLO_CLI + "\" optimize --input \"" +
                        fixture_path(fx) + "\" --goal area --seed 7 --rules \"" +
                        SYMRTLO_RULES + "/default.json\" --out \"" + out +
                        "\" --report \"" + report + "\" 2>/dev/null";
      int rc = std::system(cmd.c_str());
      if (rc != 0) {
        o.fail(fx + ": exit status " + std::to_string(rc));
        break;
      }
      texts[run] = read_text(out);
      reports[run] = report_without_timings(report);
    }
    if (texts[0] != texts[1])
      o.fail(fx + ": output Verilog differs between runs");
    if (reports[0] != reports[1])
      o.fail(fx + ": report differs between runs");
  }
  fs::remove_all(dir);
  if (o.pass)
    o.detail = std::to_string(all_fixtures().size()) +
               " fixtures byte-identical across two CLI runs";
  return o;
}

} // namespace
} // namespace symrtlo

int main() {
  using namespace symrtlo;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"fsm example reduction", fsm_example_reduction},
      {"golden rewrites", golden_rewrites},
      {"complete fsm oracle", complete_machine_oracle},
      {"partial fsm exactness", partial_machine_exactness},
      {"verifier soundness", verifier_soundness},
      {"pipeline safety under fault injection", fault_injection_safety},
      {"elbow and retrieval determinism", retrieval_determinism},
      {"pass@k closed form", pass_at_k_sampling},
      {"cost direction", cost_direction},
      {"end-to-end determinism", cli_determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double s = seconds_since(t0);
    std::printf("criterion %2zu %s  %-40s %7.2f s  %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, s, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
