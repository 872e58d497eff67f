// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/pipeline.hpp"

namespace symrtlo {
namespace {

using testing::all_fixtures;
using testing::fixture_path;
using testing::load_fixture;
using testing::read_text;
using testing::squash;

const RuleLibrary &library() {
  static const RuleLibrary lib = load_rules(std::string(SYMRTLO_RULES) + "/default.json");
  return lib;
}

OptimizeResult run(const std::string &fixture, Goal goal,
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

bool has_rule(const OptimizationPlan &p, const std::string &name) {
  for (const auto &[n, s] : p.selected_rules)
    if (n == name)
      return true;
  return false;
}

TEST(Adapter, SummaryIsStable) {
  StructuralAdapter a;
  Design d = load_fixture("fsm_example1_state.v");
  std::string s = a.summarize(d);
  EXPECT_EQ(s, a.summarize(load_fixture("fsm_example1_state.v")));
  EXPECT_NE(s.find("module example\n"), std::string::npos) << s;
  EXPECT_NE(s.find("fsm 6 states"), std::string::npos) << s;
  EXPECT_NE(a.summarize(load_fixture("dce_raw.v"))
                .find("opportunity: assignments whose values never reach an output (5 sites)"),
            std::string::npos);
  EXPECT_EQ(make_adapter("structural")->name(), "structural");
  EXPECT_THROW(make_adapter("remote"), Error);
}

TEST(Dispatch, PathsFollowFsmPresence) {
  StructuralAdapter a;
  OptimizationPlan fsm =
      dispatch(load_fixture("fsm_example1_state.v"), Goal::Power, library(), a, 5);
  EXPECT_TRUE(fsm.has(Path::Dataflow));
  EXPECT_TRUE(fsm.has(Path::Controlflow));
  OptimizationPlan comb = dispatch(load_fixture("cse_raw.v"), Goal::Area, library(), a, 5);
  EXPECT_EQ(comb.paths, std::vector<Path>{Path::Dataflow});
  EXPECT_NE(std::find(comb.templates.begin(), comb.templates.end(),
                      "CommonSubexpressionElimination"),
            comb.templates.end());
  for (const auto &t : comb.templates)
    EXPECT_NE(find_template(t), nullptr);
}

TEST(Dispatch, TemplatesFollowCanonicalOrder) {
  StructuralAdapter a;
  OptimizationPlan p = dispatch(load_fixture("algsimp_raw.v"), Goal::Area, library(), a, 5);
  std::vector<std::size_t> ranks;
  for (const auto &t : p.templates)
    for (std::size_t i = 0; i < builtin_templates().size(); ++i)
      if (builtin_templates()[i].name == t)
        ranks.push_back(i);
  EXPECT_TRUE(std::is_sorted(ranks.begin(), ranks.end()));
  EXPECT_FALSE(p.templates.empty());
}

TEST(Dispatch, ConflictingRuleIsDropped) {
  std::vector<Rule> rules = library().rules();
  Rule pipe;
  pipe.name = "Output Pipelining";
  pipe.pattern = "pipelining for assignments whose values never reach an output";
  pipe.rewrite = "insert pipelining registers";
  pipe.category = "combinational/dataflow";
  pipe.objective_improvement = "timing";
  rules.push_back(pipe);
  RuleLibrary lib = RuleLibrary::build(rules, ConflictTable::defaults());
  StructuralAdapter a;
  Design d = load_fixture("dce_raw.v");
  OptimizationPlan area = dispatch(d, Goal::Area, lib, a, 5);
  EXPECT_FALSE(has_rule(area, "Output Pipelining"));
  EXPECT_NE(std::find(area.filtered_rules.begin(), area.filtered_rules.end(),
                      "Output Pipelining"),
            area.filtered_rules.end());
  OptimizationPlan timing = dispatch(d, Goal::Timing, lib, a, 5);
  EXPECT_TRUE(has_rule(timing, "Output Pipelining"));
  EXPECT_NE(std::find(timing.advisory_rules.begin(), timing.advisory_rules.end(),
                      "Output Pipelining"),
            timing.advisory_rules.end());
}

TEST(Optimize, DeadCodeFixtureReachesGolden) {
  OptimizeResult r = run("dce_raw.v", Goal::Area);
  ASSERT_TRUE(r.report.success) << r.report.failure.value_or("");
  EXPECT_EQ(normalized(r.design), normalized(load_fixture("dce_golden.v")));
  EXPECT_LT(r.report.cost_after.cells, r.report.cost_before.cells);
  for (const auto &v : r.report.verification)
    EXPECT_TRUE(verdict_accepts(v.verdict)) << v.stage << " " << v.verdict.summary();
}

TEST(Optimize, GoldenRewritesThroughThePipeline) {
  OptimizeResult cse = run("cse_raw.v", Goal::Area);
  ASSERT_TRUE(cse.report.success);
  EXPECT_EQ(normalized(cse.design), normalized(load_fixture("cse_golden.v")))
      << cse.text;
  OptimizeResult alg = run("algsimp_raw.v", Goal::Area);
  ASSERT_TRUE(alg.report.success);
  EXPECT_EQ(normalized(alg.design), normalized(load_fixture("algsimp_golden.v")))
      << alg.text;
}

TEST(Optimize, ExampleMachineShrinks) {
  OptimizeResult r = run("fsm_example1_state.v", Goal::Area);
  ASSERT_TRUE(r.report.success) << r.report.failure.value_or("");
  ASSERT_TRUE(r.report.fsm.has_value());
  EXPECT_TRUE(r.report.fsm->applied);
  EXPECT_EQ(r.report.fsm->minimized_states.size(), 4u);
  EXPECT_EQ(r.report.cost_before.register_bits, 3u);
  EXPECT_EQ(r.report.cost_after.register_bits, 2u);
  EXPECT_EQ(extract_fsm(r.design).states.size(), 4u);
  const auto &final_v = r.report.verification.back();
  EXPECT_EQ(final_v.stage, "final");
  EXPECT_EQ(final_v.verdict.verdict, Verdict::Equivalent);
  EXPECT_EQ(final_v.verdict.mode, CheckMode::ProductReachability);
}

TEST(Optimize, OptimalInputIsLeftAlone) {
  std::string path = fixture_path("dce_golden.v");
  OptimizeResult r = run("dce_golden.v", Goal::Area);
  ASSERT_TRUE(r.report.success);
  EXPECT_EQ(r.text, read_text(path));
  for (const auto &e : r.report.rewrite_log.entries)
    EXPECT_FALSE(e.accepted) << e.template_name;
  EXPECT_EQ(r.report.input_sha256, r.report.output_sha256);
}

TEST(Optimize, SafetyUnderFaultInjection) {
  auto broken = testing::broken_templates();
  ASSERT_EQ(broken.size(), 10u);
  std::set<std::string> names;
  for (const auto &b : broken)
    names.insert(b.name);
  for (const auto &f : all_fixtures()) {
    if (f == "two_fsm.v")
      continue; // exercised below without injection
    OptimizeResult r = run(f, Goal::Area, broken);
    ASSERT_TRUE(r.report.success) << f << ": " << r.report.failure.value_or("");
    EquivalenceVerdict v = check_equiv(load_fixture(f), r.design);
    EXPECT_NE(v.verdict, Verdict::NotEquivalent) << f;
    std::size_t seen = 0;
    for (const auto &e : r.report.rewrite_log.entries)
      if (names.count(e.template_name)) {
        ++seen;
        EXPECT_FALSE(e.accepted) << f << " " << e.template_name << " " << (e.sites.empty() ? "" : e.sites[0].detail);
      }
    if (!r.report.plan.templates.empty())
      EXPECT_GE(seen, broken.size()) << f;
  }
}

TEST(Optimize, EveryGoalIsSafeAndNeverGrowsCells) {
  for (Goal g : {Goal::Area, Goal::Power, Goal::Timing})
    for (const auto &f : all_fixtures()) {
      OptimizeResult r = run(f, g);
      ASSERT_TRUE(r.report.success) << f;
      EXPECT_NE(check_equiv(load_fixture(f), r.design).verdict, Verdict::NotEquivalent)
          << f;
      if (g == Goal::Area)
        EXPECT_LE(r.report.cost_after.cells, r.report.cost_before.cells) << f;
    }
}

TEST(Optimize, Deterministic) {
  for (const auto &f : all_fixtures()) {
    OptimizeResult a = run(f, Goal::Area), b = run(f, Goal::Area);
    EXPECT_EQ(a.text, b.text) << f;
    EXPECT_EQ(a.report.to_json(false).dump(), b.report.to_json(false).dump()) << f;
  }
}

TEST(Verify, PolicyParsing) {
  EXPECT_EQ(VerifyPolicy::parse("auto")->formal, VerifyPolicy::Formal::Auto);
  EXPECT_EQ(VerifyPolicy::parse("sat")->formal, VerifyPolicy::Formal::Sat);
  auto b = VerifyPolicy::parse("bounded:12");
  ASSERT_TRUE(b);
  EXPECT_EQ(b->bounded_depth, 12u);
  EXPECT_EQ(b->describe(), "bounded:12");
  EXPECT_FALSE(VerifyPolicy::parse("bounded:"));
  EXPECT_FALSE(VerifyPolicy::parse("bounded:0"));
  EXPECT_FALSE(VerifyPolicy::parse("formal"));
}

TEST(Verify, FastFilterCatchesMismatch) {
  Design a = load_fixture("cse_raw.v");
  Design b = a;
  auto &ca = std::get<ContinuousAssign>(b.items[0]);
  ca.value = make_binary(BinaryOp::Sub, ca.value, make_unsized(1));
  EquivalenceVerdict v = verify_pair(a, b, VerifyPolicy{});
  EXPECT_EQ(v.verdict, Verdict::NotEquivalent);
  EXPECT_NE(v.bound.find("fast filter"), std::string::npos);
  EXPECT_TRUE(replay_differs(a, b, v));
}

TEST(PassAtK, ClosedForm) {
  EXPECT_DOUBLE_EQ(pass_at_k(10, 10, {1})[0], 1.0);
  EXPECT_DOUBLE_EQ(pass_at_k(10, 0, {5})[0], 0.0);
  EXPECT_NEAR(pass_at_k(10, 5, {1})[0], 0.5, 1e-12);
  EXPECT_NEAR(pass_at_k(10, 2, {2})[0], 1.0 - 28.0 / 45.0, 1e-12);
  EXPECT_THROW(pass_at_k(5, 6, {1}), Error);
  EXPECT_THROW(pass_at_k(5, 2, {0}), Error);
  EXPECT_THROW(pass_at_k(5, 2, {6}), Error);
}

TEST(PassAtK, Properties) {
  for (std::uint64_t n = 1; n <= 30; ++n)
    for (std::uint64_t c = 0; c <= n; ++c) {
      std::vector<std::uint64_t> ks;
      for (std::uint64_t k = 1; k <= n; ++k)
        ks.push_back(k);
      auto v = pass_at_k(n, c, ks);
      for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_GE(v[i], 0.0);
        EXPECT_LE(v[i], 1.0 + 1e-12);
        if (i)
          EXPECT_GE(v[i] + 1e-12, v[i - 1]);
      }
      EXPECT_NEAR(v.back(), c >= 1 ? 1.0 : 0.0, 1e-12);
    }
  // Large counts stay finite.
  EXPECT_NEAR(pass_at_k(2000, 1000, {1})[0], 0.5, 1e-9);
}

TEST(PassAtK, MatchesSampling) {
  std::mt19937_64 rng(11);
  for (auto [n, c] : {std::pair<int, int>{10, 5}, {10, 2}, {20, 7}})
    for (int k : {1, 5, 10}) {
      std::vector<int> pool(n, 0);
      std::fill(pool.begin(), pool.begin() + c, 1);
      int hits = 0;
      const int draws = 20000;
      for (int i = 0; i < draws; ++i) {
        std::shuffle(pool.begin(), pool.end(), rng);
        hits += std::any_of(pool.begin(), pool.begin() + k, [](int x) { return x; });
      }
      double closed = pass_at_k(n, c, {static_cast<std::uint64_t>(k)})[0];
      EXPECT_NEAR(static_cast<double>(hits) / draws, closed, 0.02) << n << " " << c;
    }
}

TEST(Report, HashAndShape) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  OptimizeResult r = run("fsm_example1_state.v", Goal::Area);
  auto j = r.report.to_json();
  for (const char *k : {"input", "output", "seed", "adapter", "success", "failure", "plan",
                        "rewrite_log", "fsm_summary", "verification", "cost_before",
                        "cost_after", "timings_ms"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["fsm_summary"]["mapping"]["S4"], "S0_S4");
  EXPECT_FALSE(r.report.to_json(false).contains("timings_ms"));
}

} // namespace
} // namespace symrtlo
