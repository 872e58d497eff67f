// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/rewrite.hpp"
#include "symrtlo/verify.hpp"

namespace symrtlo {
namespace {

using testing::load_fixture;
using testing::squash;

const RewriteTemplate &tmpl(const std::string &name) {
  const RewriteTemplate *t = find_template(name);
  if (!t)
    throw std::runtime_error("unknown template " + name);
  return *t;
}

Design apply(const Design &d, const std::string &name) {
  return apply_template(d, tmpl(name)).design;
}

std::string normalized(Design d) {
  d.name = "m";
  return squash(emit(d));
}

std::string normalized_fixture(const std::string &name) {
  return normalized(load_fixture(name));
}

CheckOutcome equivalence_hook(const Design &a, const Design &b) {
  EquivalenceVerdict v = check_equiv(a, b);
  return {v.verdict != Verdict::NotEquivalent, v.summary()};
}

TEST(Templates, RegistryAndAliases) {
  EXPECT_EQ(builtin_templates().size(), 7u);
  EXPECT_EQ(find_template("ZeroMultiplicationTemplate")->name,
            "AlgebraicSimplification");
  EXPECT_EQ(find_template("IntermediateVariableExtractionTemplate")->name,
            "CommonSubexpressionElimination");
  EXPECT_EQ(find_template("NoSuchTemplate"), nullptr);
  for (const auto &n : template_names())
    EXPECT_NE(find_template(n), nullptr) << n;
}

TEST(Templates, DeadCodeRemovesFiveAssigns) {
  Design d = load_fixture("dce_raw.v");
  Application app = apply_template(d, tmpl("DeadCodeElimination"));
  ASSERT_TRUE(app.entry.accepted);
  EXPECT_EQ(app.entry.sites.size(), 5u);
  EXPECT_EQ(normalized(app.design), normalized_fixture("dce_golden.v"));
}

TEST(Templates, SharedSubexpressionsMatchGolden) {
  Design d = load_fixture("cse_raw.v");
  Application app = apply_template(d, tmpl("CommonSubexpressionElimination"));
  ASSERT_TRUE(app.entry.accepted) << app.entry.reason.value_or("");
  EXPECT_EQ(app.entry.sites.size(), 2u);
  EXPECT_EQ(normalized(app.design), normalized_fixture("cse_golden.v"))
      << emit(app.design);
}

TEST(Templates, IdentityOperandsAndTemporaries) {
  Design d = load_fixture("algsimp_raw.v");
  d = apply(d, "AlgebraicSimplification");
  d = apply(d, "TemporaryVariableElimination");
  d = apply(d, "DeadCodeElimination");
  EXPECT_EQ(normalized(d), normalized_fixture("algsimp_golden.v")) << emit(d);
}

TEST(Templates, ZeroMultiplicationNeedsAZeroOperand) {
  Design d = parse("module m(input [7:0] a, input [7:0] b, output [7:0] y);\n"
                   "  assign y = a + b;\nendmodule\n");
  Application app = apply_template(d, tmpl("ZeroMultiplicationTemplate"));
  EXPECT_FALSE(app.entry.accepted);
  EXPECT_EQ(app.entry.reason, "no-op");
  EXPECT_TRUE(same_design(app.design, d));

  Design z = load_fixture("zero_mult.v");
  Design r = apply(z, "ZeroMultiplication");
  EXPECT_NE(squash(emit(r)).find("assigny=b;"), std::string::npos) << emit(r);
  EXPECT_NE(squash(emit(r)).find("assignz=c;"), std::string::npos) << emit(r);
}

TEST(Templates, FoldingAndShifts) {
  Design c = apply(load_fixture("constfold.v"), "ConstantFolding");
  std::string text = squash(emit(c));
  EXPECT_NE(text.find("a+5*b"), std::string::npos) << text;
  EXPECT_NE(text.find("(a&2)"), std::string::npos) << text;

  Design s = apply(load_fixture("strength.v"), "StrengthReduction");
  text = squash(emit(s));
  EXPECT_NE(text.find("a<<3"), std::string::npos) << text;
  EXPECT_NE(text.find("b>>2"), std::string::npos) << text;
}

TEST(Templates, MuxChainBecomesCase) {
  Design d = load_fixture("mux_chain.v");
  Application app = apply_template(d, tmpl("MuxSimplification"));
  ASSERT_TRUE(app.entry.accepted);
  std::string text = squash(emit(app.design));
  EXPECT_NE(text.find("case(sel)"), std::string::npos) << text;
  EXPECT_NE(text.find("default:"), std::string::npos) << text;
  EXPECT_EQ(check_equiv(d, app.design).verdict, Verdict::Equivalent);
}

// Every template on every fixture: results validate, preserve behaviour,
// never grow the design, and a second application finds nothing to do.
TEST(TemplateProperties, PreserveShrinkAndSettle) {
  for (const auto &file : testing::all_fixtures()) {
    Design d = load_fixture(file);
    for (const auto &t : builtin_templates()) {
      SCOPED_TRACE(file + " / " + t.name);
      Application app = apply_template(d, t);
      if (!app.entry.accepted) {
        EXPECT_TRUE(same_design(app.design, d));
        EXPECT_EQ(app.entry.reason, "no-op");
        continue;
      }
      EXPECT_FALSE(has_errors(validate(app.design)));
      EXPECT_LE(node_count(app.design), node_count(d)) << emit(app.design);
      EquivalenceVerdict v = check_equiv(d, app.design);
      EXPECT_NE(v.verdict, Verdict::NotEquivalent) << v.summary();
      if (!d.has_clocked_block())
        EXPECT_EQ(v.verdict, Verdict::Equivalent) << v.summary();
      Application again = apply_template(app.design, t);
      EXPECT_FALSE(again.entry.accepted) << emit(again.design);
    }
  }
}

// Random datapaths seeded with identity, annihilator and power-of-two
// constants, so every expression rule fires at mixed widths.
ExprPtr seeded_expr(std::mt19937_64 &rng, const std::vector<testing::Var> &vars,
                    int depth) {
  if (depth == 0 || rng() % 4 == 0)
    return testing::random_expr(rng, vars, 1);
  static const BinaryOp ops[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                 BinaryOp::Div, BinaryOp::BitAnd,
                                 BinaryOp::BitOr, BinaryOp::BitXor,
                                 BinaryOp::Shr, BinaryOp::Lt, BinaryOp::Eq};
  BinaryOp op = ops[rng() % std::size(ops)];
  ExprPtr l = seeded_expr(rng, vars, depth - 1);
  ExprPtr r;
  if (rng() % 2) {
    static const std::uint64_t consts[] = {0, 1, 2, 4, 8};
    std::uint64_t c = consts[rng() % std::size(consts)];
    r = rng() % 2 ? make_unsized(c) : make_const(c, 2 + rng() % 3, true);
  } else {
    r = seeded_expr(rng, vars, depth - 1);
  }
  if (rng() % 2)
    std::swap(l, r);
  return make_binary(op, l, r);
}

TEST(TemplateProperties, RandomDatapathsStayEquivalent) {
  std::mt19937_64 rng(7);
  std::vector<testing::Var> vars{{"a", 3}, {"b", 2}, {"c", 4}};
  int fired = 0;
  for (int round = 0; round < 300; ++round) {
    ExprPtr e = seeded_expr(rng, vars, 3);
    unsigned w = 1 + static_cast<unsigned>(rng() % 6);
    Design d = testing::comb_design("m", vars, w, e);
    for (const auto &t : builtin_templates()) {
      Application app = apply_template(d, t);
      if (!app.entry.accepted)
        continue;
      ++fired;
      EquivalenceVerdict v =
          check_equiv_comb(d, app.design, CombMode::Exhaustive);
      ASSERT_EQ(v.verdict, Verdict::Equivalent)
          << t.name << "\n" << emit(d) << emit(app.design) << v.summary();
    }
  }
  EXPECT_GT(fired, 100);
}

TEST(Pipeline, EmptyListIsIdentity) {
  Design d = load_fixture("cse_raw.v");
  PipelineResult r = run_pipeline(d, {}, equivalence_hook);
  EXPECT_TRUE(same_design(r.design, d));
  EXPECT_TRUE(r.log.entries.empty());
}

TEST(Pipeline, BrokenTemplateIsRolledBack) {
  RewriteTemplate broken;
  broken.name = "Broken";
  broken.matcher = [](const Design &d) {
    return std::vector<MatchSite>{{NodeKind::Assign, 0, d.span, "s1"}};
  };
  broken.transform = [](const Design &d, const std::vector<MatchSite> &,
                        std::vector<std::string> &) {
    Design out = d;
    auto &ca = std::get<ContinuousAssign>(out.items[0]);
    ca.value = make_binary(BinaryOp::Add, ca.value, make_unsized(1));
    return out;
  };
  Design d = load_fixture("cse_raw.v");
  PipelineResult r = run_pipeline(
      d, {broken, tmpl("CommonSubexpressionElimination")}, equivalence_hook);
  ASSERT_EQ(r.log.entries.size(), 2u);
  EXPECT_FALSE(r.log.entries[0].accepted);
  EXPECT_EQ(r.log.entries[0].reason->rfind("verification failed", 0), 0u);
  EXPECT_TRUE(r.log.entries[1].accepted);
  EXPECT_EQ(normalized(r.design), normalized_fixture("cse_golden.v"));
}

TEST(Pipeline, ThrowingTransformIsReported) {
  RewriteTemplate t;
  t.name = "Throws";
  t.matcher = [](const Design &) {
    return std::vector<MatchSite>{{}};
  };
  t.transform = [](const Design &, const std::vector<MatchSite> &,
                   std::vector<std::string> &) -> Design {
    throw std::runtime_error("boom");
  };
  Design d = load_fixture("strength.v");
  PipelineResult r = run_pipeline(d, {t}, equivalence_hook);
  EXPECT_TRUE(same_design(r.design, d));
  EXPECT_EQ(r.log.entries[0].reason, "TransformFailed: boom");
}

TEST(Pipeline, BudgetStopsEarly) {
  Design d = load_fixture("dce_raw.v");
  PipelineResult r = run_pipeline(d, builtin_templates(), equivalence_hook, 2);
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.log.entries.size(), 2u);
}

TEST(Pipeline, LogSerializes) {
  Design d = load_fixture("dce_raw.v");
  PipelineResult r =
      run_pipeline(d, {tmpl("DeadCodeElimination")}, equivalence_hook);
  auto j = r.log.to_json();
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["template"], "DeadCodeElimination");
  EXPECT_EQ(j[0]["sites"].size(), 5u);
  EXPECT_TRUE(j[0]["reason"].is_null());
}

} // namespace
} // namespace symrtlo
