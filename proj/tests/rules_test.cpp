// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "support.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/rules.hpp"

namespace symrtlo {
namespace {

std::string default_rules() { return std::string(SYMRTLO_RULES) + "/default.json"; }

ErrorKind kind_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Internal;
}

Rule rule(std::string name, std::string pattern, std::string objectives) {
  Rule r;
  r.name = std::move(name);
  r.pattern = std::move(pattern);
  r.rewrite = "rewrite it";
  r.category = "combinational/dataflow";
  r.objective_improvement = std::move(objectives);
  return r;
}

RuleLibrary leading_records() {
  RuleLibrary all = load_rules(default_rules());
  std::vector<Rule> three(all.rules().begin(), all.rules().begin() + 3);
  return RuleLibrary::build(three);
}

double norm(const Embedding &v) {
  double s = 0;
  for (double x : v)
    s += x * x;
  return std::sqrt(s);
}

TEST(Embedding, UnitNormAndSelfSimilarity) {
  Vocabulary v = Vocabulary::from_texts(
      {"multiplication by zero", "carry lookahead adder",
       "eliminate multiplication by zero", "zero multiplication"});
  Embedding a = v.embed("multiplication by zero");
  EXPECT_NEAR(norm(a), 1.0, 1e-9);
  EXPECT_NEAR(similarity(a, a), 1.0, 1e-12);
  Embedding zm = v.embed("zero multiplication");
  EXPECT_LT(similarity(zm, v.embed("carry lookahead adder")),
            similarity(zm, v.embed("eliminate multiplication by zero")));
  EXPECT_DOUBLE_EQ(similarity(zm, v.embed("carry lookahead adder")), 0.0);
}

TEST(Embedding, ZeroVectorsAndDimensions) {
  Vocabulary v = Vocabulary::from_texts({"alpha beta"});
  EXPECT_TRUE(is_zero_vector(v.embed("the of and")));
  EXPECT_TRUE(is_zero_vector(v.embed("")));
  EXPECT_DOUBLE_EQ(similarity(v.embed(""), v.embed("alpha")), 0.0);
  EXPECT_EQ(kind_of([] { similarity({1.0}, {1.0, 0.0}); }),
            ErrorKind::DimensionMismatch);
  EXPECT_EQ(tokenize("Detect 0 * c, e.g."), (std::vector<std::string>{"detect", "0", "c"}));
}

TEST(Embedding, SimilarityIsSymmetric) {
  std::mt19937_64 rng(3);
  const char *words[] = {"add", "mul", "zero", "shift", "carry", "state",
                         "reg", "wire", "fold", "case"};
  std::vector<std::string> texts;
  for (int i = 0; i < 200; ++i) {
    std::string t;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 6); ++k)
      t += std::string(words[rng() % 10]) + " ";
    texts.push_back(t);
  }
  Vocabulary v = Vocabulary::from_texts(texts);
  for (int i = 0; i < 100; ++i) {
    Embedding a = v.embed(texts[2 * i]);
    Embedding b = v.embed(texts[2 * i + 1]);
    double s = similarity(a, b);
    EXPECT_DOUBLE_EQ(s, similarity(b, a));
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Elbow, Examples) {
  EXPECT_EQ(elbow_cutoff({0.92, 0.88, 0.45, 0.30}), 2u);
  EXPECT_EQ(elbow_cutoff({0.9}), 1u);
  EXPECT_EQ(elbow_cutoff({0.8, 0.5, 0.2}), 1u);
  EXPECT_EQ(kind_of([] { elbow_cutoff({}); }), ErrorKind::EmptyScores);
}

TEST(Elbow, RecoversPlantedGap) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> high(0.8, 0.9), low(0.1, 0.3);
  int hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t m = 2 + rng() % 19;
    std::size_t k = 1 + rng() % (m - 1);
    std::vector<double> s;
    for (std::size_t i = 0; i < m; ++i)
      s.push_back(i < k ? high(rng) : low(rng));
    std::sort(s.rbegin(), s.rend());
    hits += elbow_cutoff(s) == k;
  }
  EXPECT_GE(hits, 990);
}

TEST(Library, DefaultFileLoads) {
  RuleLibrary lib = load_rules(default_rules());
  EXPECT_EQ(lib.rules().size(), 3 + builtin_templates().size());
  for (const auto &t : builtin_templates()) {
    bool covered = false;
    for (const auto &r : lib.rules())
      covered |= r.function_name && find_template(*r.function_name) == &t;
    EXPECT_TRUE(covered) << t.name;
  }
  const Rule *rc = lib.find("ReplaceRippleCarryWithCarryLookahead");
  ASSERT_NE(rc, nullptr);
  EXPECT_FALSE(rc->actionable());
  EXPECT_EQ(rc->objectives, (std::vector<Goal>{Goal::Area, Goal::Timing}));
  for (const auto &r : lib.rules())
    EXPECT_NEAR(norm(r.embedding), 1.0, 1e-9) << r.name;
}

TEST(Library, RoundTrip) {
  RuleLibrary lib = leading_records();
  auto path = std::filesystem::temp_directory_path() / "symrtlo_rules_roundtrip.json";
  save_rules(path.string(), lib);
  RuleLibrary back = load_rules(path.string());
  ASSERT_EQ(back.rules().size(), lib.rules().size());
  for (std::size_t i = 0; i < lib.rules().size(); ++i) {
    EXPECT_EQ(back.rules()[i], lib.rules()[i]);
    EXPECT_EQ(back.rules()[i].embedding, lib.rules()[i].embedding);
  }
  std::filesystem::remove(path);
}

TEST(Library, SchemaErrors) {
  nlohmann::json good = rules_to_json(leading_records());
  nlohmann::json missing = good;
  missing[1].erase("objective_improvement");
  try {
    parse_rules(missing);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Schema);
    EXPECT_NE(std::string(e.what()).find("[1].objective_improvement"),
              std::string::npos);
  }
  nlohmann::json extra = good;
  extra[0]["score"] = 1;
  EXPECT_EQ(kind_of([&] { parse_rules(extra); }), ErrorKind::Schema);
  nlohmann::json dup = good;
  dup[1]["name"] = dup[0]["name"];
  EXPECT_EQ(kind_of([&] { parse_rules(dup); }), ErrorKind::DuplicateRuleName);
  nlohmann::json unknown = good;
  unknown[0]["function_name"] = "NoSuchTemplate";
  EXPECT_EQ(kind_of([&] { parse_rules(unknown); }), ErrorKind::Schema);
  nlohmann::json goal = good;
  goal[0]["objective_improvement"] = "speed";
  EXPECT_EQ(kind_of([&] { parse_rules(goal); }), ErrorKind::Schema);
}

TEST(Search, ZeroMultiplicationRanksFirst) {
  RuleLibrary lib = leading_records();
  SearchResult r = search("eliminate multiplication by zero in assignments",
                          Goal::Area, lib, 3);
  ASSERT_FALSE(r.selected.empty());
  EXPECT_EQ(r.selected[0].rule->name, "Zero Multiplication Elimination");
  SearchResult one = search("carry lookahead adder", Goal::Area, lib, 1);
  ASSERT_EQ(one.selected.size(), 1u);
  EXPECT_EQ(one.selected[0].rule->name, one.ranked[0].rule->name);
  EXPECT_EQ(kind_of([] { search("x", Goal::Area, RuleLibrary::build({}), 1); }),
            ErrorKind::EmptyLibrary);
}

TEST(Search, GoalConflictsAreFiltered) {
  RuleLibrary lib = RuleLibrary::build(
      {rule("Pipelining", "insert pipeline registers", "timing"),
       rule("Resource Sharing", "share one adder across pipelining stages", "area"),
       rule("Clock Gating", "gate the clock of idle registers", "power")});
  EXPECT_EQ(lib.find("Pipelining")->pattern_tags,
            (std::vector<std::string>{"pipelining"}));
  SearchResult area = search("pipelining registers", Goal::Area, lib, 3);
  for (const auto &s : area.selected)
    EXPECT_NE(s.rule->name, "Pipelining");
  EXPECT_NE(std::find(area.filtered.begin(), area.filtered.end(), "Pipelining"),
            area.filtered.end());
  SearchResult timing = search("pipelining registers", Goal::Timing, lib, 3);
  ASSERT_FALSE(timing.selected.empty());
  EXPECT_EQ(timing.selected[0].rule->name, "Pipelining");
}

TEST(Search, ExtraConflictsFromFile) {
  nlohmann::json doc = {
      {"rules", rules_to_json(leading_records())},
      {"conflicts",
       {{{"pattern", "ripple carry"},
         {"goal", "timing"},
         {"conflicting_goal", "power"},
         {"conflicting_pattern", "clock gating"}}}}};
  RuleLibrary lib = parse_rules(doc);
  SearchResult r = search("carry lookahead adder", Goal::Power, lib, 3);
  for (const auto &s : r.selected)
    EXPECT_NE(s.rule->name, "ReplaceRippleCarryWithCarryLookahead");
  EXPECT_EQ(rules_to_json(lib)["conflicts"].size(), 1u);
}

// Determinism, ordering, elbow dominance and conflict soundness over random
// libraries and queries.
TEST(Search, Properties) {
  std::mt19937_64 rng(5);
  const char *words[] = {"pipelining", "resource", "sharing", "clock",
                         "gating",     "retiming", "adder",   "zero",
                         "shift",      "state",    "mux",     "fold"};
  const char *objs[] = {"area", "power", "timing", "area, delay",
                        "power, timing"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rule> rules;
    std::size_t n = 1 + rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      std::string p;
      for (int k = 0; k < 3; ++k)
        p += std::string(words[rng() % 12]) + " ";
      rules.push_back(rule("r" + std::to_string(i), p, objs[rng() % 5]));
    }
    RuleLibrary lib = RuleLibrary::build(rules);
    std::string q = std::string(words[rng() % 12]) + " " + words[rng() % 12];
    Goal goal = static_cast<Goal>(rng() % 3);
    std::size_t k = 1 + rng() % 4;
    SearchResult a = search(q, goal, lib, k);
    SearchResult b = search(q, goal, lib, k);
    ASSERT_EQ(a.selected.size(), b.selected.size());
    for (std::size_t i = 0; i < a.selected.size(); ++i)
      EXPECT_EQ(a.selected[i].rule, b.selected[i].rule);
    EXPECT_LE(a.selected.size(), k);
    for (std::size_t i = 1; i < a.selected.size(); ++i)
      EXPECT_GE(a.selected[i - 1].score, a.selected[i].score);
    for (std::size_t i = 0; i < a.elbow; ++i)
      for (std::size_t j = a.elbow; j < a.ranked.size(); ++j)
        EXPECT_GE(a.ranked[i].score, a.ranked[j].score);
    for (const auto &s : a.selected)
      EXPECT_FALSE(lib.conflicts().conflicts(s.rule->pattern_tags,
                                             s.rule->objectives, goal));
  }
}

} // namespace
} // namespace symrtlo
