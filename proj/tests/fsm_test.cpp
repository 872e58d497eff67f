// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "support.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/verify.hpp"

namespace symrtlo {
namespace {

using testing::brute_force_minimum;
using testing::load_fixture;
using testing::random_machine;

ErrorKind kind_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Internal;
}

std::string next_of(const SymbolicFsm &f, const std::string &state,
                    const std::string &symbol) {
  std::size_t q = *f.find_state(state);
  for (std::size_t s = 0; s < f.symbol_count(); ++s)
    if (f.symbol_name(s) == symbol)
      return f.next[q][s] ? f.states[*f.next[q][s]] : "-";
  return "?";
}

TEST(Extract, ExampleMachine) {
  SymbolicFsm f = extract_fsm(load_fixture("fsm_example1_state.v"));
  EXPECT_EQ(f.states, (std::vector<std::string>{"S0", "S1", "S2", "S3", "S4", "S5"}));
  ASSERT_EQ(f.symbol_count(), 4u);
  EXPECT_EQ(f.symbol_name(1), "input_signal=01");
  EXPECT_EQ(f.states[f.initial], "S0");
  EXPECT_TRUE(f.complete());
  EXPECT_FALSE(f.mealy);
  const char *table[6][4] = {{"S0", "S1", "S2", "S3"}, {"S0", "S3", "S1", "S5"},
                             {"S1", "S3", "S2", "S4"}, {"S1", "S0", "S4", "S5"},
                             {"S0", "S1", "S2", "S5"}, {"S1", "S4", "S0", "S5"}};
  for (std::size_t q = 0; q < 6; ++q)
    for (std::size_t s = 0; s < 4; ++s)
      EXPECT_EQ(next_of(f, f.states[q], f.symbol_name(s)), table[q][s])
          << f.states[q] << " " << f.symbol_name(s);
  const std::uint64_t outs[6] = {1, 0, 1, 0, 1, 0};
  for (std::size_t q = 0; q < 6; ++q)
    EXPECT_EQ(f.out[q][0], std::vector<std::uint64_t>{outs[q]});
  auto j = f.to_json();
  EXPECT_EQ(j["transitions"]["S1"]["input_signal=10"]["next_state"], "S1");
  EXPECT_EQ(j["outputs"]["S2"]["output_signal"], 1);
}

TEST(Extract, RejectsNonMachines) {
  EXPECT_EQ(kind_of([] { extract_fsm(load_fixture("cse_raw.v")); }),
            ErrorKind::NotAnFsm);
  EXPECT_EQ(kind_of([] { extract_fsm(load_fixture("accum.v")); }),
            ErrorKind::NotAnFsm);
  EXPECT_EQ(kind_of([] { extract_fsm(load_fixture("two_fsm.v")); }),
            ErrorKind::Ambiguous);
}

const char *kPartial = R"(
module partial (input clk, input rst, input x, output reg y);
  parameter A = 2'd0, B = 2'd1, C = 2'd2;
  reg [1:0] st, nx;
  always @(posedge clk or posedge rst)
    if (rst) st <= A; else st <= nx;
  always @(*) begin
    case (st)
      A: if (x) nx = B; else nx = A;
      B: if (x) nx = C;
      C: if (!x) nx = A;
    endcase
  end
  always @(*) begin
    y = 0;
    case (st)
      B: y = 1;
      C: y = 1;
    endcase
  end
endmodule
)";

TEST(Extract, MissingArmsStayUnspecified) {
  SymbolicFsm f = extract_fsm(parse(kPartial));
  EXPECT_FALSE(f.complete());
  EXPECT_EQ(next_of(f, "B", "x=0"), "-");
  EXPECT_EQ(next_of(f, "B", "x=1"), "C");
  EXPECT_EQ(next_of(f, "C", "x=1"), "-");
  // B leaves x=0 open and C leaves x=1 open: they agree wherever both are
  // defined, so the pair is compatible.
  auto pairs = compatibility_pairs(f);
  EXPECT_TRUE(pairs.count({1, 2}));
  EXPECT_FALSE(pairs.count({0, 1}));
  MinimizeResult m = minimize(f);
  EXPECT_TRUE(m.exact);
  EXPECT_EQ(m.fsm.states, (std::vector<std::string>{"A", "B_C"}));
}

TEST(Minimize, ExampleMachineMatchesReducedTable) {
  SymbolicFsm f = extract_fsm(load_fixture("fsm_example1_state.v"));
  auto pairs = compatibility_pairs(f);
  EXPECT_EQ(pairs, (std::set<std::pair<std::size_t, std::size_t>>{{0, 4}, {3, 5}}));
  MinimizeResult m = minimize(f);
  EXPECT_TRUE(m.exact);
  std::set<std::string> names(m.fsm.states.begin(), m.fsm.states.end());
  EXPECT_EQ(names, (std::set<std::string>{"S2", "S0_S4", "S1", "S3_S5"}));
  const char *reduced[4][5] = {
      {"S2", "S1", "S3_S5", "S2", "S0_S4"},
      {"S0_S4", "S0_S4", "S1", "S2", "S3_S5"},
      {"S1", "S0_S4", "S3_S5", "S1", "S3_S5"},
      {"S3_S5", "S1", "S0_S4", "S0_S4", "S3_S5"}};
  for (const auto &row : reduced)
    for (std::size_t s = 0; s < 4; ++s)
      EXPECT_EQ(next_of(m.fsm, row[0], m.fsm.symbol_name(s)), row[s + 1])
          << row[0] << " " << s;
  EXPECT_EQ(m.mapping.to_class.at("S4"), "S0_S4");
  EXPECT_EQ(m.mapping.to_class.at("S2"), "S2");
  EXPECT_NE(m.fsm.describe().find("State: S0_S4, Output: 1\n"), std::string::npos);
}

void expect_trace_equivalent(const SymbolicFsm &a, const SymbolicFsm &b,
                             std::size_t depth) {
  auto word = testing::trace_mismatch(a, b, depth);
  EXPECT_FALSE(word.has_value()) << "traces differ after " << word->size() << " symbols";
}

TEST(Minimize, CompleteMachinesMatchPartitionOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 6;
    SymbolicFsm f = random_machine(rng, n, 1 + rng() % 2, 1 + rng() % 3);
    MinimizeResult m = minimize(f);
    ASSERT_EQ(m.fsm.states.size(), brute_force_minimum(f)) << f.describe();
    EXPECT_LE(m.fsm.states.size(), n);
    if (!compatibility_pairs(f).empty())
      EXPECT_LT(m.fsm.states.size(), n);
    EXPECT_EQ(minimize(m.fsm).fsm.states.size(), m.fsm.states.size());
    // The mapping carries the original transitions onto the reduced ones.
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t s = 0; s < f.symbol_count(); ++s) {
        std::size_t c = *m.fsm.find_state(m.mapping.to_class.at(f.states[q]));
        EXPECT_EQ(m.fsm.states[*m.fsm.next[c][s]],
                  m.mapping.to_class.at(f.states[*f.next[q][s]]));
      }
    expect_trace_equivalent(f, m.fsm, 5);
  }
}

TEST(Minimize, PartialMachinesStayTraceEquivalent) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 7;
    SymbolicFsm f = random_machine(rng, n, 1, 2, 0.35);
    MinimizeResult m = minimize(f);
    EXPECT_TRUE(m.exact);
    EXPECT_LE(m.fsm.states.size(), n);
    expect_trace_equivalent(f, m.fsm, 5);
    EXPECT_LE(minimize(m.fsm).fsm.states.size(), m.fsm.states.size());
  }
}

TEST(Minimize, LargePartialMachinesUseGreedyCover) {
  std::mt19937_64 rng(29);
  SymbolicFsm f = random_machine(rng, 16, 1, 2, 0.4);
  MinimizeResult m = minimize(f);
  EXPECT_FALSE(m.exact);
  EXPECT_LE(m.fsm.states.size(), 16u);
  expect_trace_equivalent(f, m.fsm, 4);
}

TEST(Minimize, MinimalMachineIsFixpointAndUnreachableDropped) {
  SymbolicFsm t;
  t.states = {"OFF", "ON", "LOST"};
  t.inputs = {{"go", 1}};
  t.outputs = {{"y", 1}};
  t.next = {{0, 1}, {1, 0}, {0, 0}};
  t.out = {{{0}, {0}}, {{1}, {1}}, {{0}, {0}}};
  MinimizeResult m = minimize(t);
  EXPECT_EQ(m.fsm.states, (std::vector<std::string>{"OFF", "ON"}));
  EXPECT_EQ(m.unreachable, std::vector<std::string>{"LOST"});
  EXPECT_TRUE(m.mapping.identity());
  t.initial = 7;
  EXPECT_EQ(kind_of([&] { minimize(t); }), ErrorKind::UnreachableInitial);
}

TEST(Reemit, ExampleMachineIsEquivalent) {
  Design d = load_fixture("fsm_example1_state.v");
  MinimizeResult m = minimize(extract_fsm(d));
  ReemitResult r = reemit(d, m.fsm, m.mapping);
  SymbolicFsm again = extract_fsm(r.design);
  std::set<std::string> names(again.states.begin(), again.states.end());
  EXPECT_EQ(names, (std::set<std::string>{"S2", "S0_S4", "S1", "S3_S5"}));
  EXPECT_EQ(again.states[again.initial], "S0_S4");
  std::string text = emit(r.design);
  EXPECT_NE(text.find("reg [1:0] current_state, next_state;"), std::string::npos)
      << text;
  EquivalenceVerdict v = check_equiv_seq(d, r.design, SeqMode::product());
  EXPECT_EQ(v.verdict, Verdict::Equivalent) << v.summary();
  EquivalenceVerdict bounded = check_equiv_seq(d, r.design, SeqMode::bounded(8, 0, 1));
  EXPECT_NE(bounded.verdict, Verdict::NotEquivalent) << bounded.summary();
  EXPECT_NE(bounded.summary().find("depth 8"), std::string::npos) << bounded.summary();
}

TEST(Reemit, IdentityRoundTrip) {
  Design d = load_fixture("seq_detect.v");
  SymbolicFsm f = extract_fsm(d);
  StateMapping id;
  for (const auto &s : f.states)
    id.to_class[s] = s;
  ReemitResult r = reemit(d, f, id);
  SymbolicFsm g = extract_fsm(r.design);
  // Same machine up to state order.
  ASSERT_EQ(g.states.size(), f.states.size());
  for (std::size_t q = 0; q < f.states.size(); ++q) {
    std::size_t p = *g.find_state(f.states[q]);
    EXPECT_EQ(g.out[p], f.out[q]);
    for (std::size_t s = 0; s < f.symbol_count(); ++s)
      EXPECT_EQ(g.states[*g.next[p][s]], f.states[*f.next[q][s]]);
  }
  EXPECT_EQ(check_equiv_seq(d, r.design).verdict, Verdict::Equivalent);

  MinimizeResult m = minimize(f);
  EXPECT_EQ(m.fsm.states.size(), 3u);
  ReemitResult small = reemit(d, m.fsm, m.mapping);
  EXPECT_EQ(check_equiv_seq(d, small.design).verdict, Verdict::Equivalent);
}

TEST(Reemit, SingleStateMachine) {
  Design d = parse(R"(
module blink (input clk, input rst, input x, output reg y);
  parameter P = 1'b0, Q = 1'b1;
  reg st, nx;
  always @(posedge clk or posedge rst)
    if (rst) st <= P; else st <= nx;
  always @(*) begin
    nx = st;
    case (st)
      P: if (x) nx = Q;
      Q: if (x) nx = P;
    endcase
  end
  always @(*) begin
    y = 1;
  end
endmodule
)");
  // y does not read the state, so the machine has no outputs at all.
  MinimizeResult m = minimize(extract_fsm(d));
  ASSERT_EQ(m.fsm.states.size(), 1u);
  EXPECT_EQ(m.fsm.states[0], "P_Q");
  ReemitResult r = reemit(d, m.fsm, m.mapping);
  EXPECT_FALSE(has_errors(validate(r.design)));
  EXPECT_EQ(check_equiv_seq(d, r.design).verdict, Verdict::Equivalent);
}

TEST(Reemit, MealyOutputsAndNameClash) {
  Design d = parse(R"(
module mealy (input clk, input rst, input x, output reg y);
  parameter A = 1'b0, B = 1'b1;
  wire A_B;
  assign A_B = x;
  reg st, nx;
  always @(posedge clk or posedge rst)
    if (rst) st <= A; else st <= nx;
  always @(*) begin
    nx = st;
    case (st)
      A: if (x) nx = B;
      B: if (!x) nx = A;
    endcase
  end
  always @(*) begin
    y = 0;
    case (st)
      A: y = x;
      B: y = x;
    endcase
  end
endmodule
)");
  SymbolicFsm f = extract_fsm(d);
  EXPECT_TRUE(f.mealy);
  MinimizeResult m = minimize(f);
  ASSERT_EQ(m.fsm.states.size(), 1u);
  ReemitResult r = reemit(d, m.fsm, m.mapping);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("A_B_m"), std::string::npos);
  EXPECT_EQ(check_equiv_seq(d, r.design).verdict, Verdict::Equivalent);
}

} // namespace
} // namespace symrtlo
