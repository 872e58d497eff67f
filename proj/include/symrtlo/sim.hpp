// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Two-valued, cycle-accurate simulation of a validated Design.
//
// Combinational always blocks start every evaluation with their written
// variables at 0, so no latches are inferred. Registers without a reset
// branch power up at 0. Division or modulo by zero yields 0 and is reported
// as a warning.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/eval.hpp"

namespace symrtlo {

/// Signal name to (value, width). Values are always below 2^width.
using Assignment = std::map<std::string, BitVal>;

struct TraceStep {
  Assignment inputs;
  Assignment outputs;
};

struct Trace {
  unsigned reset_cycles = 0;
  std::vector<TraceStep> steps;
  std::vector<Assignment> state_snapshots; // registers after each step
  std::vector<std::string> warnings;

  /// One JSON object per step: {"step":i,"inputs":{..},"outputs":{..}}.
  std::string to_jsonl() const;
};

/// A continuous assign or always block with its def/use sets.
struct Process {
  enum class Kind { Assign, Comb, Clocked };
  Kind kind = Kind::Assign;
  std::size_t item_index = 0;
  std::vector<std::string> writes;
  std::vector<std::string> reads;
};

/// Combinational processes in evaluation order followed by the clocked
/// ones in source order. Throws Error(CombinationalLoop).
std::vector<Process> schedule_processes(const Design &design);

struct ClockInfo {
  std::string clock;
  bool clock_posedge = true;
  std::optional<std::string> reset;
  bool reset_active_high = true;
};

/// The clock is the edge signal shared by every clocked block; a second edge
/// signal (or a 1-bit input) that gates a top-level `if` assigning only
/// constants is the reset. Throws Error(NoClockFound) when there is no
/// clocked block or the clocking is ambiguous.
ClockInfo detect_clock(const Design &design);

class CompiledDesign;

/// Simulation state: one value slot per signal.
struct SimState {
  std::vector<std::uint64_t> values;
  bool div_by_zero = false;
  std::vector<std::uint64_t> scratch; // expression temporaries
};

/// A Design compiled to flat expression programs over signal slots.
/// Immutable and shareable; all mutable state lives in SimState.
class Model {
public:
  explicit Model(const Design &design);
  ~Model();
  Model(const Model &) = delete;
  Model &operator=(const Model &) = delete;
  Model(Model &&) noexcept;
  Model &operator=(Model &&) noexcept;

  bool sequential() const;
  const ClockInfo &clock() const; // sequential models only

  int slot(const std::string &name) const; // -1 when unknown
  unsigned width(int slot) const;
  const std::string &name(int slot) const;

  /// Data inputs: input ports other than the clock and reset.
  const std::vector<int> &data_inputs() const;
  const std::vector<int> &outputs() const;
  /// Signals written by clocked blocks, in declaration order.
  const std::vector<int> &registers() const;

  SimState initial_state() const;
  /// Evaluates every combinational process in schedule order.
  void settle(SimState &s) const;
  /// One active clock edge: nonblocking updates computed from the settled
  /// pre-edge values, committed together, then the design settles again.
  void clock_edge(SimState &s) const;
  /// Holds reset active (other data inputs 0) for `cycles` edges. Without
  /// a reset signal the registers simply stay at their power-up value.
  void apply_reset(SimState &s, unsigned cycles) const;

  void set_inputs(SimState &s, const Assignment &inputs) const;
  Assignment read(const SimState &s, const std::vector<int> &slots) const;

private:
  std::unique_ptr<CompiledDesign> impl_;
};

/// Output port values for one input vector. Throws Error(Validate) for a
/// sequential design, Error(MissingInput), Error(CombinationalLoop).
Assignment eval_comb(const Design &design, const Assignment &inputs,
                     std::vector<std::string> *warnings = nullptr);

/// Resets, then applies one stimulus entry per clock edge and samples the
/// outputs after each edge settles. Throws Error(NoClockFound),
/// Error(MissingInput).
Trace simulate(const Design &design, const std::vector<Assignment> &stimulus,
               unsigned reset_cycles = 1);

/// Replaces every constant-only subtree with a Const. A folded result is
/// unsized when it is 32 bits wide and every folded leaf was unsized.
/// Constant division by zero is left unfolded and reported in `problems`
/// (when given) as a DivideByZero message.
ExprPtr fold_const(const ExprPtr &expr,
                   std::vector<std::string> *problems = nullptr);

} // namespace symrtlo
