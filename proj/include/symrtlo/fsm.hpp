// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Finite state machine extraction, minimization and re-emission.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symrtlo/ast.hpp"

namespace symrtlo {

struct FsmPort {
  std::string name;
  unsigned width = 1;
};

/// Symbolic machine over states `states` and the alphabet of all valuations
/// of `inputs` (first input most significant). Transitions are deterministic
/// where defined; std::nullopt marks an unspecified entry.
struct SymbolicFsm {
  std::vector<std::string> states;
  std::vector<FsmPort> inputs;
  std::vector<FsmPort> outputs;
  std::size_t initial = 0;
  /// next[state][symbol]
  std::vector<std::vector<std::optional<std::size_t>>> next;
  /// out[state][symbol][output]; rows are symbol-independent unless mealy.
  std::vector<std::vector<std::vector<std::uint64_t>>> out;
  bool mealy = false;
  /// Carried for completeness; RTL machines have no acceptance semantics.
  std::set<std::string> accepting;
  /// Datapath guard text per (state, symbol); compared syntactically.
  std::map<std::pair<std::size_t, std::size_t>, std::string> guards;

  std::size_t symbol_count() const;
  std::string symbol_name(std::size_t symbol) const;
  /// Value of each input under `symbol`.
  std::vector<std::uint64_t> symbol_values(std::size_t symbol) const;
  bool complete() const;
  std::optional<std::size_t> find_state(const std::string &name) const;
  /// Throws Error(Domain) when an invariant fails.
  void check() const;

  /// {"states", "initial", "transitions": {state: {"in=01": {"next_state"}}},
  /// "outputs": {state: {port: value}}}; Mealy outputs sit on transitions.
  nlohmann::ordered_json to_json() const;
  /// One block per state: "State: S1, Output: 0" then "  in=00 -> S0".
  std::string describe() const;
};

/// Original state name to the name of the class that absorbed it.
struct StateMapping {
  std::map<std::string, std::string> to_class;
  bool identity() const;
};

/// Extracts the machine behind the design's single state register.
/// Throws Error(NotAnFsm) or Error(Ambiguous).
SymbolicFsm extract_fsm(const Design &design);

/// Unordered compatible pairs (p < q by state index).
std::set<std::pair<std::size_t, std::size_t>>
compatibility_pairs(const SymbolicFsm &fsm);

struct MinimizeResult {
  SymbolicFsm fsm;
  StateMapping mapping;
  bool exact = true;
  std::vector<std::string> unreachable; // dropped before merging
};

/// Partition refinement for complete machines; minimum closed cover for
/// partial ones (exact up to kMaxExactCoverStates states, greedy above).
/// Throws Error(UnreachableInitial).
MinimizeResult minimize(const SymbolicFsm &fsm);

inline constexpr std::size_t kMaxExactCoverStates = 12;
inline constexpr unsigned kMaxFsmInputBits = 8;

struct ReemitResult {
  Design design;
  std::vector<std::string> notes;
};

/// Rewrites the design's machine as `minimized`: new state parameters with
/// binary encodings in breadth-first order from the initial state, new
/// transition and output blocks, everything else kept. Throws
/// Error(NotAnFsm) when `design` holds no machine.
ReemitResult reemit(const Design &design, const SymbolicFsm &minimized,
                    const StateMapping &mapping);

} // namespace symrtlo
