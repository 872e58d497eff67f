// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/fsm.hpp"

namespace symrtlo {

/// Where a machine lives inside a design.
struct FsmBinding {
  std::string state;                  // the state register
  std::string next;                   // next-state variable
  std::size_t update_item = 0;        // clocked block: state <= next
  std::size_t transition_item = 0;    // comb block writing next
  std::vector<std::size_t> output_items;
  std::vector<std::string> state_params; // declaration order
  std::vector<std::uint64_t> encodings;  // parallel to state_params
  std::optional<std::uint64_t> reset_value;
  std::vector<FsmPort> inputs;
  std::vector<FsmPort> outputs;
  bool mealy = false;
};

/// Throws Error(NotAnFsm) or Error(Ambiguous).
FsmBinding locate_fsm(const Design &design);

} // namespace symrtlo
