// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Structural cost proxy. A design is lowered to a netlist of primitive cells
// and measured by counting; the numbers are only meaningful relative to each
// other, never as synthesis results.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrtlo/ast.hpp"

namespace symrtlo {

enum class CellKind { Gate, Add, Sub, Mul, Div, Shift, Compare, Mux, Register };
const char *cell_kind_name(CellKind kind);

/// Area weight of one cell: gate 1, add/sub/compare/shift/mux w,
/// multiplier w^2, divider (and modulo) 2w^2, register 2w.
std::uint64_t area_weight(CellKind kind, unsigned width);

enum class NetRole { Named, Intermediate, Constant };

struct Net {
  std::string name; // signal name, `$n<k>` for intermediates, literal text
  NetRole role = NetRole::Named;
  bool counted = false; // contributes to CostReport::wires
  /// For a named net assigned straight from another net.
  std::optional<std::size_t> alias_of;
};

struct Cell {
  CellKind kind = CellKind::Gate;
  std::string op; // operator text, distinguishes cells of one kind
  unsigned width = 1;
  std::vector<std::size_t> inputs; // net ids
  std::size_t output = 0;
};

struct Netlist {
  std::vector<Net> nets;
  std::vector<Cell> cells;
};

/// Each operator becomes one cell, each if/case a mux tree, each clocked
/// target a register. Subexpressions below an assignment root are shared
/// by structural hash; the root itself drives the assigned signal. Requires
/// a valid design.
Netlist lower(const Design &design);

struct CostReport {
  std::size_t wires = 0;
  std::size_t cells = 0;
  std::uint64_t area_proxy = 0;
  std::size_t depth = 0; // longest combinational cell path
  std::size_t register_bits = 0;
  std::map<std::string, std::size_t> histogram; // cell kind name -> count

  nlohmann::ordered_json to_json() const;
};

CostReport cost(const Netlist &netlist);
CostReport cost(const Design &design);

} // namespace symrtlo
