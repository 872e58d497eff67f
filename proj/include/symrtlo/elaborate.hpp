// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Name resolution and width computation shared by the validator, simulator,
// rewrite templates, bit-blaster, and cost model.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/frontend.hpp"

namespace symrtlo {

enum class SignalKind { Input, Output, Wire, Reg, Parameter, Implicit };

struct SignalInfo {
  std::string name;
  SignalKind kind = SignalKind::Wire;
  unsigned width = 1;
  int lsb = 0;
  bool is_reg = false;            // declared `reg` (port or body)
  std::uint64_t param_value = 0;  // SignalKind::Parameter only
  SourceSpan span;

  bool is_port() const {
    return kind == SignalKind::Input || kind == SignalKind::Output;
  }
};

/// Resolved names of one Design. Parameters are evaluated in declaration
/// order; declared ranges are folded to (width, lsb). Assigned-but-undeclared
/// continuous-assign targets become 1-bit implicit wires.
class SignalTable {
public:
  /// Problems found while resolving are appended to `diags` when given;
  /// resolution always completes, defaulting unresolvable widths to 1.
  static SignalTable build(const Design &design,
                           std::vector<Diagnostic> *diags = nullptr);

  const SignalInfo *find(const std::string &name) const;
  const SignalInfo &at(const std::string &name) const;
  bool contains(const std::string &name) const { return find(name) != nullptr; }

  /// Self-determined width of an expression under the documented rules.
  unsigned width_of(const Expr &expr) const;

  /// Value of a constant expression over literals and parameters.
  std::uint64_t const_value(const Expr &expr) const;

  const std::vector<std::string> &order() const { return order_; }
  std::vector<std::string> inputs() const;
  std::vector<std::string> outputs() const;
  /// Sum of input port widths.
  unsigned input_bits() const;

private:
  std::map<std::string, SignalInfo> by_name_;
  std::vector<std::string> order_;
};

/// Throws Error(Validate) carrying the first error diagnostic, if any.
void require_valid(const Design &design);

} // namespace symrtlo
