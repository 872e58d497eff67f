// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Verilog subset frontend: parse, validate, emit. The accepted grammar and
// width rules are documented in GRAMMAR.md at the repository root.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/error.hpp"

namespace symrtlo {

/// Parses exactly one module. Throws Error(Parse) for grammar violations and
/// Error(UnsupportedConstruct) for legal Verilog outside the subset.
Design parse(std::string_view source, const std::string &file = "<input>");

/// Reads and parses a file. Throws Error(Io) when it cannot be read.
Design parse_file(const std::string &path);

enum class Severity { Note, Warning, Error };
const char *severity_name(Severity severity);

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string message;

  /// `file:line:col: severity: message`
  std::string format() const;
};

std::vector<Diagnostic> validate(const Design &design);
bool has_errors(const std::vector<Diagnostic> &diags);

/// Deterministic re-emission: two-space indent, one item per line, minimal
/// parentheses.
std::string emit(const Design &design);
std::string emit_expr(const Expr &expr);

} // namespace symrtlo
