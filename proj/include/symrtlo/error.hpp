// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

#include "symrtlo/span.hpp"

namespace symrtlo {

enum class ErrorKind {
  Parse,
  UnsupportedConstruct,
  Validate,
  CombinationalLoop,
  MissingInput,
  NoClockFound,
  DivideByZero,
  TransformFailed,
  EmptyScores,
  EmptyLibrary,
  DimensionMismatch,
  Schema,
  DuplicateRuleName,
  NotAnFsm,
  Ambiguous,
  UnreachableInitial,
  EmitConflict,
  SpaceTooLarge,
  StateSpaceTooLarge,
  InterfaceMismatch,
  Domain,
  Io,
  Internal,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library. `kind` is stable and used by the CLI
/// to pick exit codes; `span` is set when the error points into a source file.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}
  Error(ErrorKind kind, const std::string &message, SourceSpan span)
      : std::runtime_error(message), kind_(kind), span_(std::move(span)),
        has_span_(true) {}

  ErrorKind kind() const { return kind_; }
  bool has_span() const { return has_span_; }
  const SourceSpan &span() const { return span_; }

  /// `file:line:col: error: message` when a span is present.
  std::string format() const;

private:
  ErrorKind kind_;
  SourceSpan span_;
  bool has_span_ = false;
};

} // namespace symrtlo
