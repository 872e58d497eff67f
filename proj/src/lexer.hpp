// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symrtlo/span.hpp"

namespace symrtlo::detail {

enum class TokKind { Ident, Number, Symbol, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
  int end_line = 1;
  int end_col = 1;
};

/// Splits source into identifiers, numbers and operator symbols. Comments
/// and whitespace are dropped. Throws Error(Parse) on stray characters and
/// Error(UnsupportedConstruct) on preprocessor directives.
std::vector<Token> tokenize(std::string_view source, const std::string &file);

} // namespace symrtlo::detail
