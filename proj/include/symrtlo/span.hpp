// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace symrtlo {

/// 1-based, inclusive source location range.
struct SourceSpan {
  std::string file;
  int line_start = 1;
  int col_start = 1;
  int line_end = 1;
  int col_end = 1;

  bool valid() const {
    return line_start >= 1 && col_start >= 1 &&
           (line_start < line_end ||
            (line_start == line_end && col_start <= col_end));
  }

  static SourceSpan merge(const SourceSpan &first, const SourceSpan &last) {
    SourceSpan out = first;
    out.line_end = last.line_end;
    out.col_end = last.col_end;
    return out;
  }
};

} // namespace symrtlo
