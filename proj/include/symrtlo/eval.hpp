// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Two-valued operator semantics. Every operator result is a (bits, width)
// pair; widths follow the rules in GRAMMAR.md:
//   * + - * / % & | ^ : max of operand widths, operands zero-extended
//   * << >>           : width of the left operand
//   * comparisons, && || ! and reductions : width 1
//   * ?:              : max of the two branch widths
// Division or modulo by zero yields 0.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "symrtlo/ast.hpp"

namespace symrtlo {

struct BitVal {
  std::uint64_t bits = 0;
  unsigned width = 1;
};

inline std::uint64_t width_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

BitVal apply_unary(UnaryOp op, BitVal operand);
/// `div_by_zero` is set when / or % saw a zero divisor.
BitVal apply_binary(BinaryOp op, BitVal lhs, BitVal rhs,
                    bool *div_by_zero = nullptr);
unsigned unary_width(UnaryOp op, unsigned operand);
unsigned binary_width(BinaryOp op, unsigned lhs, unsigned rhs);

struct SignalValue {
  std::uint64_t bits = 0;
  unsigned width = 1;
  int lsb = 0;
};

using SignalLookup = std::function<SignalValue(const std::string &)>;

/// Tree-walking evaluator; slice bounds are evaluated with the same lookup.
BitVal eval_expr(const Expr &expr, const SignalLookup &lookup,
                 bool *div_by_zero = nullptr);

} // namespace symrtlo
