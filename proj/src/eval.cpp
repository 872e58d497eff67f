// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/eval.hpp"

#include <algorithm>
#include <bit>

#include "symrtlo/error.hpp"

namespace symrtlo {

unsigned unary_width(UnaryOp op, unsigned operand) {
  switch (op) {
  case UnaryOp::BitNot:
  case UnaryOp::Negate:
    return operand;
  default:
    return 1;
  }
}

unsigned binary_width(BinaryOp op, unsigned lhs, unsigned rhs) {
  switch (op) {
  case BinaryOp::Shl:
  case BinaryOp::Shr:
    return lhs;
  case BinaryOp::Eq:
  case BinaryOp::Ne:
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Gt:
  case BinaryOp::Ge:
  case BinaryOp::LogicalAnd:
  case BinaryOp::LogicalOr:
    return 1;
  default:
    return std::max(lhs, rhs);
  }
}

BitVal apply_unary(UnaryOp op, BitVal x) {
  std::uint64_t m = width_mask(x.width);
  std::uint64_t v = x.bits & m;
  switch (op) {
  case UnaryOp::BitNot:
    return {~v & m, x.width};
  case UnaryOp::Negate:
    return {(~v + 1) & m, x.width};
  case UnaryOp::LogicalNot:
    return {v == 0 ? 1u : 0u, 1};
  case UnaryOp::ReduceAnd:
    return {v == m ? 1u : 0u, 1};
  case UnaryOp::ReduceOr:
    return {v != 0 ? 1u : 0u, 1};
  case UnaryOp::ReduceXor:
    return {static_cast<std::uint64_t>(std::popcount(v) & 1), 1};
  }
  return {0, 1};
}

BitVal apply_binary(BinaryOp op, BitVal lhs, BitVal rhs, bool *div_by_zero) {
  unsigned w = binary_width(op, lhs.width, rhs.width);
  std::uint64_t m = width_mask(w);
  std::uint64_t a = lhs.bits & width_mask(lhs.width);
  std::uint64_t b = rhs.bits & width_mask(rhs.width);
  auto flag = [](bool c) -> std::uint64_t { return c ? 1 : 0; };
  switch (op) {
  case BinaryOp::Add: return {(a + b) & m, w};
  case BinaryOp::Sub: return {(a - b) & m, w};
  case BinaryOp::Mul: return {(a * b) & m, w};
  case BinaryOp::Div:
  case BinaryOp::Mod:
    if (b == 0) {
      if (div_by_zero)
        *div_by_zero = true;
      return {0, w};
    }
    return {(op == BinaryOp::Div ? a / b : a % b) & m, w};
  case BinaryOp::Shl: return {b >= 64 ? 0 : (a << b) & m, w};
  case BinaryOp::Shr: return {b >= 64 ? 0 : (a >> b) & m, w};
  case BinaryOp::BitAnd: return {a & b, w};
  case BinaryOp::BitOr: return {a | b, w};
  case BinaryOp::BitXor: return {a ^ b, w};
  case BinaryOp::Eq: return {flag(a == b), 1};
  case BinaryOp::Ne: return {flag(a != b), 1};
  case BinaryOp::Lt: return {flag(a < b), 1};
  case BinaryOp::Le: return {flag(a <= b), 1};
  case BinaryOp::Gt: return {flag(a > b), 1};
  case BinaryOp::Ge: return {flag(a >= b), 1};
  case BinaryOp::LogicalAnd: return {flag(a != 0 && b != 0), 1};
  case BinaryOp::LogicalOr: return {flag(a != 0 || b != 0), 1};
  }
  return {0, 1};
}

BitVal eval_expr(const Expr &e, const SignalLookup &lookup, bool *dbz) {
  switch (e.kind) {
  case ExprKind::Const:
    return {e.value, e.width};
  case ExprKind::Ref: {
    SignalValue s = lookup(e.name);
    return {s.bits & width_mask(s.width), s.width};
  }
  case ExprKind::Index: {
    SignalValue s = lookup(e.name);
    BitVal bit = eval_expr(*e.operands[0], lookup, dbz);
    std::int64_t pos = static_cast<std::int64_t>(bit.bits) - s.lsb;
    if (pos < 0 || pos >= static_cast<std::int64_t>(s.width))
      return {0, 1};
    return {(s.bits >> pos) & 1, 1};
  }
  case ExprKind::Slice: {
    SignalValue s = lookup(e.name);
    std::int64_t msb =
        static_cast<std::int64_t>(eval_expr(*e.operands[0], lookup, dbz).bits);
    std::int64_t lsb =
        static_cast<std::int64_t>(eval_expr(*e.operands[1], lookup, dbz).bits);
    if (msb < lsb)
      throw Error(ErrorKind::Validate, "descending slice bounds required on '" +
                                           e.name + "'", e.span);
    unsigned w = static_cast<unsigned>(msb - lsb + 1);
    std::int64_t shift = lsb - s.lsb;
    std::uint64_t v =
        (shift < 0 || shift >= 64) ? 0 : (s.bits >> shift);
    return {v & width_mask(w), w};
  }
  case ExprKind::Unary:
    return apply_unary(e.unary_op, eval_expr(*e.operands[0], lookup, dbz));
  case ExprKind::Binary:
    return apply_binary(e.binary_op, eval_expr(*e.operands[0], lookup, dbz),
                        eval_expr(*e.operands[1], lookup, dbz), dbz);
  case ExprKind::Ternary: {
    BitVal c = eval_expr(*e.operands[0], lookup, dbz);
    BitVal t = eval_expr(*e.operands[1], lookup, dbz);
    BitVal f = eval_expr(*e.operands[2], lookup, dbz);
    unsigned w = std::max(t.width, f.width);
    return {(c.bits != 0 ? t.bits : f.bits) & width_mask(w), w};
  }
  }
  return {0, 1};
}

} // namespace symrtlo
