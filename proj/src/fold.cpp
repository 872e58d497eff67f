// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/error.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

namespace {

struct Folded {
  ExprPtr expr;
  bool constant = false;
  bool unsized_leaves = false; // every original leaf below was unsized
};

ExprPtr make_folded(BitVal v, bool unsized_leaves, const SourceSpan &span) {
  bool unsized = unsized_leaves && v.width == kUnsizedWidth;
  return make_const(v.bits, v.width, !unsized, 'd', span);
}

Folded fold(const ExprPtr &e, std::vector<std::string> *problems) {
  if (e->kind == ExprKind::Const)
    return {e, true, !e->sized};
  if (e->operands.empty() || e->kind == ExprKind::Index ||
      e->kind == ExprKind::Slice) {
    // Bit and part selects keep their (constant) bounds as written.
    return {e, false, false};
  }

  std::vector<Folded> kids;
  bool changed = false;
  bool all_const = true;
  bool unsized_leaves = true;
  for (const auto &op : e->operands) {
    kids.push_back(fold(op, problems));
    changed |= kids.back().expr != op;
    all_const &= kids.back().constant;
    unsized_leaves &= kids.back().unsized_leaves;
  }

  auto val = [&](std::size_t i) {
    return BitVal{kids[i].expr->value, kids[i].expr->width};
  };

  if (all_const) {
    switch (e->kind) {
    case ExprKind::Unary:
      return {make_folded(apply_unary(e->unary_op, val(0)), unsized_leaves,
                          e->span),
              true, unsized_leaves};
    case ExprKind::Binary: {
      bool dbz = false;
      BitVal r = apply_binary(e->binary_op, val(0), val(1), &dbz);
      if (!dbz)
        return {make_folded(r, unsized_leaves, e->span), true, unsized_leaves};
      if (problems)
        problems->push_back(std::string(error_kind_name(
                                ErrorKind::DivideByZero)) +
                            ": constant " + binary_op_text(e->binary_op) +
                            " by zero left unfolded");
      break;
    }
    case ExprKind::Ternary: {
      BitVal t = val(1), f = val(2);
      unsigned w = std::max(t.width, f.width);
      BitVal r{(val(0).bits != 0 ? t.bits : f.bits) & width_mask(w), w};
      return {make_folded(r, unsized_leaves, e->span), true, unsized_leaves};
    }
    default:
      break;
    }
  }

  if (!changed)
    return {e, false, false};
  std::vector<ExprPtr> ops;
  for (auto &k : kids)
    ops.push_back(k.expr);
  return {with_operands(*e, std::move(ops)), false, false};
}

} // namespace

ExprPtr fold_const(const ExprPtr &expr, std::vector<std::string> *problems) {
  return fold(expr, problems).expr;
}

} // namespace symrtlo
