// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "slots.hpp"

#include <algorithm>

namespace symrtlo {

namespace {

constexpr Slot kWhole{kAllBits, false};
constexpr Slot kValue{kAllBits, true};

Slot low_bits(const Slot &s) {
  return s.width_free ? kWhole : Slot{s.demand, false};
}

constexpr int kMaxRewritesPerNode = 8;

class Walker {
public:
  Walker(const Design &d, const ExprRule &rule)
      : table_(SignalTable::build(d)), rule_(rule) {}

  ExprPtr expr(const ExprPtr &e, const Slot &slot) {
    ExprPtr cur = e;
    if (e->kind != ExprKind::Slice && !e->operands.empty()) {
      std::vector<ExprPtr> ops;
      bool changed = false;
      for (std::size_t i = 0; i < e->operands.size(); ++i) {
        ops.push_back(expr(e->operands[i], operand_slot(*e, i, slot)));
        changed |= ops.back() != e->operands[i];
      }
      if (changed)
        cur = with_operands(*e, std::move(ops));
    }
    for (int round = 0; round < kMaxRewritesPerNode; ++round) {
      auto r = rule_(cur, slot, table_);
      if (!r || !r->expr || same_expr(r->expr, cur))
        break;
      if (!admissible(table_.width_of(*cur), table_.width_of(*r->expr),
                      r->agree_bits, slot))
        break;
      sites_.push_back({NodeKind::Expr, item_, e->span, emit_expr(*cur)});
      cur = r->expr;
    }
    return cur;
  }

  StmtList body(const StmtList &stmts) {
    StmtList out;
    for (const auto &sp : stmts) {
      const Stmt &s = *sp;
      switch (s.kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking: {
        ExprPtr v = expr(s.value, assign_slot(table_, s.target));
        out.push_back(v == s.value ? sp : make_assign(s.kind, s.target, v, s.span));
        break;
      }
      case StmtKind::If: {
        auto c = expr(s.cond, kValue);
        auto t = body(s.then_body);
        auto f = body(s.else_body);
        out.push_back(make_if(c, t, s.has_else ? std::optional<StmtList>(f)
                                                : std::nullopt,
                              s.span));
        break;
      }
      case StmtKind::Case: {
        auto subj = expr(s.subject, kValue);
        std::vector<CaseArm> arms;
        for (const auto &arm : s.arms) {
          CaseArm a;
          for (const auto &l : arm.labels)
            a.labels.push_back(expr(l, kValue));
          a.body = body(arm.body);
          arms.push_back(std::move(a));
        }
        out.push_back(make_case(subj, std::move(arms), s.span));
        break;
      }
      }
    }
    return out;
  }

  ExprPass run(const Design &d) {
    ExprPass out{d, {}};
    for (std::size_t i = 0; i < d.items.size(); ++i) {
      item_ = i;
      if (const auto *ca = std::get_if<ContinuousAssign>(&d.items[i])) {
        ExprPtr v = expr(ca->value, assign_slot(table_, ca->target));
        if (v != ca->value)
          out.design.items[i] = ContinuousAssign{ca->target, v, ca->span};
      } else {
        AlwaysBlock blk = std::get<AlwaysBlock>(d.items[i]);
        std::size_t before = sites_.size();
        blk.body = body(blk.body);
        if (sites_.size() != before)
          out.design.items[i] = blk;
      }
    }
    out.sites = std::move(sites_);
    return out;
  }

private:
  SignalTable table_;
  const ExprRule &rule_;
  std::size_t item_ = 0;
  std::vector<MatchSite> sites_;
};

} // namespace

bool admissible(unsigned old_width, unsigned new_width, unsigned agree_bits,
                const Slot &slot) {
  if (slot.width_free)
    return agree_bits >= std::max(old_width, new_width);
  unsigned d = slot.demand;
  return std::min(new_width, d) == std::min(old_width, d) &&
         agree_bits >= std::min(old_width, d);
}

Slot operand_slot(const Expr &e, std::size_t operand, const Slot &slot) {
  switch (e.kind) {
  case ExprKind::Unary:
    switch (e.unary_op) {
    case UnaryOp::BitNot:
    case UnaryOp::Negate:
      return low_bits(slot);
    case UnaryOp::ReduceAnd:
      return kWhole;
    default:
      return kValue;
    }
  case ExprKind::Binary:
    switch (e.binary_op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::BitAnd:
    case BinaryOp::BitOr:
    case BinaryOp::BitXor:
      return low_bits(slot);
    case BinaryOp::Shl:
      return operand == 0 ? low_bits(slot) : kValue;
    case BinaryOp::Shr:
      return operand == 0 ? kWhole : kValue;
    case BinaryOp::Div:
    case BinaryOp::Mod:
      return kWhole;
    default:
      return kValue;
    }
  case ExprKind::Ternary:
    return operand == 0 ? kValue : low_bits(slot);
  default:
    return kValue;
  }
}

Slot assign_slot(const SignalTable &table, const std::string &target) {
  return Slot{table.at(target).width, false};
}

ExprPass rewrite_exprs(const Design &design, const ExprRule &rule) {
  return Walker(design, rule).run(design);
}

} // namespace symrtlo
