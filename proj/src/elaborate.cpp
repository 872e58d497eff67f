// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/elaborate.hpp"

#include <algorithm>

#include "symrtlo/eval.hpp"

namespace symrtlo {

const SignalInfo *SignalTable::find(const std::string &name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &it->second;
}

const SignalInfo &SignalTable::at(const std::string &name) const {
  const SignalInfo *s = find(name);
  if (!s)
    throw Error(ErrorKind::Validate, "undeclared identifier '" + name + "'");
  return *s;
}

std::uint64_t SignalTable::const_value(const Expr &expr) const {
  auto lookup = [this, &expr](const std::string &n) -> SignalValue {
    const SignalInfo *s = find(n);
    if (!s || s->kind != SignalKind::Parameter)
      throw Error(ErrorKind::Validate,
                  "'" + n + "' is not a constant in this context", expr.span);
    return {s->param_value, s->width, 0};
  };
  return eval_expr(expr, lookup).bits;
}

unsigned SignalTable::width_of(const Expr &e) const {
  switch (e.kind) {
  case ExprKind::Const:
    return e.width;
  case ExprKind::Ref: {
    const SignalInfo *s = find(e.name);
    return s ? s->width : 1;
  }
  case ExprKind::Index:
    return 1;
  case ExprKind::Slice: {
    std::uint64_t msb = const_value(*e.operands[0]);
    std::uint64_t lsb = const_value(*e.operands[1]);
    return msb >= lsb ? static_cast<unsigned>(msb - lsb + 1) : 1;
  }
  case ExprKind::Unary:
    return unary_width(e.unary_op, width_of(*e.operands[0]));
  case ExprKind::Binary:
    return binary_width(e.binary_op, width_of(*e.operands[0]),
                        width_of(*e.operands[1]));
  case ExprKind::Ternary:
    return std::max(width_of(*e.operands[1]), width_of(*e.operands[2]));
  }
  return 1;
}

std::vector<std::string> SignalTable::inputs() const {
  std::vector<std::string> out;
  for (const auto &n : order_)
    if (by_name_.at(n).kind == SignalKind::Input)
      out.push_back(n);
  return out;
}

std::vector<std::string> SignalTable::outputs() const {
  std::vector<std::string> out;
  for (const auto &n : order_)
    if (by_name_.at(n).kind == SignalKind::Output)
      out.push_back(n);
  return out;
}

unsigned SignalTable::input_bits() const {
  unsigned bits = 0;
  for (const auto &n : inputs())
    bits += by_name_.at(n).width;
  return bits;
}

SignalTable SignalTable::build(const Design &design,
                               std::vector<Diagnostic> *diags) {
  SignalTable t;
  auto report = [&](Severity sev, const SourceSpan &span, std::string msg) {
    if (diags)
      diags->push_back(Diagnostic{sev, span, std::move(msg)});
  };
  auto add = [&](SignalInfo info) {
    if (t.by_name_.count(info.name)) {
      report(Severity::Error, info.span,
             "duplicate declaration of '" + info.name + "'");
      return;
    }
    t.order_.push_back(info.name);
    t.by_name_.emplace(info.name, std::move(info));
  };
  auto resolve_range = [&](const std::optional<Range> &r, SignalInfo &info) {
    if (!r)
      return;
    try {
      std::uint64_t msb = t.const_value(*r->msb);
      std::uint64_t lsb = t.const_value(*r->lsb);
      if (msb < lsb) {
        report(Severity::Error, info.span,
               "ascending range on '" + info.name + "' is not supported");
        return;
      }
      if (msb - lsb + 1 > kMaxWidth) {
        report(Severity::Error, info.span,
               "'" + info.name + "' is wider than 64 bits");
        return;
      }
      info.width = static_cast<unsigned>(msb - lsb + 1);
      info.lsb = static_cast<int>(lsb);
    } catch (const Error &err) {
      report(Severity::Error, info.span, err.what());
    }
  };

  for (const auto &p : design.parameters) {
    SignalInfo info;
    info.name = p.name;
    info.kind = SignalKind::Parameter;
    info.span = p.span;
    try {
      info.param_value = t.const_value(*p.value);
      info.width = t.width_of(*p.value);
    } catch (const Error &err) {
      report(Severity::Error, p.span, err.what());
    }
    add(std::move(info));
  }
  for (const auto &p : design.ports) {
    SignalInfo info;
    info.name = p.name;
    info.kind = p.direction == Direction::Input ? SignalKind::Input
                                                : SignalKind::Output;
    info.is_reg = p.kind == NetKind::Reg;
    info.span = p.span;
    resolve_range(p.range, info);
    add(std::move(info));
  }
  for (const auto &d : design.decls) {
    for (const auto &n : d.names) {
      SignalInfo info;
      info.name = n;
      info.kind = d.kind == NetKind::Reg ? SignalKind::Reg : SignalKind::Wire;
      info.is_reg = d.kind == NetKind::Reg;
      info.span = d.span;
      resolve_range(d.range, info);
      add(std::move(info));
    }
  }
  for (const auto &item : design.items) {
    const auto *a = std::get_if<ContinuousAssign>(&item);
    if (!a || t.by_name_.count(a->target))
      continue;
    SignalInfo info;
    info.name = a->target;
    info.kind = SignalKind::Implicit;
    info.span = a->span;
    report(Severity::Warning, a->span,
           "implicitly declared net '" + a->target + "'");
    add(std::move(info));
  }
  return t;
}

void require_valid(const Design &design) {
  for (const auto &d : validate(design))
    if (d.severity == Severity::Error)
      throw Error(ErrorKind::Validate, d.message, d.span);
}

} // namespace symrtlo
