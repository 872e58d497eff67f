// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <set>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/frontend.hpp"

namespace symrtlo {

const char *severity_name(Severity severity) {
  switch (severity) {
  case Severity::Note: return "note";
  case Severity::Warning: return "warning";
  case Severity::Error: return "error";
  }
  return "error";
}

std::string Diagnostic::format() const {
  return span.file + ":" + std::to_string(span.line_start) + ":" +
         std::to_string(span.col_start) + ": " + severity_name(severity) +
         ": " + message;
}

bool has_errors(const std::vector<Diagnostic> &diags) {
  for (const auto &d : diags)
    if (d.severity == Severity::Error)
      return true;
  return false;
}

namespace {

class Checker {
public:
  Checker(const Design &d, std::vector<Diagnostic> &diags)
      : design_(d), diags_(diags), table_(SignalTable::build(d, &diags)) {}

  void run() {
    for (const auto &item : design_.items) {
      if (const auto *a = std::get_if<ContinuousAssign>(&item))
        check_assign(*a);
      else
        check_always(std::get<AlwaysBlock>(item));
    }
  }

private:
  void error(const SourceSpan &span, std::string msg) {
    diags_.push_back(Diagnostic{Severity::Error, span, std::move(msg)});
  }

  void check_expr(const Expr &e, const SourceSpan &ctx) {
    const SourceSpan &span = e.span.file.empty() ? ctx : e.span;
    switch (e.kind) {
    case ExprKind::Const:
      if (e.width < 1)
        error(span, "constant width must be at least 1");
      return;
    case ExprKind::Ref:
      if (!table_.contains(e.name))
        error(span, "undeclared identifier '" + e.name + "'");
      return;
    case ExprKind::Index: {
      const SignalInfo *s = table_.find(e.name);
      if (!s) {
        error(span, "undeclared identifier '" + e.name + "'");
      } else if (is_const(*e.operands[0])) {
        std::int64_t bit = static_cast<std::int64_t>(e.operands[0]->value);
        if (bit < s->lsb || bit >= s->lsb + static_cast<std::int64_t>(s->width))
          error(span, "bit select out of range on '" + e.name + "'");
      }
      check_expr(*e.operands[0], span);
      return;
    }
    case ExprKind::Slice: {
      const SignalInfo *s = table_.find(e.name);
      if (!s) {
        error(span, "undeclared identifier '" + e.name + "'");
        return;
      }
      try {
        auto msb = static_cast<std::int64_t>(table_.const_value(*e.operands[0]));
        auto lsb = static_cast<std::int64_t>(table_.const_value(*e.operands[1]));
        if (msb < lsb)
          error(span, "slice bounds must be descending on '" + e.name + "'");
        else if (lsb < s->lsb ||
                 msb >= s->lsb + static_cast<std::int64_t>(s->width))
          error(span, "slice out of range on '" + e.name + "'");
      } catch (const Error &err) {
        error(span, err.what());
      }
      return;
    }
    default:
      for (const auto &op : e.operands)
        check_expr(*op, span);
    }
  }

  void claim_driver(const std::string &target, const SourceSpan &span,
                    const void *owner) {
    auto [it, inserted] = drivers_.emplace(target, owner);
    if (!inserted && it->second != owner)
      error(span, "'" + target + "' has multiple drivers");
  }

  void check_assign(const ContinuousAssign &a) {
    check_expr(*a.value, a.span);
    const SignalInfo *s = table_.find(a.target);
    if (s) {
      if (s->kind == SignalKind::Input)
        error(a.span, "cannot assign to input '" + a.target + "'");
      else if (s->kind == SignalKind::Parameter)
        error(a.span, "cannot assign to parameter '" + a.target + "'");
      else if (s->is_reg)
        error(a.span, "continuous assign to reg '" + a.target + "'");
    }
    claim_driver(a.target, a.span, &a);
  }

  void check_always(const AlwaysBlock &blk) {
    const Sensitivity &sens = blk.sensitivity;
    for (const auto &n : sens.signals)
      if (!table_.contains(n))
        error(blk.span, "undeclared identifier '" + n + "' in sensitivity list");
    for (const auto &e : sens.edges)
      if (!table_.contains(e.signal))
        error(blk.span,
              "undeclared identifier '" + e.signal + "' in sensitivity list");
    check_body(blk.body, blk, sens.clocked());
  }

  void check_body(const StmtList &body, const AlwaysBlock &blk, bool clocked) {
    for (const auto &sp : body) {
      const Stmt &s = *sp;
      const SourceSpan &span = s.span.file.empty() ? blk.span : s.span;
      switch (s.kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking: {
        if (clocked && s.kind == StmtKind::Blocking)
          error(span, "blocking assignment in clocked always block");
        if (!clocked && s.kind == StmtKind::Nonblocking)
          error(span, "nonblocking assignment in combinational always block");
        const SignalInfo *t = table_.find(s.target);
        if (!t)
          error(span, "undeclared identifier '" + s.target + "'");
        else if (!t->is_reg)
          error(span, "procedural assignment to non-reg '" + s.target + "'");
        check_expr(*s.value, span);
        claim_driver(s.target, span, &blk);
        break;
      }
      case StmtKind::If:
        check_expr(*s.cond, span);
        check_body(s.then_body, blk, clocked);
        check_body(s.else_body, blk, clocked);
        break;
      case StmtKind::Case: {
        check_expr(*s.subject, span);
        int defaults = 0;
        for (const auto &arm : s.arms) {
          if (arm.is_default())
            ++defaults;
          for (const auto &l : arm.labels)
            check_expr(*l, span);
          check_body(arm.body, blk, clocked);
        }
        if (defaults > 1)
          error(span, "case statement has more than one default");
        break;
      }
      }
    }
  }

  const Design &design_;
  std::vector<Diagnostic> &diags_;
  SignalTable table_;
  std::map<std::string, const void *> drivers_;
};

} // namespace

std::vector<Diagnostic> validate(const Design &design) {
  std::vector<Diagnostic> diags;
  Checker(design, diags).run();
  return diags;
}

} // namespace symrtlo
