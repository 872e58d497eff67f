// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/ast.hpp"
#include "symrtlo/error.hpp"

#include <algorithm>
#include <sstream>

namespace symrtlo {

const char *error_kind_name(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
  case ErrorKind::Validate: return "ValidateError";
  case ErrorKind::CombinationalLoop: return "CombinationalLoop";
  case ErrorKind::MissingInput: return "MissingInput";
  case ErrorKind::NoClockFound: return "NoClockFound";
  case ErrorKind::DivideByZero: return "DivideByZero";
  case ErrorKind::TransformFailed: return "TransformFailed";
  case ErrorKind::EmptyScores: return "EmptyScores";
  case ErrorKind::EmptyLibrary: return "EmptyLibrary";
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::Schema: return "SchemaError";
  case ErrorKind::DuplicateRuleName: return "DuplicateRuleName";
  case ErrorKind::NotAnFsm: return "NotAnFsm";
  case ErrorKind::Ambiguous: return "Ambiguous";
  case ErrorKind::UnreachableInitial: return "UnreachableInitial";
  case ErrorKind::EmitConflict: return "EmitConflict";
  case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
  case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
  case ErrorKind::InterfaceMismatch: return "InterfaceMismatch";
  case ErrorKind::Domain: return "DomainError";
  case ErrorKind::Io: return "IoError";
  case ErrorKind::Internal: return "InternalError";
  }
  return "Error";
}

std::string Error::format() const {
  std::ostringstream os;
  if (has_span_)
    os << span_.file << ":" << span_.line_start << ":" << span_.col_start
       << ": ";
  os << "error: " << what();
  return os.str();
}

const char *unary_op_text(UnaryOp op) {
  switch (op) {
  case UnaryOp::BitNot: return "~";
  case UnaryOp::LogicalNot: return "!";
  case UnaryOp::Negate: return "-";
  case UnaryOp::ReduceAnd: return "&";
  case UnaryOp::ReduceOr: return "|";
  case UnaryOp::ReduceXor: return "^";
  }
  return "?";
}

const char *binary_op_text(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add: return "+";
  case BinaryOp::Sub: return "-";
  case BinaryOp::Mul: return "*";
  case BinaryOp::Div: return "/";
  case BinaryOp::Mod: return "%";
  case BinaryOp::Shl: return "<<";
  case BinaryOp::Shr: return ">>";
  case BinaryOp::BitAnd: return "&";
  case BinaryOp::BitOr: return "|";
  case BinaryOp::BitXor: return "^";
  case BinaryOp::Eq: return "==";
  case BinaryOp::Ne: return "!=";
  case BinaryOp::Lt: return "<";
  case BinaryOp::Le: return "<=";
  case BinaryOp::Gt: return ">";
  case BinaryOp::Ge: return ">=";
  case BinaryOp::LogicalAnd: return "&&";
  case BinaryOp::LogicalOr: return "||";
  }
  return "?";
}

bool is_commutative(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add:
  case BinaryOp::Mul:
  case BinaryOp::BitAnd:
  case BinaryOp::BitOr:
  case BinaryOp::BitXor:
  case BinaryOp::Eq:
  case BinaryOp::Ne:
  case BinaryOp::LogicalAnd:
  case BinaryOp::LogicalOr:
    return true;
  default:
    return false;
  }
}

bool is_comparison(BinaryOp op) {
  switch (op) {
  case BinaryOp::Eq:
  case BinaryOp::Ne:
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Gt:
  case BinaryOp::Ge:
    return true;
  default:
    return false;
  }
}

const char *node_kind_name(NodeKind kind) {
  switch (kind) {
  case NodeKind::Module: return "Module";
  case NodeKind::Assign: return "Assign";
  case NodeKind::Always: return "Always";
  case NodeKind::Expr: return "Expr";
  }
  return "?";
}

ExprPtr make_const(std::uint64_t value, unsigned width, bool sized, char base,
                   SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Const;
  e->width = width;
  e->value = width >= 64 ? value : (value & ((std::uint64_t{1} << width) - 1));
  e->sized = sized;
  e->base = base;
  e->span = std::move(span);
  return e;
}

ExprPtr make_unsized(std::uint64_t value, SourceSpan span) {
  return make_const(value, kUnsizedWidth, false, 'd', std::move(span));
}

ExprPtr make_ref(std::string name, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Ref;
  e->name = std::move(name);
  e->span = std::move(span);
  return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Unary;
  e->unary_op = op;
  e->operands = {std::move(operand)};
  e->span = std::move(span);
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Binary;
  e->binary_op = op;
  e->operands = {std::move(lhs), std::move(rhs)};
  e->span = std::move(span);
  return e;
}

ExprPtr make_ternary(ExprPtr cond, ExprPtr then_expr, ExprPtr else_expr,
                     SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Ternary;
  e->operands = {std::move(cond), std::move(then_expr), std::move(else_expr)};
  e->span = std::move(span);
  return e;
}

ExprPtr make_index(std::string base, ExprPtr bit, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Index;
  e->name = std::move(base);
  e->operands = {std::move(bit)};
  e->span = std::move(span);
  return e;
}

ExprPtr make_slice(std::string base, ExprPtr msb, ExprPtr lsb,
                   SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Slice;
  e->name = std::move(base);
  e->operands = {std::move(msb), std::move(lsb)};
  e->span = std::move(span);
  return e;
}

ExprPtr with_operands(const Expr &expr, std::vector<ExprPtr> operands) {
  auto e = std::make_shared<Expr>(expr);
  e->operands = std::move(operands);
  return e;
}

bool same_expr(const Expr &a, const Expr &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case ExprKind::Const:
    return a.value == b.value && a.width == b.width && a.sized == b.sized;
  case ExprKind::Ref:
    return a.name == b.name;
  case ExprKind::Unary:
    if (a.unary_op != b.unary_op)
      return false;
    break;
  case ExprKind::Binary:
    if (a.binary_op != b.binary_op)
      return false;
    break;
  case ExprKind::Ternary:
    break;
  case ExprKind::Index:
  case ExprKind::Slice:
    if (a.name != b.name)
      return false;
    break;
  }
  if (a.operands.size() != b.operands.size())
    return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!same_expr(*a.operands[i], *b.operands[i]))
      return false;
  return true;
}

bool same_expr(const ExprPtr &a, const ExprPtr &b) {
  if (!a || !b)
    return !a && !b;
  return same_expr(*a, *b);
}

std::string expr_key(const Expr &expr, bool commutative) {
  switch (expr.kind) {
  case ExprKind::Const: {
    std::string s = "#" + std::to_string(expr.value) + "w" +
                    std::to_string(expr.width);
    if (expr.sized)
      s += "s";
    return s;
  }
  case ExprKind::Ref:
    return "$" + expr.name;
  case ExprKind::Unary:
    return std::string("(") + unary_op_text(expr.unary_op) + " " +
           expr_key(*expr.operands[0], commutative) + ")";
  case ExprKind::Binary: {
    std::string l = expr_key(*expr.operands[0], commutative);
    std::string r = expr_key(*expr.operands[1], commutative);
    if (commutative && is_commutative(expr.binary_op) && r < l)
      std::swap(l, r);
    return "(" + l + " " + binary_op_text(expr.binary_op) + " " + r + ")";
  }
  case ExprKind::Ternary:
    return "(" + expr_key(*expr.operands[0], commutative) + " ? " +
           expr_key(*expr.operands[1], commutative) + " : " +
           expr_key(*expr.operands[2], commutative) + ")";
  case ExprKind::Index:
    return "$" + expr.name + "[" + expr_key(*expr.operands[0], commutative) +
           "]";
  case ExprKind::Slice:
    return "$" + expr.name + "[" + expr_key(*expr.operands[0], commutative) +
           ":" + expr_key(*expr.operands[1], commutative) + "]";
  }
  return "?";
}

std::size_t node_count(const Expr &expr) {
  std::size_t n = 1;
  for (const auto &op : expr.operands)
    n += node_count(*op);
  return n;
}

void for_each_ref(const Expr &expr,
                  const std::function<void(const std::string &)> &fn) {
  if (expr.kind == ExprKind::Ref || expr.kind == ExprKind::Index ||
      expr.kind == ExprKind::Slice)
    fn(expr.name);
  for (const auto &op : expr.operands)
    for_each_ref(*op, fn);
}

bool is_const(const Expr &expr) { return expr.kind == ExprKind::Const; }

StmtPtr make_assign(StmtKind kind, std::string target, ExprPtr value,
                    SourceSpan span) {
  auto s = std::make_shared<Stmt>();
  s->kind = kind;
  s->target = std::move(target);
  s->value = std::move(value);
  s->span = std::move(span);
  return s;
}

StmtPtr make_if(ExprPtr cond, StmtList then_body,
                std::optional<StmtList> else_body, SourceSpan span) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::If;
  s->cond = std::move(cond);
  s->then_body = std::move(then_body);
  if (else_body) {
    s->has_else = true;
    s->else_body = std::move(*else_body);
  }
  s->span = std::move(span);
  return s;
}

StmtPtr make_case(ExprPtr subject, std::vector<CaseArm> arms,
                  SourceSpan span) {
  auto s = std::make_shared<Stmt>();
  s->kind = StmtKind::Case;
  s->subject = std::move(subject);
  s->arms = std::move(arms);
  s->span = std::move(span);
  return s;
}

bool same_stmts(const StmtList &a, const StmtList &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_stmt(*a[i], *b[i]))
      return false;
  return true;
}

bool same_stmt(const Stmt &a, const Stmt &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case StmtKind::Blocking:
  case StmtKind::Nonblocking:
    return a.target == b.target && same_expr(a.value, b.value);
  case StmtKind::If:
    return same_expr(a.cond, b.cond) && a.has_else == b.has_else &&
           same_stmts(a.then_body, b.then_body) &&
           same_stmts(a.else_body, b.else_body);
  case StmtKind::Case:
    if (!same_expr(a.subject, b.subject) || a.arms.size() != b.arms.size())
      return false;
    for (std::size_t i = 0; i < a.arms.size(); ++i) {
      const auto &x = a.arms[i];
      const auto &y = b.arms[i];
      if (x.labels.size() != y.labels.size() || !same_stmts(x.body, y.body))
        return false;
      for (std::size_t j = 0; j < x.labels.size(); ++j)
        if (!same_expr(x.labels[j], y.labels[j]))
          return false;
    }
    return true;
  }
  return false;
}

void collect_targets(const StmtList &body, std::vector<std::string> &out) {
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      if (std::find(out.begin(), out.end(), s->target) == out.end())
        out.push_back(s->target);
      break;
    case StmtKind::If:
      collect_targets(s->then_body, out);
      collect_targets(s->else_body, out);
      break;
    case StmtKind::Case:
      for (const auto &arm : s->arms)
        collect_targets(arm.body, out);
      break;
    }
  }
}

void collect_reads(const StmtList &body, std::vector<std::string> &out) {
  auto add = [&](const std::string &n) {
    if (std::find(out.begin(), out.end(), n) == out.end())
      out.push_back(n);
  };
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      for_each_ref(*s->value, add);
      break;
    case StmtKind::If:
      for_each_ref(*s->cond, add);
      collect_reads(s->then_body, out);
      collect_reads(s->else_body, out);
      break;
    case StmtKind::Case:
      for_each_ref(*s->subject, add);
      for (const auto &arm : s->arms) {
        for (const auto &l : arm.labels)
          for_each_ref(*l, add);
        collect_reads(arm.body, out);
      }
      break;
    }
  }
}

const Port *Design::find_port(const std::string &n) const {
  for (const auto &p : ports)
    if (p.name == n)
      return &p;
  return nullptr;
}

const Parameter *Design::find_parameter(const std::string &n) const {
  for (const auto &p : parameters)
    if (p.name == n)
      return &p;
  return nullptr;
}

bool Design::has_clocked_block() const {
  for (const auto &item : items)
    if (const auto *a = std::get_if<AlwaysBlock>(&item))
      if (a->sensitivity.clocked())
        return true;
  return false;
}

namespace {

bool same_range(const std::optional<Range> &a, const std::optional<Range> &b) {
  if (a.has_value() != b.has_value())
    return false;
  if (!a)
    return true;
  return same_expr(a->msb, b->msb) && same_expr(a->lsb, b->lsb);
}

bool same_sensitivity(const Sensitivity &a, const Sensitivity &b) {
  if (a.kind != b.kind || a.signals != b.signals ||
      a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].posedge != b.edges[i].posedge ||
        a.edges[i].signal != b.edges[i].signal)
      return false;
  return true;
}

std::size_t node_count(const StmtList &body) {
  std::size_t n = 0;
  for (const auto &s : body) {
    ++n;
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      n += node_count(*s->value);
      break;
    case StmtKind::If:
      n += node_count(*s->cond) + node_count(s->then_body) +
           node_count(s->else_body);
      break;
    case StmtKind::Case:
      n += node_count(*s->subject);
      for (const auto &arm : s->arms) {
        for (const auto &l : arm.labels)
          n += node_count(*l);
        n += node_count(arm.body);
      }
      break;
    }
  }
  return n;
}

} // namespace

bool same_design(const Design &a, const Design &b) {
  if (a.name != b.name || a.parameters.size() != b.parameters.size() ||
      a.ports.size() != b.ports.size() || a.decls.size() != b.decls.size() ||
      a.items.size() != b.items.size())
    return false;
  for (std::size_t i = 0; i < a.parameters.size(); ++i) {
    const auto &x = a.parameters[i];
    const auto &y = b.parameters[i];
    if (x.name != y.name || x.in_header != y.in_header || x.local != y.local ||
        !same_expr(x.value, y.value))
      return false;
  }
  for (std::size_t i = 0; i < a.ports.size(); ++i) {
    const auto &x = a.ports[i];
    const auto &y = b.ports[i];
    if (x.name != y.name || x.direction != y.direction || x.kind != y.kind ||
        x.kind_explicit != y.kind_explicit || !same_range(x.range, y.range))
      return false;
  }
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const auto &x = a.decls[i];
    const auto &y = b.decls[i];
    if (x.kind != y.kind || x.names != y.names || !same_range(x.range, y.range))
      return false;
  }
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (a.items[i].index() != b.items[i].index())
      return false;
    if (const auto *x = std::get_if<ContinuousAssign>(&a.items[i])) {
      const auto &y = std::get<ContinuousAssign>(b.items[i]);
      if (x->target != y.target || !same_expr(x->value, y.value))
        return false;
    } else {
      const auto &u = std::get<AlwaysBlock>(a.items[i]);
      const auto &v = std::get<AlwaysBlock>(b.items[i]);
      if (!same_sensitivity(u.sensitivity, v.sensitivity) ||
          !same_stmts(u.body, v.body))
        return false;
    }
  }
  return true;
}

std::size_t node_count(const Design &design) {
  std::size_t n = 1 + design.parameters.size() + design.ports.size();
  for (const auto &d : design.decls)
    n += d.names.size();
  for (const auto &item : design.items) {
    if (const auto *a = std::get_if<ContinuousAssign>(&item))
      n += 1 + node_count(*a->value);
    else
      n += 1 + node_count(std::get<AlwaysBlock>(item).body);
  }
  return n;
}

} // namespace symrtlo
