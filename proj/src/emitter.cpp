// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "symrtlo/frontend.hpp"

namespace symrtlo {

namespace {

// Binding strength, matching the parser's precedence table.
int binary_prec(BinaryOp op) {
  switch (op) {
  case BinaryOp::LogicalOr: return 1;
  case BinaryOp::LogicalAnd: return 2;
  case BinaryOp::BitOr: return 3;
  case BinaryOp::BitXor: return 4;
  case BinaryOp::BitAnd: return 5;
  case BinaryOp::Eq:
  case BinaryOp::Ne: return 6;
  case BinaryOp::Lt:
  case BinaryOp::Le:
  case BinaryOp::Gt:
  case BinaryOp::Ge: return 7;
  case BinaryOp::Shl:
  case BinaryOp::Shr: return 8;
  case BinaryOp::Add:
  case BinaryOp::Sub: return 9;
  case BinaryOp::Mul:
  case BinaryOp::Div:
  case BinaryOp::Mod: return 10;
  }
  return 0;
}

constexpr int kTernaryPrec = 0;
constexpr int kPrimaryPrec = 20;

int expr_prec(const Expr &e) {
  switch (e.kind) {
  case ExprKind::Ternary: return kTernaryPrec;
  case ExprKind::Binary: return binary_prec(e.binary_op);
  default: return kPrimaryPrec;
  }
}

std::string const_text(const Expr &e) {
  if (!e.sized)
    return std::to_string(e.value);
  std::string out = std::to_string(e.width) + "'";
  switch (e.base) {
  case 'b': {
    std::string bits;
    for (unsigned i = e.width; i-- > 0;)
      bits += ((e.value >> i) & 1) ? '1' : '0';
    return out + "b" + bits;
  }
  case 'h': {
    std::ostringstream os;
    os << std::hex << e.value;
    return out + "h" + os.str();
  }
  case 'o': {
    std::ostringstream os;
    os << std::oct << e.value;
    return out + "o" + os.str();
  }
  default:
    return out + "d" + std::to_string(e.value);
  }
}

void emit_into(const Expr &e, std::string &out);

void emit_child(const Expr &child, bool parens, std::string &out) {
  if (parens)
    out += '(';
  emit_into(child, out);
  if (parens)
    out += ')';
}

void emit_into(const Expr &e, std::string &out) {
  switch (e.kind) {
  case ExprKind::Const:
    out += const_text(e);
    return;
  case ExprKind::Ref:
    out += e.name;
    return;
  case ExprKind::Index:
    out += e.name + "[";
    emit_into(*e.operands[0], out);
    out += "]";
    return;
  case ExprKind::Slice:
    out += e.name + "[";
    emit_into(*e.operands[0], out);
    out += ":";
    emit_into(*e.operands[1], out);
    out += "]";
    return;
  case ExprKind::Unary: {
    out += unary_op_text(e.unary_op);
    const Expr &x = *e.operands[0];
    // `~&a` would lex as a reduction operator, so nested unaries get parens.
    emit_child(x, expr_prec(x) < kPrimaryPrec || x.kind == ExprKind::Unary,
               out);
    return;
  }
  case ExprKind::Binary: {
    int p = binary_prec(e.binary_op);
    const Expr &l = *e.operands[0];
    const Expr &r = *e.operands[1];
    emit_child(l, expr_prec(l) < p, out);
    out += ' ';
    out += binary_op_text(e.binary_op);
    out += ' ';
    emit_child(r, expr_prec(r) <= p, out);
    return;
  }
  case ExprKind::Ternary: {
    const Expr &c = *e.operands[0];
    emit_child(c, c.kind == ExprKind::Ternary, out);
    out += " ? ";
    emit_into(*e.operands[1], out);
    out += " : ";
    emit_into(*e.operands[2], out);
    return;
  }
  }
}

std::string range_text(const std::optional<Range> &r) {
  if (!r)
    return "";
  return "[" + emit_expr(*r->msb) + ":" + emit_expr(*r->lsb) + "] ";
}

class Writer {
public:
  std::string str() const { return out_.str(); }

  void line(int depth, const std::string &text) {
    out_ << std::string(static_cast<std::size_t>(depth) * 2, ' ') << text
         << '\n';
  }

  void body(const StmtList &stmts, int depth) {
    for (const auto &s : stmts)
      stmt(*s, depth);
  }

  // Emits `head` followed by the block; single simple statements go inline
  // on the next line without begin/end.
  void block(const std::string &head, const StmtList &stmts, int depth,
             bool force_begin, const std::string &tail_after_end = "") {
    bool braces = force_begin || stmts.size() != 1;
    if (braces) {
      line(depth, head + " begin");
      body(stmts, depth + 1);
      line(depth, "end" + tail_after_end);
    } else {
      line(depth, head);
      body(stmts, depth + 1);
    }
  }

  void stmt(const Stmt &s, int depth) {
    switch (s.kind) {
    case StmtKind::Blocking:
      line(depth, s.target + " = " + emit_expr(*s.value) + ";");
      return;
    case StmtKind::Nonblocking:
      line(depth, s.target + " <= " + emit_expr(*s.value) + ";");
      return;
    case StmtKind::If:
      if_stmt(s, depth, "if");
      return;
    case StmtKind::Case:
      line(depth, "case (" + emit_expr(*s.subject) + ")");
      for (const auto &arm : s.arms) {
        std::string labels;
        if (arm.is_default()) {
          labels = "default";
        } else {
          for (std::size_t i = 0; i < arm.labels.size(); ++i) {
            if (i)
              labels += ", ";
            labels += emit_expr(*arm.labels[i]);
          }
        }
        block(labels + ":", arm.body, depth + 1, false);
      }
      line(depth, "endcase");
      return;
    }
  }

private:
  void if_stmt(const Stmt &s, int depth, const std::string &keyword) {
    std::string head = keyword + " (" + emit_expr(*s.cond) + ")";
    // A lone nested `if` in the then-branch needs begin/end so a following
    // else binds to the outer statement.
    bool then_is_if = s.then_body.size() == 1 &&
                      s.then_body[0]->kind == StmtKind::If;
    bool then_braces = s.then_body.size() != 1 || (then_is_if && s.has_else);
    if (then_braces) {
      line(depth, head + " begin");
      body(s.then_body, depth + 1);
      if (!s.has_else) {
        line(depth, "end");
        return;
      }
      line(depth, "end");
    } else {
      line(depth, head);
      body(s.then_body, depth + 1);
      if (!s.has_else)
        return;
    }
    if (s.else_body.size() == 1 && s.else_body[0]->kind == StmtKind::If) {
      if_stmt(*s.else_body[0], depth, "else if");
      return;
    }
    block("else", s.else_body, depth, false);
  }

  std::ostringstream out_;
};

std::string sensitivity_text(const Sensitivity &s) {
  switch (s.kind) {
  case Sensitivity::Kind::Star:
    return "@(*)";
  case Sensitivity::Kind::List: {
    std::string out = "@(";
    for (std::size_t i = 0; i < s.signals.size(); ++i)
      out += (i ? " or " : "") + s.signals[i];
    return out + ")";
  }
  case Sensitivity::Kind::Edges: {
    std::string out = "@(";
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      if (i)
        out += " or ";
      out += (s.edges[i].posedge ? "posedge " : "negedge ") + s.edges[i].signal;
    }
    return out + ")";
  }
  }
  return "@(*)";
}

} // namespace

std::string emit_expr(const Expr &expr) {
  std::string out;
  emit_into(expr, out);
  return out;
}

std::string emit(const Design &d) {
  Writer w;
  std::vector<const Parameter *> header;
  std::vector<const Parameter *> body_params;
  for (const auto &p : d.parameters)
    (p.in_header ? header : body_params).push_back(&p);

  if (header.empty()) {
    w.line(0, "module " + d.name + " (");
  } else {
    w.line(0, "module " + d.name + " #(");
    for (std::size_t i = 0; i < header.size(); ++i)
      w.line(1, "parameter " + header[i]->name + " = " +
                    emit_expr(*header[i]->value) +
                    (i + 1 < header.size() ? "," : ""));
    w.line(0, ") (");
  }
  for (std::size_t i = 0; i < d.ports.size(); ++i) {
    const Port &p = d.ports[i];
    std::string text = p.direction == Direction::Input ? "input " : "output ";
    if (p.kind_explicit || p.kind == NetKind::Reg)
      text += p.kind == NetKind::Reg ? "reg " : "wire ";
    text += range_text(p.range) + p.name;
    if (i + 1 < d.ports.size())
      text += ",";
    w.line(1, text);
  }
  w.line(0, ");");

  for (const Parameter *p : body_params)
    w.line(1, std::string(p->local ? "localparam " : "parameter ") + p->name +
                  " = " + emit_expr(*p->value) + ";");
  for (const Decl &decl : d.decls) {
    std::string text = decl.kind == NetKind::Reg ? "reg " : "wire ";
    text += range_text(decl.range);
    for (std::size_t i = 0; i < decl.names.size(); ++i)
      text += (i ? ", " : "") + decl.names[i];
    w.line(1, text + ";");
  }
  for (const auto &item : d.items) {
    if (const auto *a = std::get_if<ContinuousAssign>(&item)) {
      w.line(1, "assign " + a->target + " = " + emit_expr(*a->value) + ";");
    } else {
      const auto &blk = std::get<AlwaysBlock>(item);
      w.line(1, "always " + sensitivity_text(blk.sensitivity) + " begin");
      w.body(blk.body, 2);
      w.line(1, "end");
    }
  }
  w.line(0, "endmodule");
  return w.str();
}

} // namespace symrtlo
