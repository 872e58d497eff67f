// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Typed AST for the supported Verilog subset. All nodes are immutable once
// built and are shared by pointer; rewrites build new trees instead of
// mutating existing ones.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symrtlo/span.hpp"

namespace symrtlo {

enum class UnaryOp { BitNot, LogicalNot, Negate, ReduceAnd, ReduceOr, ReduceXor };

enum class BinaryOp {
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Shl,
  Shr,
  BitAnd,
  BitOr,
  BitXor,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  LogicalAnd,
  LogicalOr,
};

const char *unary_op_text(UnaryOp op);
const char *binary_op_text(BinaryOp op);
bool is_commutative(BinaryOp op);
bool is_comparison(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Const, Ref, Unary, Binary, Ternary, Index, Slice };

/// Unsized decimal literals are 32 bits wide, as in Verilog.
inline constexpr unsigned kUnsizedWidth = 32;
inline constexpr unsigned kMaxWidth = 64;

struct Expr {
  ExprKind kind = ExprKind::Const;

  // Const
  std::uint64_t value = 0;
  unsigned width = 0;
  bool sized = false;
  char base = 'd';

  // Ref, and the base signal of Index / Slice
  std::string name;

  UnaryOp unary_op = UnaryOp::BitNot;
  BinaryOp binary_op = BinaryOp::Add;

  // Unary: [operand]; Binary: [lhs, rhs]; Ternary: [cond, then, else];
  // Index: [bit]; Slice: [msb, lsb]
  std::vector<ExprPtr> operands;

  SourceSpan span;
};

ExprPtr make_const(std::uint64_t value, unsigned width, bool sized,
                   char base = 'd', SourceSpan span = {});
ExprPtr make_unsized(std::uint64_t value, SourceSpan span = {});
ExprPtr make_ref(std::string name, SourceSpan span = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan span = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs,
                    SourceSpan span = {});
ExprPtr make_ternary(ExprPtr cond, ExprPtr then_expr, ExprPtr else_expr,
                     SourceSpan span = {});
ExprPtr make_index(std::string base, ExprPtr bit, SourceSpan span = {});
ExprPtr make_slice(std::string base, ExprPtr msb, ExprPtr lsb,
                   SourceSpan span = {});

/// Copy of `expr` with operand list replaced.
ExprPtr with_operands(const Expr &expr, std::vector<ExprPtr> operands);

/// Structural equality, ignoring spans.
bool same_expr(const Expr &a, const Expr &b);
bool same_expr(const ExprPtr &a, const ExprPtr &b);

/// Deterministic textual key. With `commutative` set, operands of + * & | ^
/// (and == !=, && ||) are ordered canonically so `a*b` and `b*a` share a key.
std::string expr_key(const Expr &expr, bool commutative = false);

std::size_t node_count(const Expr &expr);

/// Calls `fn` on every Ref / Index / Slice base name in the tree.
void for_each_ref(const Expr &expr,
                  const std::function<void(const std::string &)> &fn);

bool is_const(const Expr &expr);

// ---------------------------------------------------------------------------
// Statements

struct Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using StmtList = std::vector<StmtPtr>;

enum class StmtKind { Blocking, Nonblocking, If, Case };

struct CaseArm {
  std::vector<ExprPtr> labels; // empty means `default`
  StmtList body;
  bool is_default() const { return labels.empty(); }
};

struct Stmt {
  StmtKind kind = StmtKind::Blocking;

  // Blocking / Nonblocking
  std::string target;
  ExprPtr value;

  // If
  ExprPtr cond;
  StmtList then_body;
  StmtList else_body;
  bool has_else = false;

  // Case
  ExprPtr subject;
  std::vector<CaseArm> arms;

  SourceSpan span;
};

StmtPtr make_assign(StmtKind kind, std::string target, ExprPtr value,
                    SourceSpan span = {});
StmtPtr make_if(ExprPtr cond, StmtList then_body,
                std::optional<StmtList> else_body, SourceSpan span = {});
StmtPtr make_case(ExprPtr subject, std::vector<CaseArm> arms,
                  SourceSpan span = {});

bool same_stmt(const Stmt &a, const Stmt &b);
bool same_stmts(const StmtList &a, const StmtList &b);

/// Signals assigned anywhere in the statement list.
void collect_targets(const StmtList &body, std::vector<std::string> &out);
/// Signals read anywhere in the statement list (conditions, subjects, labels,
/// right-hand sides).
void collect_reads(const StmtList &body, std::vector<std::string> &out);

// ---------------------------------------------------------------------------
// Module items

struct Range {
  ExprPtr msb;
  ExprPtr lsb;
};

enum class Direction { Input, Output };
enum class NetKind { Wire, Reg };

struct Port {
  std::string name;
  Direction direction = Direction::Input;
  NetKind kind = NetKind::Wire;
  bool kind_explicit = false; // `input wire a` vs `input a`
  std::optional<Range> range;
  SourceSpan span;
};

struct Parameter {
  std::string name;
  ExprPtr value;
  bool in_header = false;
  bool local = false; // `localparam`
  SourceSpan span;
};

struct Decl {
  NetKind kind = NetKind::Wire;
  std::optional<Range> range;
  std::vector<std::string> names;
  SourceSpan span;
};

struct ContinuousAssign {
  std::string target;
  ExprPtr value;
  SourceSpan span;
};

struct Edge {
  bool posedge = true;
  std::string signal;
};

struct Sensitivity {
  enum class Kind { Star, List, Edges };
  Kind kind = Kind::Star;
  std::vector<std::string> signals; // Kind::List
  std::vector<Edge> edges;          // Kind::Edges
  bool clocked() const { return kind == Kind::Edges; }
};

struct AlwaysBlock {
  Sensitivity sensitivity;
  StmtList body;
  SourceSpan span;
};

using ModuleItem = std::variant<ContinuousAssign, AlwaysBlock>;

enum class NodeKind { Module, Assign, Always, Expr };
const char *node_kind_name(NodeKind kind);

struct Design {
  std::string name;
  std::vector<Parameter> parameters;
  std::vector<Port> ports;
  std::vector<Decl> decls;
  std::vector<ModuleItem> items;
  SourceSpan span;

  const Port *find_port(const std::string &name) const;
  const Parameter *find_parameter(const std::string &name) const;
  bool has_clocked_block() const;
};

/// Structural equality of two designs, ignoring spans.
bool same_design(const Design &a, const Design &b);

std::size_t node_count(const Design &design);

} // namespace symrtlo
