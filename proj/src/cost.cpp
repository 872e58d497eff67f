// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/cost.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <unordered_map>

#include "symrtlo/elaborate.hpp"

namespace symrtlo {

const char *cell_kind_name(CellKind kind) {
  switch (kind) {
  case CellKind::Gate:
    return "gate";
  case CellKind::Add:
    return "add";
  case CellKind::Sub:
    return "sub";
  case CellKind::Mul:
    return "mul";
  case CellKind::Div:
    return "div";
  case CellKind::Shift:
    return "shift";
  case CellKind::Compare:
    return "compare";
  case CellKind::Mux:
    return "mux";
  case CellKind::Register:
    return "register";
  }
  return "?";
}

std::uint64_t area_weight(CellKind kind, unsigned width) {
  std::uint64_t w = width;
  switch (kind) {
  case CellKind::Gate:
    return 1;
  case CellKind::Mul:
    return w * w;
  case CellKind::Div:
    return 2 * w * w;
  case CellKind::Register:
    return 2 * w;
  default:
    return w;
  }
}

namespace {

// Value of a signal during lowering, before it is committed to nets.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Tag { Net, Const, Cell } tag = Tag::Net;
  std::size_t net = 0;
  std::uint64_t value = 0;
  unsigned width = 1;
  CellKind kind = CellKind::Gate;
  std::string op;
  bool commutative = false;
  std::vector<NodePtr> in;
};

NodePtr net_node(std::size_t net) {
  auto n = std::make_shared<Node>();
  n->net = net;
  return n;
}

NodePtr const_node(std::uint64_t value, unsigned width) {
  auto n = std::make_shared<Node>();
  n->tag = Node::Tag::Const;
  n->value = value;
  n->width = width;
  return n;
}

NodePtr cell_node(CellKind kind, std::string op, unsigned width,
                  std::vector<NodePtr> in, bool commutative = false) {
  auto n = std::make_shared<Node>();
  n->tag = Node::Tag::Cell;
  n->kind = kind;
  n->op = std::move(op);
  n->width = width;
  n->in = std::move(in);
  n->commutative = commutative;
  return n;
}

struct Env {
  std::map<std::string, NodePtr> visible; // blocking results, read back
  std::map<std::string, NodePtr> out;     // final value per target
};

class Lowering {
public:
  explicit Lowering(const Design &d) : design_(d), table_(SignalTable::build(d)) {
    for (const auto &name : table_.order()) {
      const SignalInfo &s = table_.at(name);
      if (s.kind == SignalKind::Parameter)
        continue;
      named_[name] = nl_.nets.size();
      nl_.nets.push_back({name, NetRole::Named, s.is_port(), std::nullopt});
    }
  }

  Netlist run() {
    for (const auto &item : design_.items) {
      if (const auto *ca = std::get_if<ContinuousAssign>(&item)) {
        block_targets_.clear();
        comb_ = true;
        Env env;
        drive(ca->target, expr(*ca->value, env));
      } else {
        const auto &blk = std::get<AlwaysBlock>(item);
        std::vector<std::string> targets;
        collect_targets(blk.body, targets);
        block_targets_ = std::set<std::string>(targets.begin(), targets.end());
        comb_ = !blk.sensitivity.clocked();
        Env env;
        stmts(blk.body, env);
        for (const auto &t : targets) {
          auto it = env.out.find(t);
          if (it == env.out.end())
            continue;
          if (comb_)
            drive(t, it->second);
          else
            latch(t, it->second);
        }
      }
    }
    return std::move(nl_);
  }

private:
  NodePtr initial(const std::string &t) const {
    // Comb-block variables start each evaluation at zero; registers hold.
    if (comb_ && block_targets_.count(t))
      return const_node(0, table_.at(t).width);
    return net_node(named_.at(t));
  }

  static bool is_static(const Expr &e, const SignalTable &table) {
    bool ok = true;
    for_each_ref(e, [&](const std::string &n) {
      const SignalInfo *s = table.find(n);
      if (!s || s->kind != SignalKind::Parameter)
        ok = false;
    });
    return ok;
  }

  NodePtr expr(const Expr &e, const Env &env) {
    switch (e.kind) {
    case ExprKind::Const:
      return const_node(e.value, e.width);
    case ExprKind::Ref: {
      const SignalInfo &s = table_.at(e.name);
      if (s.kind == SignalKind::Parameter)
        return const_node(s.param_value, s.width);
      if (auto it = env.visible.find(e.name); it != env.visible.end())
        return it->second;
      if (block_targets_.count(e.name))
        return initial(e.name);
      return net_node(named_.at(e.name));
    }
    case ExprKind::Index:
    case ExprKind::Slice: {
      Expr base;
      base.kind = ExprKind::Ref;
      base.name = e.name;
      NodePtr b = expr(base, env);
      bool fixed = std::all_of(e.operands.begin(), e.operands.end(),
                               [&](const ExprPtr &o) { return is_static(*o, table_); });
      if (fixed)
        return b; // plain wiring
      std::vector<NodePtr> in{b};
      for (const auto &o : e.operands)
        in.push_back(expr(*o, env));
      return cell_node(CellKind::Mux, "[]", table_.width_of(e), std::move(in));
    }
    case ExprKind::Unary: {
      NodePtr a = expr(*e.operands[0], env);
      if (e.unary_op == UnaryOp::Negate)
        return cell_node(CellKind::Sub, "neg", table_.width_of(e), {a});
      return cell_node(CellKind::Gate, unary_op_text(e.unary_op), table_.width_of(e),
                       {a});
    }
    case ExprKind::Binary: {
      NodePtr a = expr(*e.operands[0], env);
      NodePtr b = expr(*e.operands[1], env);
      BinaryOp op = e.binary_op;
      unsigned w = table_.width_of(e);
      CellKind kind = CellKind::Gate;
      switch (op) {
      case BinaryOp::Add:
        kind = CellKind::Add;
        break;
      case BinaryOp::Sub:
        kind = CellKind::Sub;
        break;
      case BinaryOp::Mul:
        kind = CellKind::Mul;
        break;
      case BinaryOp::Div:
      case BinaryOp::Mod:
        kind = CellKind::Div;
        break;
      case BinaryOp::Shl:
      case BinaryOp::Shr:
        kind = CellKind::Shift;
        break;
      default:
        if (is_comparison(op)) {
          kind = CellKind::Compare;
          w = std::max(table_.width_of(*e.operands[0]),
                       table_.width_of(*e.operands[1]));
        }
        break;
      }
      return cell_node(kind, binary_op_text(op), w, {a, b}, is_commutative(op));
    }
    case ExprKind::Ternary:
      return cell_node(CellKind::Mux, "?:", table_.width_of(e),
                       {expr(*e.operands[0], env), expr(*e.operands[1], env),
                        expr(*e.operands[2], env)});
    }
    return const_node(0, 1);
  }

  NodePtr lookup(const std::map<std::string, NodePtr> &m, const std::string &t) const {
    auto it = m.find(t);
    return it == m.end() ? initial(t) : it->second;
  }

  // Joins two branch environments under `cond` (true selects `a`).
  Env merge(const NodePtr &cond, const Env &a, const Env &b) const {
    auto join = [&](const std::map<std::string, NodePtr> &x,
                    const std::map<std::string, NodePtr> &y) {
      std::map<std::string, NodePtr> r;
      std::set<std::string> keys;
      for (const auto &[k, v] : x)
        keys.insert(k);
      for (const auto &[k, v] : y)
        keys.insert(k);
      for (const auto &k : keys) {
        NodePtr vx = lookup(x, k), vy = lookup(y, k);
        r[k] = vx == vy ? vx
                        : cell_node(CellKind::Mux, "?:", table_.at(k).width,
                                    {cond, vx, vy});
      }
      return r;
    };
    return {join(a.visible, b.visible), join(a.out, b.out)};
  }

  void stmts(const StmtList &body, Env &env) {
    for (const auto &s : body) {
      switch (s->kind) {
      case StmtKind::Blocking: {
        NodePtr v = expr(*s->value, env);
        env.visible[s->target] = v;
        env.out[s->target] = v;
        break;
      }
      case StmtKind::Nonblocking:
        env.out[s->target] = expr(*s->value, env);
        break;
      case StmtKind::If: {
        NodePtr c = expr(*s->cond, env);
        Env t = env, f = env;
        stmts(s->then_body, t);
        stmts(s->else_body, f);
        env = merge(c, t, f);
        break;
      }
      case StmtKind::Case: {
        NodePtr subject = expr(*s->subject, env);
        unsigned sw = table_.width_of(*s->subject);
        Env acc = env;
        for (const auto &arm : s->arms)
          if (arm.is_default()) {
            acc = env;
            stmts(arm.body, acc);
          }
        for (auto it = s->arms.rbegin(); it != s->arms.rend(); ++it) {
          if (it->is_default())
            continue;
          NodePtr cond;
          for (const auto &l : it->labels) {
            unsigned w = std::max(sw, table_.width_of(*l));
            NodePtr eq = cell_node(CellKind::Compare, "==", w, {subject, expr(*l, env)},
                                   true);
            cond = cond ? cell_node(CellKind::Gate, "||", 1, {cond, eq}, true) : eq;
          }
          Env arm_env = env;
          stmts(it->body, arm_env);
          acc = merge(cond, arm_env, acc);
        }
        env = std::move(acc);
        break;
      }
      }
    }
  }

  std::size_t materialize(const NodePtr &n) {
    if (auto it = memo_.find(n.get()); it != memo_.end())
      return it->second;
    std::size_t id = 0;
    switch (n->tag) {
    case Node::Tag::Net:
      id = n->net;
      break;
    case Node::Tag::Const: {
      std::string key = std::to_string(n->width) + "'" + std::to_string(n->value);
      auto [it, fresh] = consts_.try_emplace(key, nl_.nets.size());
      if (fresh)
        nl_.nets.push_back({key, NetRole::Constant, false, std::nullopt});
      id = it->second;
      break;
    }
    case Node::Tag::Cell: {
      std::vector<std::size_t> in = inputs(*n);
      std::string key = std::string(cell_kind_name(n->kind)) + "|" + n->op + "|" +
                        std::to_string(n->width);
      for (auto i : in)
        key += "|" + std::to_string(i);
      auto [it, fresh] = hashed_.try_emplace(key, nl_.nets.size());
      if (fresh) {
        nl_.nets.push_back({"$n" + std::to_string(intermediates_++),
                            NetRole::Intermediate, true, std::nullopt});
        nl_.cells.push_back({n->kind, n->op, n->width, std::move(in), it->second});
      }
      id = it->second;
      break;
    }
    }
    memo_[n.get()] = id;
    keep_.push_back(n);
    return id;
  }

  std::vector<std::size_t> inputs(const Node &n) {
    std::vector<std::size_t> in;
    for (const auto &i : n.in)
      in.push_back(materialize(i));
    if (n.commutative)
      std::sort(in.begin(), in.end());
    return in;
  }

  // Continuous or combinational driver: the root cell writes the signal.
  void drive(const std::string &target, const NodePtr &value) {
    std::size_t t = named_.at(target);
    nl_.nets[t].counted = true;
    if (value->tag != Node::Tag::Cell) {
      std::size_t src = materialize(value);
      if (src != t)
        nl_.nets[t].alias_of = src;
      return;
    }
    nl_.cells.push_back({value->kind, value->op, value->width, inputs(*value), t});
  }

  void latch(const std::string &target, const NodePtr &value) {
    std::size_t t = named_.at(target);
    nl_.nets[t].counted = true;
    nl_.cells.push_back(
        {CellKind::Register, "reg", table_.at(target).width, {materialize(value)}, t});
  }

  const Design &design_;
  SignalTable table_;
  Netlist nl_;
  std::map<std::string, std::size_t> named_;
  std::map<std::string, std::size_t> consts_;
  std::unordered_map<std::string, std::size_t> hashed_;
  std::unordered_map<const Node *, std::size_t> memo_;
  std::vector<NodePtr> keep_; // pins memo_ keys
  std::size_t intermediates_ = 0;
  std::set<std::string> block_targets_;
  bool comb_ = true;
};

} // namespace

Netlist lower(const Design &design) { return Lowering(design).run(); }

CostReport cost(const Netlist &nl) {
  CostReport r;
  for (const auto &n : nl.nets)
    if (n.counted)
      ++r.wires;
  std::vector<std::optional<std::size_t>> driver(nl.nets.size());
  for (std::size_t i = 0; i < nl.cells.size(); ++i) {
    const Cell &c = nl.cells[i];
    driver[c.output] = i;
    ++r.cells;
    ++r.histogram[cell_kind_name(c.kind)];
    r.area_proxy += area_weight(c.kind, c.width);
    if (c.kind == CellKind::Register)
      r.register_bits += c.width;
  }
  std::vector<std::optional<std::size_t>> depth(nl.nets.size());
  std::vector<bool> active(nl.nets.size(), false);
  std::function<std::size_t(std::size_t)> depth_of = [&](std::size_t n) -> std::size_t {
    if (depth[n])
      return *depth[n];
    if (active[n])
      return 0; // only reachable through a register or an invalid design
    active[n] = true;
    std::size_t d = 0;
    if (nl.nets[n].alias_of) {
      d = depth_of(*nl.nets[n].alias_of);
    } else if (driver[n] && nl.cells[*driver[n]].kind != CellKind::Register) {
      for (auto i : nl.cells[*driver[n]].inputs)
        d = std::max(d, depth_of(i));
      d += 1;
    }
    active[n] = false;
    depth[n] = d;
    return d;
  };
  for (std::size_t n = 0; n < nl.nets.size(); ++n)
    r.depth = std::max(r.depth, depth_of(n));
  return r;
}

CostReport cost(const Design &design) { return cost(lower(design)); }

nlohmann::ordered_json CostReport::to_json() const {
  nlohmann::ordered_json j;
  j["wires"] = wires;
  j["cells"] = cells;
  j["area_proxy"] = area_proxy;
  j["depth"] = depth;
  j["register_bits"] = register_bits;
  j["histogram"] = nlohmann::ordered_json::object();
  for (const auto &[k, v] : histogram)
    j["histogram"][k] = v;
  return j;
}

} // namespace symrtlo
