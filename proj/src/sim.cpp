// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/sim.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"

namespace symrtlo {

// ---------------------------------------------------------------------------
// Scheduling

namespace {

bool is_constant_expr(const Expr &e, const Design &d) {
  bool ok = true;
  for_each_ref(e, [&](const std::string &n) {
    if (!d.find_parameter(n))
      ok = false;
  });
  return ok;
}

bool assigns_only_constants(const StmtList &body, const Design &d) {
  for (const auto &s : body) {
    if (s->kind != StmtKind::Nonblocking && s->kind != StmtKind::Blocking)
      return false;
    if (!is_constant_expr(*s->value, d))
      return false;
  }
  return !body.empty();
}

// `sig`, `!sig` or `~sig`; sets `negated` accordingly.
bool tests_signal(const Expr &cond, const std::string &sig, bool &negated) {
  if (cond.kind == ExprKind::Ref && cond.name == sig) {
    negated = false;
    return true;
  }
  if (cond.kind == ExprKind::Unary &&
      (cond.unary_op == UnaryOp::LogicalNot ||
       cond.unary_op == UnaryOp::BitNot) &&
      cond.operands[0]->kind == ExprKind::Ref &&
      cond.operands[0]->name == sig) {
    negated = true;
    return true;
  }
  return false;
}

// The top-level reset `if` of a clocked body, if any.
const Stmt *reset_branch(const AlwaysBlock &blk) {
  if (blk.body.size() != 1 || blk.body[0]->kind != StmtKind::If)
    return nullptr;
  return blk.body[0].get();
}

std::string loop_message(const std::vector<Process> &procs,
                         const std::vector<bool> &done,
                         const std::map<std::string, std::size_t> &writer) {
  // Walk dependencies among unscheduled processes until one repeats.
  std::size_t start = 0;
  while (done[start])
    ++start;
  std::vector<std::size_t> path;
  std::vector<std::string> via;
  std::map<std::size_t, std::size_t> seen;
  std::size_t cur = start;
  while (!seen.count(cur)) {
    seen[cur] = path.size();
    path.push_back(cur);
    std::string sig;
    std::size_t nxt = cur;
    for (const auto &r : procs[cur].reads) {
      auto it = writer.find(r);
      if (it != writer.end() && it->second != cur && !done[it->second]) {
        sig = r;
        nxt = it->second;
        break;
      }
    }
    via.push_back(sig);
    cur = nxt;
  }
  std::string msg = "combinational loop: ";
  std::size_t from = seen[cur];
  for (std::size_t i = from; i < path.size(); ++i)
    msg += via[i] + " -> ";
  msg += via[from];
  return msg;
}

} // namespace

std::vector<Process> schedule_processes(const Design &design) {
  std::vector<Process> comb;
  std::vector<Process> clocked;
  for (std::size_t i = 0; i < design.items.size(); ++i) {
    Process p;
    p.item_index = i;
    auto add_read = [&p](const std::string &n) {
      if (std::find(p.reads.begin(), p.reads.end(), n) == p.reads.end())
        p.reads.push_back(n);
    };
    if (const auto *a = std::get_if<ContinuousAssign>(&design.items[i])) {
      p.kind = Process::Kind::Assign;
      p.writes = {a->target};
      for_each_ref(*a->value, add_read);
      comb.push_back(std::move(p));
    } else {
      const auto &blk = std::get<AlwaysBlock>(design.items[i]);
      collect_targets(blk.body, p.writes);
      collect_reads(blk.body, p.reads);
      if (blk.sensitivity.clocked()) {
        p.kind = Process::Kind::Clocked;
        clocked.push_back(std::move(p));
      } else {
        p.kind = Process::Kind::Comb;
        comb.push_back(std::move(p));
      }
    }
  }

  std::map<std::string, std::size_t> writer;
  for (std::size_t i = 0; i < comb.size(); ++i)
    for (const auto &w : comb[i].writes)
      writer.emplace(w, i);

  std::vector<std::vector<std::size_t>> users(comb.size());
  std::vector<int> pending(comb.size(), 0);
  for (std::size_t i = 0; i < comb.size(); ++i) {
    std::set<std::size_t> deps;
    for (const auto &r : comb[i].reads) {
      auto it = writer.find(r);
      if (it != writer.end() && it->second != i)
        deps.insert(it->second);
    }
    pending[i] = static_cast<int>(deps.size());
    for (auto d : deps)
      users[d].push_back(i);
  }

  // Kahn's algorithm, always taking the earliest ready item in source order.
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < comb.size(); ++i)
    if (pending[i] == 0)
      ready.insert(i);
  std::vector<bool> done(comb.size(), false);
  std::vector<Process> out;
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    done[i] = true;
    out.push_back(comb[i]);
    for (auto u : users[i])
      if (--pending[u] == 0)
        ready.insert(u);
  }
  if (out.size() != comb.size())
    throw Error(ErrorKind::CombinationalLoop, loop_message(comb, done, writer));
  for (auto &p : clocked)
    out.push_back(std::move(p));
  return out;
}

ClockInfo detect_clock(const Design &design) {
  std::vector<const AlwaysBlock *> blocks;
  for (const auto &item : design.items)
    if (const auto *a = std::get_if<AlwaysBlock>(&item))
      if (a->sensitivity.clocked())
        blocks.push_back(a);
  if (blocks.empty())
    throw Error(ErrorKind::NoClockFound, "design has no clocked always block");

  std::optional<Edge> clock;
  std::optional<std::string> reset;
  std::optional<bool> reset_high;
  auto agree_reset = [&](const std::string &sig, bool high) {
    if (reset && (*reset != sig || *reset_high != high))
      throw Error(ErrorKind::NoClockFound, "conflicting reset signals '" +
                                               *reset + "' and '" + sig + "'");
    reset = sig;
    reset_high = high;
  };

  for (const AlwaysBlock *blk : blocks) {
    const auto &edges = blk->sensitivity.edges;
    std::optional<Edge> blk_clock;
    if (edges.size() == 1) {
      blk_clock = edges[0];
    } else if (edges.size() == 2) {
      const Stmt *rb = reset_branch(*blk);
      for (int k = 0; k < 2 && rb; ++k) {
        bool neg = false;
        if (tests_signal(*rb->cond, edges[k].signal, neg) &&
            assigns_only_constants(rb->then_body, design)) {
          agree_reset(edges[k].signal, !neg);
          blk_clock = edges[1 - k];
          break;
        }
      }
      if (!blk_clock)
        throw Error(ErrorKind::NoClockFound,
                    "cannot tell the clock from the reset in an always block "
                    "sensitive to two edges",
                    blk->span);
    } else {
      throw Error(ErrorKind::NoClockFound,
                  "always blocks with more than two edge signals are not "
                  "supported",
                  blk->span);
    }
    if (clock && (clock->signal != blk_clock->signal ||
                  clock->posedge != blk_clock->posedge))
      throw Error(ErrorKind::NoClockFound,
                  "multiple clocks: '" + clock->signal + "' and '" +
                      blk_clock->signal + "'",
                  blk->span);
    clock = blk_clock;
  }

  if (!reset) {
    // Synchronous reset: a 1-bit input gating constant-only assignments.
    for (const AlwaysBlock *blk : blocks) {
      const Stmt *rb = reset_branch(*blk);
      if (!rb || !assigns_only_constants(rb->then_body, design))
        continue;
      for (const auto &port : design.ports) {
        bool neg = false;
        if (port.direction == Direction::Input && !port.range &&
            port.name != clock->signal &&
            tests_signal(*rb->cond, port.name, neg)) {
          agree_reset(port.name, !neg);
          break;
        }
      }
    }
  }

  ClockInfo info;
  info.clock = clock->signal;
  info.clock_posedge = clock->posedge;
  info.reset = reset;
  info.reset_active_high = reset_high.value_or(true);
  return info;
}

// ---------------------------------------------------------------------------
// Compiled model

namespace {

struct CNode {
  enum class Op : std::uint8_t { Const, Sig, DynBit, Slice, Un, Bin, Tern };
  Op op = Op::Const;
  UnaryOp uop = UnaryOp::BitNot;
  BinaryOp bop = BinaryOp::Add;
  unsigned width = 1;
  int a = -1, b = -1, c = -1;
  int sig = -1;
  int shift = 0; // Slice: bit offset; DynBit: signal lsb
  std::uint64_t imm = 0;
};

struct CExpr {
  std::vector<CNode> nodes; // postorder; result is the last node
  unsigned width() const { return nodes.back().width; }
};

struct CStmt;
using CBody = std::vector<CStmt>;

struct CArm {
  std::vector<CExpr> labels;
  CBody body;
};

struct CStmt {
  StmtKind kind = StmtKind::Blocking;
  int target = -1;
  CExpr value; // assign value, if condition, or case subject
  CBody then_body, else_body;
  std::vector<CArm> arms;
};

struct CProc {
  Process::Kind kind = Process::Kind::Assign;
  int target = -1;
  CExpr value;
  CBody body;
  std::vector<int> writes;
};

} // namespace

class CompiledDesign {
public:
  explicit CompiledDesign(const Design &d) : table_(SignalTable::build(d)) {
    for (const auto &n : table_.order()) {
      const SignalInfo &s = table_.at(n);
      if (s.kind == SignalKind::Parameter)
        continue;
      slot_of_[n] = static_cast<int>(names_.size());
      names_.push_back(n);
      widths_.push_back(s.width);
    }

    for (const auto &p : schedule_processes(d)) {
      CProc cp;
      cp.kind = p.kind;
      for (const auto &w : p.writes)
        cp.writes.push_back(slot_of_.at(w));
      if (p.kind == Process::Kind::Assign) {
        const auto &a = std::get<ContinuousAssign>(d.items[p.item_index]);
        cp.target = slot_of_.at(a.target);
        cp.value = compile(*a.value);
      } else {
        cp.body = compile(std::get<AlwaysBlock>(d.items[p.item_index]).body);
      }
      max_nodes_ = std::max(max_nodes_, max_nodes(cp));
      (p.kind == Process::Kind::Clocked ? clocked_ : comb_)
          .push_back(std::move(cp));
    }

    std::set<int> regs;
    for (const auto &cp : clocked_)
      regs.insert(cp.writes.begin(), cp.writes.end());
    registers_.assign(regs.begin(), regs.end());

    if (!clocked_.empty())
      clock_ = detect_clock(d);
    for (const auto &n : table_.inputs()) {
      if (clock_.clock == n || (clock_.reset && *clock_.reset == n))
        continue;
      data_inputs_.push_back(slot_of_.at(n));
    }
    for (const auto &n : table_.outputs())
      outputs_.push_back(slot_of_.at(n));
  }

  SignalTable table_;
  std::map<std::string, int> slot_of_;
  std::vector<std::string> names_;
  std::vector<unsigned> widths_;
  std::vector<CProc> comb_;
  std::vector<CProc> clocked_;
  std::vector<int> registers_;
  std::vector<int> data_inputs_;
  std::vector<int> outputs_;
  ClockInfo clock_;
  std::size_t max_nodes_ = 1;

  // --- compilation --------------------------------------------------------

  int emit(CExpr &out, CNode n) {
    out.nodes.push_back(n);
    return static_cast<int>(out.nodes.size()) - 1;
  }

  int compile_into(const Expr &e, CExpr &out) {
    CNode n;
    switch (e.kind) {
    case ExprKind::Const:
      n.op = CNode::Op::Const;
      n.imm = e.value;
      n.width = e.width;
      return emit(out, n);
    case ExprKind::Ref: {
      const SignalInfo &s = table_.at(e.name);
      if (s.kind == SignalKind::Parameter) {
        n.op = CNode::Op::Const;
        n.imm = s.param_value;
        n.width = s.width;
        return emit(out, n);
      }
      n.op = CNode::Op::Sig;
      n.sig = slot_of_.at(e.name);
      n.width = s.width;
      return emit(out, n);
    }
    case ExprKind::Index: {
      const SignalInfo &s = table_.at(e.name);
      n.width = 1;
      if (is_const(*e.operands[0]) || s.kind == SignalKind::Parameter) {
        std::int64_t pos = is_const(*e.operands[0])
                               ? static_cast<std::int64_t>(e.operands[0]->value)
                               : 0;
        if (s.kind == SignalKind::Parameter) {
          std::uint64_t bit = table_.const_value(*e.operands[0]);
          n.op = CNode::Op::Const;
          n.imm = bit < 64 ? (s.param_value >> bit) & 1 : 0;
          return emit(out, n);
        }
        pos -= s.lsb;
        if (pos < 0 || pos >= static_cast<std::int64_t>(s.width)) {
          n.op = CNode::Op::Const;
          return emit(out, n);
        }
        n.op = CNode::Op::Slice;
        n.sig = slot_of_.at(e.name);
        n.shift = static_cast<int>(pos);
        return emit(out, n);
      }
      n.a = compile_into(*e.operands[0], out);
      n.op = CNode::Op::DynBit;
      n.sig = slot_of_.at(e.name);
      n.shift = s.lsb;
      return emit(out, n);
    }
    case ExprKind::Slice: {
      const SignalInfo &s = table_.at(e.name);
      auto msb = table_.const_value(*e.operands[0]);
      auto lsb = table_.const_value(*e.operands[1]);
      n.width = static_cast<unsigned>(msb - lsb + 1);
      if (s.kind == SignalKind::Parameter) {
        n.op = CNode::Op::Const;
        n.imm = lsb < 64 ? (s.param_value >> lsb) & width_mask(n.width) : 0;
        return emit(out, n);
      }
      n.op = CNode::Op::Slice;
      n.sig = slot_of_.at(e.name);
      n.shift = static_cast<int>(lsb) - s.lsb;
      return emit(out, n);
    }
    case ExprKind::Unary:
      n.a = compile_into(*e.operands[0], out);
      n.op = CNode::Op::Un;
      n.uop = e.unary_op;
      n.width = unary_width(e.unary_op, out.nodes[n.a].width);
      return emit(out, n);
    case ExprKind::Binary:
      n.a = compile_into(*e.operands[0], out);
      n.b = compile_into(*e.operands[1], out);
      n.op = CNode::Op::Bin;
      n.bop = e.binary_op;
      n.width = binary_width(e.binary_op, out.nodes[n.a].width,
                             out.nodes[n.b].width);
      return emit(out, n);
    case ExprKind::Ternary:
      n.a = compile_into(*e.operands[0], out);
      n.b = compile_into(*e.operands[1], out);
      n.c = compile_into(*e.operands[2], out);
      n.op = CNode::Op::Tern;
      n.width = std::max(out.nodes[n.b].width, out.nodes[n.c].width);
      return emit(out, n);
    }
    return emit(out, n);
  }

  CExpr compile(const Expr &e) {
    CExpr out;
    compile_into(e, out);
    return out;
  }

  CBody compile(const StmtList &body) {
    CBody out;
    for (const auto &sp : body) {
      const Stmt &s = *sp;
      CStmt c;
      c.kind = s.kind;
      switch (s.kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking:
        c.target = slot_of_.at(s.target);
        c.value = compile(*s.value);
        break;
      case StmtKind::If:
        c.value = compile(*s.cond);
        c.then_body = compile(s.then_body);
        c.else_body = compile(s.else_body);
        break;
      case StmtKind::Case:
        c.value = compile(*s.subject);
        for (const auto &arm : s.arms) {
          CArm ca;
          for (const auto &l : arm.labels)
            ca.labels.push_back(compile(*l));
          ca.body = compile(arm.body);
          c.arms.push_back(std::move(ca));
        }
        break;
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  static std::size_t max_nodes(const CBody &body) {
    std::size_t m = 0;
    for (const auto &s : body) {
      m = std::max(m, s.value.nodes.size());
      m = std::max({m, max_nodes(s.then_body), max_nodes(s.else_body)});
      for (const auto &arm : s.arms) {
        for (const auto &l : arm.labels)
          m = std::max(m, l.nodes.size());
        m = std::max(m, max_nodes(arm.body));
      }
    }
    return m;
  }
  static std::size_t max_nodes(const CProc &p) {
    return std::max(p.value.nodes.size(), max_nodes(p.body));
  }

  // --- execution ----------------------------------------------------------

  static std::uint64_t eval(const CExpr &x, SimState &s) {
    auto &t = s.scratch;
    const auto &v = s.values;
    for (std::size_t i = 0; i < x.nodes.size(); ++i) {
      const CNode &n = x.nodes[i];
      switch (n.op) {
      case CNode::Op::Const:
        t[i] = n.imm;
        break;
      case CNode::Op::Sig:
        t[i] = v[n.sig];
        break;
      case CNode::Op::Slice:
        t[i] = n.shift >= 64 ? 0 : (v[n.sig] >> n.shift) & width_mask(n.width);
        break;
      case CNode::Op::DynBit: {
        std::int64_t pos = static_cast<std::int64_t>(t[n.a]) - n.shift;
        t[i] = (pos < 0 || pos >= 64) ? 0 : (v[n.sig] >> pos) & 1;
        break;
      }
      case CNode::Op::Un:
        t[i] = apply_unary(n.uop, {t[n.a], x.nodes[n.a].width}).bits;
        break;
      case CNode::Op::Bin: {
        bool dbz = false;
        t[i] = apply_binary(n.bop, {t[n.a], x.nodes[n.a].width},
                            {t[n.b], x.nodes[n.b].width}, &dbz)
                   .bits;
        if (dbz)
          s.div_by_zero = true;
        break;
      }
      case CNode::Op::Tern:
        t[i] = (t[n.a] != 0 ? t[n.b] : t[n.c]) & width_mask(n.width);
        break;
      }
    }
    return t[x.nodes.size() - 1];
  }

  void exec(const CBody &body, SimState &s,
            std::vector<std::pair<int, std::uint64_t>> *deferred) const {
    for (const auto &c : body) {
      switch (c.kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking: {
        std::uint64_t v = eval(c.value, s) & width_mask(widths_[c.target]);
        if (c.kind == StmtKind::Nonblocking && deferred)
          deferred->emplace_back(c.target, v);
        else
          s.values[c.target] = v;
        break;
      }
      case StmtKind::If:
        if (eval(c.value, s) != 0)
          exec(c.then_body, s, deferred);
        else
          exec(c.else_body, s, deferred);
        break;
      case StmtKind::Case: {
        std::uint64_t subject = eval(c.value, s);
        const CArm *chosen = nullptr;
        const CArm *fallback = nullptr;
        for (const auto &arm : c.arms) {
          if (arm.labels.empty()) {
            fallback = &arm;
            continue;
          }
          for (const auto &l : arm.labels)
            if (eval(l, s) == subject) {
              chosen = &arm;
              break;
            }
          if (chosen)
            break;
        }
        if (!chosen)
          chosen = fallback;
        if (chosen)
          exec(chosen->body, s, deferred);
        break;
      }
      }
    }
  }

  void settle(SimState &s) const {
    for (const auto &p : comb_) {
      if (p.kind == Process::Kind::Assign) {
        s.values[p.target] = eval(p.value, s) & width_mask(widths_[p.target]);
      } else {
        for (int w : p.writes)
          s.values[w] = 0;
        exec(p.body, s, nullptr);
      }
    }
  }

  void clock_edge(SimState &s) const {
    std::vector<std::pair<int, std::uint64_t>> deferred;
    for (const auto &p : clocked_)
      exec(p.body, s, &deferred);
    for (const auto &[slot, v] : deferred)
      s.values[slot] = v;
    settle(s);
  }
};

Model::Model(const Design &design)
    : impl_(std::make_unique<CompiledDesign>(design)) {}
Model::~Model() = default;
Model::Model(Model &&) noexcept = default;
Model &Model::operator=(Model &&) noexcept = default;

bool Model::sequential() const { return !impl_->clocked_.empty(); }
const ClockInfo &Model::clock() const { return impl_->clock_; }

int Model::slot(const std::string &name) const {
  auto it = impl_->slot_of_.find(name);
  return it == impl_->slot_of_.end() ? -1 : it->second;
}
unsigned Model::width(int slot) const { return impl_->widths_.at(slot); }
const std::string &Model::name(int slot) const {
  return impl_->names_.at(slot);
}
const std::vector<int> &Model::data_inputs() const {
  return impl_->data_inputs_;
}
const std::vector<int> &Model::outputs() const { return impl_->outputs_; }
const std::vector<int> &Model::registers() const { return impl_->registers_; }

SimState Model::initial_state() const {
  SimState s;
  s.values.assign(impl_->names_.size(), 0);
  s.scratch.assign(impl_->max_nodes_, 0);
  return s;
}

void Model::settle(SimState &s) const { impl_->settle(s); }
void Model::clock_edge(SimState &s) const { impl_->clock_edge(s); }

void Model::apply_reset(SimState &s, unsigned cycles) const {
  const ClockInfo &ck = impl_->clock_;
  if (!ck.reset) {
    settle(s);
    return;
  }
  int rst = slot(*ck.reset);
  for (int in : impl_->data_inputs_)
    s.values[in] = 0;
  s.values[rst] = ck.reset_active_high ? 1 : 0;
  settle(s);
  for (unsigned i = 0; i < cycles; ++i)
    clock_edge(s);
  s.values[rst] = ck.reset_active_high ? 0 : 1;
  settle(s);
}

void Model::set_inputs(SimState &s, const Assignment &inputs) const {
  for (int in : impl_->data_inputs_) {
    auto it = inputs.find(impl_->names_[in]);
    if (it == inputs.end())
      throw Error(ErrorKind::MissingInput,
                  "no value for input '" + impl_->names_[in] + "'");
    s.values[in] = it->second.bits & width_mask(impl_->widths_[in]);
  }
}

Assignment Model::read(const SimState &s, const std::vector<int> &slots) const {
  Assignment out;
  for (int k : slots)
    out[impl_->names_[k]] = BitVal{s.values[k], impl_->widths_[k]};
  return out;
}

// ---------------------------------------------------------------------------

Assignment eval_comb(const Design &design, const Assignment &inputs,
                     std::vector<std::string> *warnings) {
  Model m(design);
  if (m.sequential())
    throw Error(ErrorKind::Validate,
                "eval_comb needs a design without clocked always blocks");
  SimState s = m.initial_state();
  m.set_inputs(s, inputs);
  m.settle(s);
  if (s.div_by_zero && warnings)
    warnings->push_back("division or modulo by zero evaluated as 0");
  return m.read(s, m.outputs());
}

Trace simulate(const Design &design, const std::vector<Assignment> &stimulus,
               unsigned reset_cycles) {
  Model m(design);
  if (!m.sequential())
    throw Error(ErrorKind::NoClockFound, "design has no clocked always block");
  Trace trace;
  trace.reset_cycles = reset_cycles;
  SimState s = m.initial_state();
  m.apply_reset(s, reset_cycles);
  for (std::size_t i = 0; i < stimulus.size(); ++i) {
    m.set_inputs(s, stimulus[i]);
    m.settle(s);
    m.clock_edge(s);
    trace.steps.push_back(
        TraceStep{m.read(s, m.data_inputs()), m.read(s, m.outputs())});
    trace.state_snapshots.push_back(m.read(s, m.registers()));
  }
  if (s.div_by_zero)
    trace.warnings.push_back("division or modulo by zero evaluated as 0");
  return trace;
}

std::string Trace::to_jsonl() const {
  auto obj = [](const Assignment &a) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto &[k, v] : a)
      j[k] = v.bits;
    return j;
  };
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    nlohmann::ordered_json j;
    j["step"] = i;
    j["inputs"] = obj(steps[i].inputs);
    j["outputs"] = obj(steps[i].outputs);
    out += j.dump() + "\n";
  }
  return out;
}

} // namespace symrtlo
