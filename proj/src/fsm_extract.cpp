// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fsm_internal.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/eval.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

// ---------------------------------------------------------------------------
// SymbolicFsm

std::size_t SymbolicFsm::symbol_count() const {
  unsigned bits = 0;
  for (const auto &in : inputs)
    bits += in.width;
  return std::size_t{1} << bits;
}

std::vector<std::uint64_t> SymbolicFsm::symbol_values(std::size_t symbol) const {
  std::vector<std::uint64_t> v(inputs.size());
  for (std::size_t i = inputs.size(); i-- > 0;) {
    v[i] = symbol & width_mask(inputs[i].width);
    symbol >>= inputs[i].width;
  }
  return v;
}

std::string SymbolicFsm::symbol_name(std::size_t symbol) const {
  auto values = symbol_values(symbol);
  std::string out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i)
      out += ",";
    out += inputs[i].name + "=";
    for (unsigned b = inputs[i].width; b-- > 0;)
      out += ((values[i] >> b) & 1) ? '1' : '0';
  }
  return out.empty() ? "-" : out;
}

bool SymbolicFsm::complete() const {
  for (const auto &row : next)
    for (const auto &n : row)
      if (!n)
        return false;
  return true;
}

std::optional<std::size_t> SymbolicFsm::find_state(const std::string &name) const {
  auto it = std::find(states.begin(), states.end(), name);
  if (it == states.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - states.begin());
}

void SymbolicFsm::check() const {
  auto fail = [](const std::string &m) { throw Error(ErrorKind::Domain, m); };
  if (states.empty())
    fail("machine has no states");
  if (initial >= states.size())
    fail("initial state out of range");
  if (std::set<std::string>(states.begin(), states.end()).size() != states.size())
    fail("duplicate state names");
  if (next.size() != states.size() || out.size() != states.size())
    fail("transition table does not cover every state");
  for (std::size_t q = 0; q < states.size(); ++q) {
    if (next[q].size() != symbol_count() || out[q].size() != symbol_count())
      fail("state " + states[q] + " does not cover the alphabet");
    for (const auto &n : next[q])
      if (n && *n >= states.size())
        fail("transition from " + states[q] + " leaves the state set");
    for (const auto &o : out[q])
      if (o.size() != outputs.size())
        fail("output row of " + states[q] + " has the wrong arity");
  }
}

namespace {

std::string output_text(const SymbolicFsm &f, const std::vector<std::uint64_t> &o) {
  if (f.outputs.size() == 1)
    return std::to_string(o[0]);
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i)
    s += (i ? ", " : "") + f.outputs[i].name + "=" + std::to_string(o[i]);
  return s;
}

nlohmann::ordered_json output_json(const SymbolicFsm &f,
                                   const std::vector<std::uint64_t> &o) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < o.size(); ++i)
    j[f.outputs[i].name] = o[i];
  return j;
}

} // namespace

nlohmann::ordered_json SymbolicFsm::to_json() const {
  nlohmann::ordered_json j;
  j["states"] = states;
  j["initial"] = states.at(initial);
  nlohmann::ordered_json tr = nlohmann::ordered_json::object();
  for (std::size_t q = 0; q < states.size(); ++q) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (std::size_t s = 0; s < symbol_count(); ++s) {
      if (!next[q][s])
        continue;
      nlohmann::ordered_json e;
      e["next_state"] = states[*next[q][s]];
      if (mealy)
        e["outputs"] = output_json(*this, out[q][s]);
      auto g = guards.find({q, s});
      if (g != guards.end())
        e["guard"] = g->second;
      row[symbol_name(s)] = std::move(e);
    }
    tr[states[q]] = std::move(row);
  }
  j["transitions"] = std::move(tr);
  if (!mealy) {
    nlohmann::ordered_json outs = nlohmann::ordered_json::object();
    for (std::size_t q = 0; q < states.size(); ++q)
      outs[states[q]] = output_json(*this, out[q][0]);
    j["outputs"] = std::move(outs);
  }
  return j;
}

std::string SymbolicFsm::describe() const {
  std::ostringstream os;
  for (std::size_t q = 0; q < states.size(); ++q) {
    os << "State: " << states[q];
    if (!mealy && !outputs.empty())
      os << ", Output: " << output_text(*this, out[q][0]);
    os << "\n";
    for (std::size_t s = 0; s < symbol_count(); ++s) {
      if (!next[q][s])
        continue;
      os << "  " << symbol_name(s) << " -> " << states[*next[q][s]];
      if (mealy && !outputs.empty())
        os << " / " << output_text(*this, out[q][s]);
      os << "\n";
    }
  }
  return os.str();
}

bool StateMapping::identity() const {
  return std::all_of(to_class.begin(), to_class.end(),
                     [](const auto &kv) { return kv.first == kv.second; });
}

// ---------------------------------------------------------------------------
// Locating the machine

namespace {

[[noreturn]] void not_fsm(const std::string &why) {
  throw Error(ErrorKind::NotAnFsm, why);
}

std::set<std::string> reads_of(const ModuleItem &item) {
  std::vector<std::string> v;
  if (const auto *ca = std::get_if<ContinuousAssign>(&item))
    for_each_ref(*ca->value, [&](const std::string &n) { v.push_back(n); });
  else
    collect_reads(std::get<AlwaysBlock>(item).body, v);
  return {v.begin(), v.end()};
}

std::set<std::string> writes_of(const ModuleItem &item) {
  if (const auto *ca = std::get_if<ContinuousAssign>(&item))
    return {ca->target};
  std::vector<std::string> v;
  collect_targets(std::get<AlwaysBlock>(item).body, v);
  return {v.begin(), v.end()};
}

bool is_clocked(const ModuleItem &item) {
  const auto *blk = std::get_if<AlwaysBlock>(&item);
  return blk && blk->sensitivity.clocked();
}

bool constant_expr(const Expr &e, const SignalTable &table) {
  bool ok = true;
  for_each_ref(e, [&](const std::string &n) {
    const SignalInfo *s = table.find(n);
    ok &= s && s->kind == SignalKind::Parameter;
  });
  return ok;
}

void for_each_assign(const StmtList &body,
                     const std::function<void(const Stmt &)> &fn) {
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      fn(*s);
      break;
    case StmtKind::If:
      for_each_assign(s->then_body, fn);
      for_each_assign(s->else_body, fn);
      break;
    case StmtKind::Case:
      for (const auto &arm : s->arms)
        for_each_assign(arm.body, fn);
      break;
    }
  }
}

// Parameters used as state names: case labels on the state register,
// values given to the state or next-state variable, and operands compared
// with the state register.
class StateNameScan {
public:
  StateNameScan(const SignalTable &t, std::string state, std::string next)
      : table_(t), state_(std::move(state)), next_(std::move(next)) {}

  void stmts(const StmtList &body) {
    for (const auto &s : body) {
      switch (s->kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking:
        if (s->target == state_ || s->target == next_)
          param(*s->value);
        expr(*s->value);
        break;
      case StmtKind::If:
        expr(*s->cond);
        stmts(s->then_body);
        stmts(s->else_body);
        break;
      case StmtKind::Case: {
        bool on_state =
            s->subject->kind == ExprKind::Ref && s->subject->name == state_;
        expr(*s->subject);
        for (const auto &arm : s->arms) {
          for (const auto &l : arm.labels) {
            if (on_state)
              param(*l);
            expr(*l);
          }
          stmts(arm.body);
        }
        break;
      }
      }
    }
  }

  void expr(const Expr &e) {
    if (e.kind == ExprKind::Binary &&
        (e.binary_op == BinaryOp::Eq || e.binary_op == BinaryOp::Ne)) {
      const Expr &l = *e.operands[0];
      const Expr &r = *e.operands[1];
      if (l.kind == ExprKind::Ref && l.name == state_)
        param(r);
      if (r.kind == ExprKind::Ref && r.name == state_)
        param(l);
    }
    for (const auto &op : e.operands)
      expr(*op);
  }

  std::set<std::string> found;

private:
  void param(const Expr &e) {
    if (e.kind != ExprKind::Ref)
      return;
    const SignalInfo *s = table_.find(e.name);
    if (s && s->kind == SignalKind::Parameter)
      found.insert(e.name);
  }

  const SignalTable &table_;
  std::string state_;
  std::string next_;
};

struct Candidate {
  std::string state;
  std::string next;
  std::size_t item;
  std::set<std::uint64_t> reset_values;
};

} // namespace

FsmBinding locate_fsm(const Design &d) {
  require_valid(d);
  if (!d.has_clocked_block())
    not_fsm("no clocked block");
  SignalTable table = SignalTable::build(d);
  ClockInfo clock;
  try {
    clock = detect_clock(d);
  } catch (const Error &e) {
    not_fsm(std::string("no usable clock: ") + e.what());
  }

  std::map<std::string, std::size_t> comb_writer;
  for (std::size_t i = 0; i < d.items.size(); ++i)
    if (std::holds_alternative<AlwaysBlock>(d.items[i]) && !is_clocked(d.items[i]))
      for (const auto &w : writes_of(d.items[i]))
        comb_writer.emplace(w, i);

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (!is_clocked(d.items[i]))
      continue;
    auto w = writes_of(d.items[i]);
    if (w.size() != 1)
      continue;
    Candidate c{*w.begin(), "", i, {}};
    bool ok = true;
    std::set<std::string> nexts;
    for_each_assign(std::get<AlwaysBlock>(d.items[i]).body, [&](const Stmt &s) {
      const Expr &v = *s.value;
      if (v.kind == ExprKind::Ref && comb_writer.count(v.name))
        nexts.insert(v.name);
      else if (constant_expr(v, table))
        c.reset_values.insert(table.const_value(v));
      else
        ok = false;
    });
    if (!ok || nexts.size() != 1)
      continue;
    c.next = *nexts.begin();
    cands.push_back(std::move(c));
  }
  if (cands.empty())
    not_fsm("no register is loaded from a next-state variable");
  if (cands.size() > 1) {
    std::string names;
    for (const auto &c : cands)
      names += (names.empty() ? "" : ", ") + c.state;
    throw Error(ErrorKind::Ambiguous, "several candidate state registers: " + names);
  }
  const Candidate &c = cands[0];

  FsmBinding b;
  b.state = c.state;
  b.next = c.next;
  b.update_item = c.item;
  b.transition_item = comb_writer.at(c.next);
  if (c.reset_values.size() > 1)
    not_fsm("state register " + c.state + " has several reset values");
  if (!c.reset_values.empty())
    b.reset_value = *c.reset_values.begin();

  if (writes_of(d.items[b.transition_item]) != std::set<std::string>{b.next})
    not_fsm("the next-state block drives more than " + b.next);

  std::set<std::string> outputs;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (i == b.update_item || i == b.transition_item)
      continue;
    auto reads = reads_of(d.items[i]);
    if (reads.count(b.next))
      not_fsm(b.next + " is read outside the state update");
    if (!reads.count(b.state))
      continue;
    if (is_clocked(d.items[i]))
      not_fsm("state register " + b.state + " feeds clocked logic");
    for (const auto &w : writes_of(d.items[i])) {
      const SignalInfo &s = table.at(w);
      if (s.kind != SignalKind::Output)
        not_fsm("state register " + b.state + " feeds internal signal " + w);
      outputs.insert(w);
    }
    b.output_items.push_back(i);
  }

  std::set<std::string> in_names;
  auto add_inputs = [&](std::size_t item, bool output_logic) {
    for (const auto &r : reads_of(d.items[item])) {
      if (r == b.state || r == b.next || outputs.count(r))
        continue;
      const SignalInfo &s = table.at(r);
      if (s.kind == SignalKind::Parameter)
        continue;
      if (s.kind != SignalKind::Input)
        not_fsm("machine logic reads internal signal " + r);
      if (r == clock.clock)
        not_fsm("machine logic reads the clock");
      in_names.insert(r);
      if (output_logic)
        b.mealy = true;
    }
  };
  add_inputs(b.transition_item, false);
  for (std::size_t i : b.output_items)
    add_inputs(i, true);
  unsigned bits = 0;
  for (const auto &p : d.ports) {
    if (in_names.count(p.name)) {
      b.inputs.push_back({p.name, table.at(p.name).width});
      bits += table.at(p.name).width;
    }
    if (outputs.count(p.name))
      b.outputs.push_back({p.name, table.at(p.name).width});
  }
  if (bits > kMaxFsmInputBits)
    not_fsm("machine inputs span " + std::to_string(bits) + " bits (limit " +
            std::to_string(kMaxFsmInputBits) + ")");

  StateNameScan scan(table, b.state, b.next);
  scan.stmts(std::get<AlwaysBlock>(d.items[b.transition_item]).body);
  scan.stmts(std::get<AlwaysBlock>(d.items[b.update_item]).body);
  for (std::size_t i : b.output_items) {
    if (const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]))
      scan.expr(*ca->value);
    else
      scan.stmts(std::get<AlwaysBlock>(d.items[i]).body);
  }
  unsigned width = table.at(b.state).width;
  std::set<std::uint64_t> seen;
  for (const auto &p : d.parameters) {
    if (!scan.found.count(p.name))
      continue;
    std::uint64_t v = table.at(p.name).param_value;
    if (v > width_mask(width))
      not_fsm("state " + p.name + " does not fit in " + b.state);
    if (!seen.insert(v).second)
      not_fsm("state encodings collide at " + p.name);
    b.state_params.push_back(p.name);
    b.encodings.push_back(v);
  }
  if (b.state_params.empty())
    not_fsm("no state encoding parameters");
  return b;
}

// ---------------------------------------------------------------------------
// Extraction

namespace {

class Interpreter {
public:
  Interpreter(const SignalTable &t, std::string guarded)
      : table_(t), guarded_(std::move(guarded)) {}

  std::map<std::string, std::uint64_t> env;
  std::set<std::string> assigned;

  void run(const StmtList &body) {
    for (const auto &s : body) {
      switch (s->kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking:
        env[s->target] = eval(*s->value) & width_mask(table_.at(s->target).width);
        assigned.insert(s->target);
        break;
      case StmtKind::If:
        if (eval(*s->cond))
          run(s->then_body);
        else
          run(s->else_body);
        break;
      case StmtKind::Case: {
        std::uint64_t subject = eval(*s->subject);
        const CaseArm *hit = nullptr;
        for (const auto &arm : s->arms) {
          for (const auto &l : arm.labels)
            if (!hit && eval(*l) == subject)
              hit = &arm;
          if (hit)
            break;
        }
        if (!hit)
          for (const auto &arm : s->arms)
            if (arm.is_default()) {
              hit = &arm;
              break;
            }
        if (hit)
          run(hit->body);
        break;
      }
      }
    }
  }

  std::uint64_t eval(const Expr &e) {
    return eval_expr(e, [&](const std::string &n) -> SignalValue {
             const SignalInfo &s = table_.at(n);
             if (s.kind == SignalKind::Parameter)
               return {s.param_value, s.width, s.lsb};
             if (n == guarded_ && !assigned.count(n))
               not_fsm(n + " is read before it is assigned");
             auto it = env.find(n);
             if (it == env.end())
               not_fsm("machine logic reads " + n);
             return {it->second, s.width, s.lsb};
           }).bits;
  }

private:
  const SignalTable &table_;
  std::string guarded_;
};

} // namespace

SymbolicFsm extract_fsm(const Design &design) {
  FsmBinding b = locate_fsm(design);
  SignalTable table = SignalTable::build(design);
  SymbolicFsm f;
  f.states = b.state_params;
  f.inputs = b.inputs;
  f.outputs = b.outputs;
  f.mealy = b.mealy;

  auto state_of = [&](std::uint64_t v) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < b.encodings.size(); ++i)
      if (b.encodings[i] == v)
        return i;
    return std::nullopt;
  };
  std::uint64_t init = b.reset_value.value_or(0);
  auto q0 = state_of(init);
  if (!q0)
    not_fsm("initial value " + std::to_string(init) + " of " + b.state +
            " names no state");
  f.initial = *q0;

  const auto &trans = std::get<AlwaysBlock>(design.items[b.transition_item]).body;
  std::size_t nsym = f.symbol_count();
  f.next.assign(f.states.size(), std::vector<std::optional<std::size_t>>(nsym));
  f.out.assign(f.states.size(), std::vector<std::vector<std::uint64_t>>(nsym));
  for (std::size_t q = 0; q < f.states.size(); ++q) {
    for (std::size_t s = 0; s < nsym; ++s) {
      auto values = f.symbol_values(s);
      Interpreter tr(table, b.next);
      tr.env[b.state] = b.encodings[q];
      for (std::size_t i = 0; i < f.inputs.size(); ++i)
        tr.env[f.inputs[i].name] = values[i];
      tr.run(trans);
      if (tr.assigned.count(b.next)) {
        auto n = state_of(tr.env[b.next]);
        if (!n)
          not_fsm("state " + f.states[q] + " on " + f.symbol_name(s) +
                  " moves to value " + std::to_string(tr.env[b.next]) +
                  ", which names no state");
        f.next[q][s] = *n;
      }

      Interpreter oi(table, "");
      oi.env = tr.env;
      oi.env.erase(b.next);
      for (const auto &o : f.outputs)
        oi.env[o.name] = 0;
      for (std::size_t item : b.output_items) {
        if (const auto *ca = std::get_if<ContinuousAssign>(&design.items[item]))
          oi.env[ca->target] =
              oi.eval(*ca->value) & width_mask(table.at(ca->target).width);
        else
          oi.run(std::get<AlwaysBlock>(design.items[item]).body);
      }
      for (const auto &o : f.outputs)
        f.out[q][s].push_back(oi.env[o.name]);
    }
  }
  f.check();
  return f;
}

} // namespace symrtlo
