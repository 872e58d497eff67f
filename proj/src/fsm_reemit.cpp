// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "fsm_internal.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"

namespace symrtlo {

namespace {

unsigned bits_for(std::size_t n) {
  return n <= 1 ? 1u : static_cast<unsigned>(std::bit_width(n - 1));
}

std::vector<std::size_t> bfs_order(const SymbolicFsm &f) {
  std::vector<std::size_t> order;
  std::vector<bool> seen(f.states.size(), false);
  std::deque<std::size_t> work{f.initial};
  seen[f.initial] = true;
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop_front();
    order.push_back(q);
    for (const auto &n : f.next[q])
      if (n && !seen[*n]) {
        seen[*n] = true;
        work.push_back(*n);
      }
  }
  for (std::size_t q = 0; q < f.states.size(); ++q)
    if (!seen[q])
      order.push_back(q);
  return order;
}

ExprPtr symbol_test(const SymbolicFsm &f, std::size_t s) {
  auto values = f.symbol_values(s);
  ExprPtr test;
  for (std::size_t i = 0; i < f.inputs.size(); ++i) {
    ExprPtr eq = make_binary(BinaryOp::Eq, make_ref(f.inputs[i].name),
                             make_const(values[i], f.inputs[i].width, true, 'b'));
    test = test ? make_binary(BinaryOp::LogicalAnd, test, eq) : eq;
  }
  return test;
}

// Dispatches on the input symbol: a case over the single input, or an
// if/else-if chain over all inputs. `bodies` holds (symbol, statements).
StmtList dispatch(const SymbolicFsm &f,
                  const std::vector<std::pair<std::size_t, StmtList>> &bodies) {
  if (bodies.empty())
    return {};
  if (f.inputs.size() == 1) {
    std::vector<CaseArm> arms;
    for (const auto &[s, body] : bodies)
      arms.push_back({{make_const(f.symbol_values(s)[0], f.inputs[0].width, true, 'b')},
                      body});
    return {make_case(make_ref(f.inputs[0].name), std::move(arms))};
  }
  StmtPtr chain;
  for (auto it = bodies.rbegin(); it != bodies.rend(); ++it)
    chain = make_if(symbol_test(f, it->first), it->second,
                    chain ? std::optional<StmtList>(StmtList{chain}) : std::nullopt);
  return {chain};
}

StmtList output_assigns(const SymbolicFsm &f, const std::vector<std::uint64_t> &o,
                        bool skip_zero) {
  StmtList out;
  for (std::size_t i = 0; i < f.outputs.size(); ++i)
    if (!skip_zero || o[i] != 0)
      out.push_back(make_assign(StmtKind::Blocking, f.outputs[i].name,
                                make_const(o[i], f.outputs[i].width, true, 'b')));
  return out;
}

StmtList rewrite_reset(const StmtList &body, const std::string &state,
                       const std::string &next, const ExprPtr &initial) {
  StmtList out;
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking: {
      bool loads_next = s->value->kind == ExprKind::Ref && s->value->name == next;
      if (s->target == state && !loads_next)
        out.push_back(make_assign(s->kind, s->target, initial, s->span));
      else
        out.push_back(s);
      break;
    }
    case StmtKind::If:
      out.push_back(make_if(s->cond, rewrite_reset(s->then_body, state, next, initial),
                            s->has_else ? std::optional<StmtList>(rewrite_reset(
                                              s->else_body, state, next, initial))
                                        : std::nullopt,
                            s->span));
      break;
    case StmtKind::Case: {
      std::vector<CaseArm> arms = s->arms;
      for (auto &a : arms)
        a.body = rewrite_reset(a.body, state, next, initial);
      out.push_back(make_case(s->subject, std::move(arms), s->span));
      break;
    }
    }
  }
  return out;
}

void drop_decl_name(Design &d, const std::string &name) {
  for (auto &decl : d.decls)
    std::erase(decl.names, name);
}

} // namespace

ReemitResult reemit(const Design &design, const SymbolicFsm &m,
                    const StateMapping &mapping) {
  FsmBinding b = locate_fsm(design);
  m.check();
  for (const auto &p : b.state_params)
    if (!mapping.to_class.count(p) && !mapping.to_class.empty())
      throw Error(ErrorKind::Domain, "mapping does not cover state " + p);
  SignalTable table = SignalTable::build(design);
  ReemitResult r;

  // Class names that clash with surviving identifiers get an `_m` suffix.
  std::set<std::string> old_states(b.state_params.begin(), b.state_params.end());
  std::set<std::string> taken;
  for (const auto &n : table.order())
    if (!old_states.count(n))
      taken.insert(n);
  std::vector<std::string> names;
  for (const auto &s : m.states) {
    std::string n = s;
    while (taken.count(n))
      n += "_m";
    if (n != s)
      r.notes.push_back("EmitConflict: state " + s + " renamed to " + n);
    taken.insert(n);
    names.push_back(n);
  }

  std::vector<std::size_t> order = bfs_order(m);
  std::vector<std::uint64_t> code(m.states.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    code[order[i]] = i;
  unsigned width = bits_for(m.states.size());
  const Port *state_port = design.find_port(b.state);
  if (state_port) {
    unsigned w = table.at(b.state).width;
    if (w < width)
      throw Error(ErrorKind::EmitConflict,
                  "state port " + b.state + " is too narrow for the new encoding");
    width = w;
  }
  unsigned old_width = table.at(b.state).width;
  if (old_width != width)
    r.notes.push_back("state register " + b.state + " resized from " +
                      std::to_string(old_width) + " to " + std::to_string(width) +
                      " bits");

  Design out = design;

  // Parameters.
  std::vector<Parameter> params;
  bool placed = false;
  for (const auto &p : design.parameters) {
    if (!old_states.count(p.name)) {
      params.push_back(p);
      continue;
    }
    if (placed)
      continue;
    placed = true;
    for (std::size_t q : order) {
      Parameter np;
      np.name = names[q];
      np.value = make_const(code[q], width, true, 'b');
      np.in_header = p.in_header;
      np.local = p.local;
      params.push_back(std::move(np));
    }
  }
  out.parameters = std::move(params);

  // State and next-state declarations.
  std::optional<std::size_t> decl_at;
  for (std::size_t i = 0; i < design.decls.size() && !decl_at; ++i) {
    const auto &names_i = design.decls[i].names;
    if (std::find(names_i.begin(), names_i.end(), b.state) != names_i.end() ||
        std::find(names_i.begin(), names_i.end(), b.next) != names_i.end())
      decl_at = i;
  }
  Decl regs;
  regs.kind = NetKind::Reg;
  if (width > 1)
    regs.range = Range{make_unsized(width - 1), make_unsized(0)};
  if (!state_port) {
    drop_decl_name(out, b.state);
    regs.names.push_back(b.state);
  }
  drop_decl_name(out, b.next);
  regs.names.push_back(b.next);
  std::size_t at = decl_at.value_or(out.decls.size());
  out.decls.insert(out.decls.begin() + static_cast<std::ptrdiff_t>(at), regs);
  std::erase_if(out.decls, [](const Decl &d) { return d.names.empty(); });

  // Output ports now driven from an always block must be regs.
  for (auto &p : out.ports)
    for (const auto &o : m.outputs)
      if (p.name == o.name && p.kind != NetKind::Reg) {
        p.kind = NetKind::Reg;
        p.kind_explicit = true;
      }

  // Transition block.
  StmtList trans{make_assign(StmtKind::Blocking, b.next, make_ref(b.state))};
  std::vector<CaseArm> arms;
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    std::vector<std::pair<std::size_t, StmtList>> moves;
    std::set<std::size_t> targets;
    bool total = true;
    for (std::size_t s = 0; s < m.symbol_count(); ++s) {
      const auto &n = m.next[q][s];
      if (!n) {
        total = false;
        continue;
      }
      targets.insert(*n);
      if (*n != q)
        moves.push_back({s, {make_assign(StmtKind::Blocking, b.next,
                                         make_ref(names[*n]))}});
    }
    if (moves.empty())
      continue;
    StmtList body = total && targets.size() == 1 ? moves[0].second
                                                 : dispatch(m, moves);
    arms.push_back({{make_ref(names[q])}, body});
  }
  if (!arms.empty())
    trans.push_back(make_case(make_ref(b.state), std::move(arms)));
  AlwaysBlock trans_block;
  trans_block.sensitivity.kind = Sensitivity::Kind::Star;
  trans_block.body = std::move(trans);
  trans_block.span = std::get<AlwaysBlock>(design.items[b.transition_item]).span;

  // Output block.
  std::optional<AlwaysBlock> out_block;
  if (!m.outputs.empty()) {
    StmtList body = output_assigns(m, std::vector<std::uint64_t>(m.outputs.size(), 0),
                                   false);
    std::vector<CaseArm> oarms;
    for (std::size_t q = 0; q < m.states.size(); ++q) {
      StmtList arm;
      const auto &row = m.out[q];
      bool uniform = std::all_of(row.begin(), row.end(),
                                 [&](const auto &o) { return o == row[0]; });
      if (uniform) {
        arm = output_assigns(m, row[0], true);
      } else {
        std::vector<std::pair<std::size_t, StmtList>> per;
        for (std::size_t s = 0; s < m.symbol_count(); ++s) {
          StmtList a = output_assigns(m, row[s], true);
          if (!a.empty())
            per.push_back({s, std::move(a)});
        }
        arm = dispatch(m, per);
      }
      if (!arm.empty())
        oarms.push_back({{make_ref(names[q])}, std::move(arm)});
    }
    if (!oarms.empty())
      body.push_back(make_case(make_ref(b.state), std::move(oarms)));
    AlwaysBlock blk;
    blk.sensitivity.kind = Sensitivity::Kind::Star;
    blk.body = std::move(body);
    out_block = std::move(blk);
  }

  std::vector<ModuleItem> items;
  std::set<std::size_t> output_items(b.output_items.begin(), b.output_items.end());
  bool output_placed = false;
  for (std::size_t i = 0; i < design.items.size(); ++i) {
    if (i == b.transition_item) {
      items.push_back(trans_block);
    } else if (i == b.update_item) {
      AlwaysBlock upd = std::get<AlwaysBlock>(design.items[i]);
      upd.body = rewrite_reset(upd.body, b.state, b.next,
                               make_ref(names[m.initial]));
      items.push_back(std::move(upd));
    } else if (output_items.count(i)) {
      if (!output_placed && out_block) {
        items.push_back(*out_block);
        output_placed = true;
      }
    } else {
      items.push_back(design.items[i]);
    }
  }
  if (out_block && !output_placed)
    items.push_back(*out_block);
  out.items = std::move(items);

  // Without a reset the register powers up at encoding 0, which the
  // breadth-first order gives to the initial class.
  r.design = std::move(out);
  require_valid(r.design);
  return r;
}

} // namespace symrtlo
