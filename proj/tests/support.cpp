// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "symrtlo/frontend.hpp"

namespace symrtlo::testing {

std::string fixture_path(const std::string &name) {
  return std::string(SYMRTLO_FIXTURES) + "/" + name;
}

std::string read_text(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Design load_fixture(const std::string &name) {
  return parse_file(fixture_path(name));
}

std::vector<std::string> all_fixtures() {
  std::vector<std::string> out;
  for (const auto &entry :
       std::filesystem::directory_iterator(SYMRTLO_FIXTURES))
    if (entry.path().extension() == ".v")
      out.push_back(entry.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string squash(const std::string &text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      out += c;
  return out;
}

Design with_parameter(const Design &design, const std::string &name,
                      std::uint64_t value) {
  Design out = design;
  for (auto &p : out.parameters)
    if (p.name == name)
      p.value = make_unsized(value);
  return out;
}

} // namespace symrtlo::testing

namespace symrtlo::testing {

ExprPtr random_expr(std::mt19937_64 &rng, const std::vector<Var> &vars,
                    int depth) {
  auto pick = [&](std::uint64_t n) { return rng() % n; };
  if (depth <= 0 || pick(4) == 0) {
    if (pick(3) == 0) {
      if (pick(2) == 0)
        return make_unsized(pick(6));
      unsigned w = 1 + static_cast<unsigned>(pick(8));
      return make_const(rng(), w, true, pick(2) ? 'b' : 'd');
    }
    const Var &v = vars[pick(vars.size())];
    if (v.width > 1 && pick(5) == 0) {
      unsigned lsb = static_cast<unsigned>(pick(v.width));
      unsigned msb = lsb + static_cast<unsigned>(pick(v.width - lsb));
      if (pick(2))
        return make_index(v.name, make_unsized(lsb));
      return make_slice(v.name, make_unsized(msb), make_unsized(lsb));
    }
    return make_ref(v.name);
  }
  switch (pick(10)) {
  case 0: {
    static const UnaryOp ops[] = {UnaryOp::BitNot,    UnaryOp::LogicalNot,
                                  UnaryOp::Negate,    UnaryOp::ReduceAnd,
                                  UnaryOp::ReduceOr,  UnaryOp::ReduceXor};
    return make_unary(ops[pick(6)], random_expr(rng, vars, depth - 1));
  }
  case 1:
    return make_ternary(random_expr(rng, vars, depth - 1),
                        random_expr(rng, vars, depth - 1),
                        random_expr(rng, vars, depth - 1));
  default: {
    auto op = static_cast<BinaryOp>(pick(18));
    ExprPtr rhs = random_expr(rng, vars, depth - 1);
    if ((op == BinaryOp::Shl || op == BinaryOp::Shr) && pick(2))
      rhs = make_unsized(pick(5));
    return make_binary(op, random_expr(rng, vars, depth - 1), rhs);
  }
  }
}

Design comb_design(const std::string &name, const std::vector<Var> &inputs,
                   unsigned out_width, const ExprPtr &value) {
  Design d;
  d.name = name;
  auto range = [](unsigned w) -> std::optional<Range> {
    if (w == 1)
      return std::nullopt;
    return Range{make_unsized(w - 1), make_unsized(0)};
  };
  for (const auto &v : inputs) {
    Port p;
    p.name = v.name;
    p.direction = Direction::Input;
    p.range = range(v.width);
    d.ports.push_back(p);
  }
  Port y;
  y.name = "y";
  y.direction = Direction::Output;
  y.range = range(out_width);
  d.ports.push_back(y);
  d.items.push_back(ContinuousAssign{"y", value, {}});
  return d;
}

} // namespace symrtlo::testing

namespace symrtlo::testing {

namespace {

// Rewrites the first expression (pre-order, item order) for which `expr_fn`
// returns a replacement, or the first statement `stmt_fn` replaces.
struct FirstMutation {
  std::function<ExprPtr(const ExprPtr &)> expr_fn;
  std::function<StmtPtr(const StmtPtr &)> stmt_fn;
  bool done = false;

  ExprPtr expr(const ExprPtr &e) {
    if (done || !expr_fn)
      return e;
    if (ExprPtr r = expr_fn(e)) {
      done = true;
      return r;
    }
    std::vector<ExprPtr> ops;
    bool changed = false;
    for (const auto &o : e->operands) {
      ops.push_back(expr(o));
      changed |= ops.back() != o;
    }
    return changed ? with_operands(*e, std::move(ops)) : e;
  }

  StmtList stmts(const StmtList &body) {
    StmtList out;
    for (const auto &s : body)
      out.push_back(stmt(s));
    return out;
  }

  StmtPtr stmt(const StmtPtr &s) {
    if (done)
      return s;
    if (stmt_fn)
      if (StmtPtr r = stmt_fn(s)) {
        done = true;
        return r;
      }
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      return make_assign(s->kind, s->target, expr(s->value), s->span);
    case StmtKind::If: {
      ExprPtr c = expr(s->cond);
      StmtList t = stmts(s->then_body);
      return make_if(c, t,
                     s->has_else ? std::optional<StmtList>(stmts(s->else_body))
                                 : std::nullopt,
                     s->span);
    }
    case StmtKind::Case: {
      ExprPtr subj = expr(s->subject);
      std::vector<CaseArm> arms;
      for (const auto &a : s->arms) {
        CaseArm n;
        for (const auto &l : a.labels)
          n.labels.push_back(expr(l));
        n.body = stmts(a.body);
        arms.push_back(std::move(n));
      }
      return make_case(subj, std::move(arms), s->span);
    }
    }
    return s;
  }

  // Only items that drive an output port or a register are touched, so a
  // mutation is observable rather than landing in dead logic.
  Design design(const Design &d) {
    Design out = d;
    auto is_output = [&](const std::string &n) {
      const Port *p = d.find_port(n);
      return p && p->direction == Direction::Output;
    };
    for (auto &item : out.items) {
      if (auto *ca = std::get_if<ContinuousAssign>(&item)) {
        if (!is_output(ca->target))
          continue;
        if (stmt_fn && !done) {
          // Continuous assigns go through stmt_fn as blocking assigns.
          StmtPtr as = make_assign(StmtKind::Blocking, ca->target, ca->value);
          if (StmtPtr r = stmt_fn(as)) {
            done = true;
            ca->value = r->value;
            continue;
          }
        }
        ca->value = expr(ca->value);
      } else {
        auto &blk = std::get<AlwaysBlock>(item);
        std::vector<std::string> targets;
        collect_targets(blk.body, targets);
        if (!blk.sensitivity.clocked() &&
            std::none_of(targets.begin(), targets.end(), is_output))
          continue;
        blk.body = stmts(blk.body);
      }
    }
    return out;
  }
};

RewriteTemplate mutation(const std::string &name,
                         std::function<Design(const Design &)> fn) {
  RewriteTemplate t;
  t.name = name;
  t.target_kind = NodeKind::Module;
  t.goals = {Goal::Area};
  t.category = "fault";
  t.description = "deliberately wrong rewrite";
  t.matcher = [](const Design &d) {
    return std::vector<MatchSite>{{NodeKind::Module, 0, d.span, "module"}};
  };
  t.transform = [fn](const Design &d, const std::vector<MatchSite> &,
                     std::vector<std::string> &) { return fn(d); };
  return t;
}

RewriteTemplate expr_mutation(const std::string &name,
                              std::function<ExprPtr(const ExprPtr &)> fn) {
  return mutation(name, [fn](const Design &d) {
    FirstMutation m;
    m.expr_fn = fn;
    return m.design(d);
  });
}

RewriteTemplate stmt_mutation(const std::string &name,
                              std::function<StmtPtr(const StmtPtr &)> fn) {
  return mutation(name, [fn](const Design &d) {
    FirstMutation m;
    m.stmt_fn = fn;
    return m.design(d);
  });
}

std::function<ExprPtr(const ExprPtr &)> retag(BinaryOp from, BinaryOp to) {
  return [=](const ExprPtr &e) -> ExprPtr {
    if (e->kind == ExprKind::Binary && e->binary_op == from)
      return make_binary(to, e->operands[0], e->operands[1]);
    return nullptr;
  };
}

} // namespace

std::vector<RewriteTemplate> broken_templates() {
  std::vector<RewriteTemplate> t;
  t.push_back(expr_mutation("FaultAddBecomesSub", retag(BinaryOp::Add, BinaryOp::Sub)));
  t.push_back(expr_mutation("FaultMulBecomesAdd", retag(BinaryOp::Mul, BinaryOp::Add)));
  t.push_back(expr_mutation("FaultEqBecomesNe", retag(BinaryOp::Eq, BinaryOp::Ne)));
  t.push_back(expr_mutation("FaultSubOperandsSwapped", [](const ExprPtr &e) -> ExprPtr {
    if (e->kind == ExprKind::Binary && e->binary_op == BinaryOp::Sub)
      return make_binary(BinaryOp::Sub, e->operands[1], e->operands[0]);
    return nullptr;
  }));
  t.push_back(expr_mutation("FaultConstantPlusOne", [](const ExprPtr &e) -> ExprPtr {
    if (e->kind == ExprKind::Const)
      return make_const(e->value + 1, e->width, e->sized, e->base);
    return nullptr;
  }));
  t.push_back(expr_mutation("FaultInvertedRef", [](const ExprPtr &e) -> ExprPtr {
    if (e->kind == ExprKind::Ref)
      return make_unary(UnaryOp::BitNot, e);
    return nullptr;
  }));
  t.push_back(expr_mutation("FaultShiftedRef", [](const ExprPtr &e) -> ExprPtr {
    if (e->kind == ExprKind::Ref)
      return make_binary(BinaryOp::Shl, e, make_unsized(1));
    return nullptr;
  }));
  t.push_back(stmt_mutation("FaultSwappedBranches", [](const StmtPtr &s) -> StmtPtr {
    if (s->kind == StmtKind::If && s->has_else)
      return make_if(s->cond, s->else_body, s->then_body, s->span);
    return nullptr;
  }));
  t.push_back(stmt_mutation("FaultZeroedAssign", [](const StmtPtr &s) -> StmtPtr {
    if ((s->kind == StmtKind::Blocking || s->kind == StmtKind::Nonblocking) &&
        !(s->value->kind == ExprKind::Const && s->value->value == 0))
      return make_assign(s->kind, s->target, make_unsized(0), s->span);
    return nullptr;
  }));
  t.push_back(mutation("FaultDroppedItem", [](const Design &d) {
    Design out = d;
    if (!out.items.empty())
      out.items.pop_back();
    return out;
  }));
  return t;
}

} // namespace symrtlo::testing

namespace symrtlo::testing {

namespace {

// Output traces of `f` from its initial state; nullopt once a transition
// is unspecified.
std::optional<std::vector<std::vector<std::uint64_t>>>
run_machine(const SymbolicFsm &f, const std::vector<std::size_t> &word) {
  std::vector<std::vector<std::uint64_t>> trace;
  std::size_t q = f.initial;
  for (std::size_t s : word) {
    if (!f.next[q][s])
      return std::nullopt;
    q = *f.next[q][s];
    trace.push_back(f.out[q][s]);
  }
  return trace;
}

} // namespace

// Random rewrites that preserve meaning: commuting operands of commutative
// operators and wrapping in double complement.
ExprPtr commute(const ExprPtr &e, std::mt19937_64 &rng) {
  if (e->operands.empty() || e->kind == ExprKind::Index ||
      e->kind == ExprKind::Slice)
    return e;
  std::vector<ExprPtr> ops;
  for (const auto &o : e->operands)
    ops.push_back(commute(o, rng));
  if (e->kind == ExprKind::Binary && is_commutative(e->binary_op) && rng() % 2)
    std::swap(ops[0], ops[1]);
  ExprPtr out = with_operands(*e, ops);
  if (rng() % 8 == 0)
    out = make_unary(UnaryOp::BitNot, make_unary(UnaryOp::BitNot, out));
  return out;
}

// Replaces one leaf with a different constant, usually changing meaning.
ExprPtr perturb(const ExprPtr &e, std::mt19937_64 &rng) {
  if (e->kind == ExprKind::Const || e->kind == ExprKind::Ref)
    return make_const(rng() & 3, 2, true);
  if (e->kind == ExprKind::Index || e->kind == ExprKind::Slice)
    return make_unary(UnaryOp::BitNot, e);
  std::vector<ExprPtr> ops = e->operands;
  std::size_t k = rng() % ops.size();
  ops[k] = perturb(ops[k], rng);
  return with_operands(*e, ops);
}

// Random complete Moore machine with every state reachable from state 0.
SymbolicFsm random_machine(std::mt19937_64 &rng, std::size_t n, unsigned in_bits,
                           unsigned out_values, double undefined) {
  SymbolicFsm f;
  for (std::size_t q = 0; q < n; ++q)
    f.states.push_back("Q" + std::to_string(q));
  if (in_bits)
    f.inputs.push_back({"x", in_bits});
  f.outputs.push_back({"y", 2});
  std::size_t k = f.symbol_count();
  f.next.assign(n, std::vector<std::optional<std::size_t>>(k));
  f.out.assign(n, std::vector<std::vector<std::uint64_t>>(k));
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t q = 0; q < n; ++q) {
    std::uint64_t o = rng() % out_values;
    for (std::size_t s = 0; s < k; ++s) {
      f.out[q][s] = {o};
      if (u(rng) >= undefined)
        f.next[q][s] = rng() % n;
    }
  }
  // Chain q-1 -> q on symbol 0 keeps everything reachable.
  for (std::size_t q = 1; q < n; ++q)
    f.next[q - 1][0] = q;
  return f;
}

// Smallest congruent partition found by trying every set partition.
std::size_t brute_force_minimum(const SymbolicFsm &f) {
  std::size_t n = f.states.size();
  std::size_t best = n;
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                         std::size_t used) {
    if (used >= best)
      return;
    if (i == n) {
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          if (block[p] != block[q])
            continue;
          if (f.out[p] != f.out[q])
            return;
          for (std::size_t s = 0; s < f.symbol_count(); ++s)
            if (block[*f.next[p][s]] != block[*f.next[q][s]])
              return;
        }
      best = used;
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      block[i] = b;
      go(i + 1, std::max(used, b + 1));
    }
  };
  go(0, 0);
  return best;
}

std::optional<std::vector<std::size_t>>
trace_mismatch(const SymbolicFsm &a, const SymbolicFsm &b, std::size_t depth) {
  std::size_t k = a.symbol_count();
  std::vector<std::size_t> word;
  std::function<bool()> go = [&] {
    auto ta = run_machine(a, word);
    if (!ta)
      return false;
    auto tb = run_machine(b, word);
    if (!tb || *ta != *tb)
      return true;
    if (word.size() == depth)
      return false;
    for (std::size_t s = 0; s < k; ++s) {
      word.push_back(s);
      if (go())
        return true;
      word.pop_back();
    }
    return false;
  };
  if (go())
    return word;
  return std::nullopt;
}

} // namespace symrtlo::testing
