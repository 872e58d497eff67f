// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "polynomial.hpp"
#include "slots.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/rewrite.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

namespace {

using Pass = std::function<ExprPass(const Design &)>;

bool is_zero(const Expr &e) { return e.kind == ExprKind::Const && e.value == 0; }
bool is_one(const Expr &e) { return e.kind == ExprKind::Const && e.value == 1; }

std::optional<unsigned> log2_exact(const Expr &e) {
  if (e.kind != ExprKind::Const || e.value == 0 || !std::has_single_bit(e.value))
    return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(e.value));
}

bool is_leaf(const Expr &e) {
  return e.kind == ExprKind::Const || e.kind == ExprKind::Ref;
}

std::set<std::string> refs_of(const Expr &e) {
  std::set<std::string> out;
  for_each_ref(e, [&](const std::string &n) { out.insert(n); });
  return out;
}

std::set<std::string> reads_of(const ModuleItem &item) {
  if (const auto *ca = std::get_if<ContinuousAssign>(&item))
    return refs_of(*ca->value);
  std::vector<std::string> v;
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

SourceSpan item_span(const ModuleItem &item) {
  return std::visit([](const auto &i) { return i.span; }, item);
}

void erase_decl_name(Design &d, const std::string &name) {
  for (auto &decl : d.decls)
    std::erase(decl.names, name);
  std::erase_if(d.decls, [](const Decl &decl) { return decl.names.empty(); });
}

RewriteTemplate make_template(std::string name, NodeKind kind,
                              std::vector<Goal> goals, std::string category,
                              std::string description, Pass pass) {
  RewriteTemplate t;
  t.name = std::move(name);
  t.target_kind = kind;
  t.goals = std::move(goals);
  t.category = std::move(category);
  t.description = std::move(description);
  t.matcher = [pass](const Design &d) { return pass(d).sites; };
  t.transform = [pass](const Design &d, const std::vector<MatchSite> &,
                       std::vector<std::string> &) { return pass(d).design; };
  return t;
}

// ---------------------------------------------------------------------------
// Expression rules

ExprPass constant_folding(const Design &d) {
  return rewrite_exprs(d, [](const ExprPtr &e, const Slot &,
                             const SignalTable &) -> std::optional<Replacement> {
    if (e->kind != ExprKind::Unary && e->kind != ExprKind::Binary &&
        e->kind != ExprKind::Ternary)
      return std::nullopt;
    for (const auto &op : e->operands)
      if (op->kind != ExprKind::Const)
        return std::nullopt;
    ExprPtr f = fold_const(e);
    if (f->kind != ExprKind::Const)
      return std::nullopt;
    return Replacement{f};
  });
}

ExprPass algebraic_simplification(const Design &d) {
  return rewrite_exprs(d, [](const ExprPtr &e, const Slot &,
                             const SignalTable &t) -> std::optional<Replacement> {
    if (e->kind != ExprKind::Binary)
      return std::nullopt;
    const ExprPtr &l = e->operands[0];
    const ExprPtr &r = e->operands[1];
    auto zero_like = [&](const ExprPtr &z) {
      unsigned w = t.width_of(*e);
      return t.width_of(*z) == w ? z : make_const(0, w, true);
    };
    switch (e->binary_op) {
    case BinaryOp::Add:
    case BinaryOp::BitOr:
    case BinaryOp::BitXor:
      if (is_zero(*r))
        return Replacement{l};
      if (is_zero(*l))
        return Replacement{r};
      break;
    case BinaryOp::Sub:
      if (is_zero(*r))
        return Replacement{l};
      break;
    case BinaryOp::Mul:
      if (is_one(*r))
        return Replacement{l};
      if (is_one(*l))
        return Replacement{r};
      [[fallthrough]];
    case BinaryOp::BitAnd:
      if (is_zero(*r))
        return Replacement{zero_like(r)};
      if (is_zero(*l))
        return Replacement{zero_like(l)};
      break;
    default:
      break;
    }
    return std::nullopt;
  });
}

ExprPass strength_reduction(const Design &d) {
  return rewrite_exprs(d, [](const ExprPtr &e, const Slot &,
                             const SignalTable &t) -> std::optional<Replacement> {
    if (e->kind != ExprKind::Binary)
      return std::nullopt;
    const ExprPtr &l = e->operands[0];
    const ExprPtr &r = e->operands[1];
    if (e->binary_op == BinaryOp::Mul) {
      // x << k keeps the width of x, so only the low bits of x * 2^k survive.
      auto shift = [&](const ExprPtr &x, unsigned k) {
        return Replacement{make_binary(BinaryOp::Shl, x, make_unsized(k)),
                           t.width_of(*x)};
      };
      if (auto k = log2_exact(*r); k && *k >= 1 && !is_const(*l))
        return shift(l, *k);
      if (auto k = log2_exact(*l); k && *k >= 1 && !is_const(*r))
        return shift(r, *k);
    } else if (e->binary_op == BinaryOp::Div) {
      if (auto k = log2_exact(*r); k && *k >= 1)
        return Replacement{make_binary(BinaryOp::Shr, l, make_unsized(*k))};
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// Temporary variables

struct UseCount {
  std::map<std::string, int> uses;
  std::set<std::string> structural; // used as an Index / Slice base
  std::map<std::string, std::size_t> user; // item holding the last use
};

void count_expr(const Expr &e, std::size_t item, UseCount &u) {
  if (e.kind == ExprKind::Ref || e.kind == ExprKind::Index ||
      e.kind == ExprKind::Slice) {
    ++u.uses[e.name];
    u.user[e.name] = item;
    if (e.kind != ExprKind::Ref)
      u.structural.insert(e.name);
  }
  for (const auto &op : e.operands)
    count_expr(*op, item, u);
}

void count_stmts(const StmtList &body, std::size_t item, UseCount &u) {
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      count_expr(*s->value, item, u);
      break;
    case StmtKind::If:
      count_expr(*s->cond, item, u);
      count_stmts(s->then_body, item, u);
      count_stmts(s->else_body, item, u);
      break;
    case StmtKind::Case:
      count_expr(*s->subject, item, u);
      for (const auto &arm : s->arms) {
        for (const auto &l : arm.labels)
          count_expr(*l, item, u);
        count_stmts(arm.body, item, u);
      }
      break;
    }
  }
}

UseCount count_uses(const Design &d) {
  UseCount u;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]))
      count_expr(*ca->value, i, u);
    else
      count_stmts(std::get<AlwaysBlock>(d.items[i]).body, i, u);
  }
  return u;
}

ExprPass temporary_elimination(const Design &input) {
  ExprPass out{input, {}};
  std::set<std::string> skipped;
  for (;;) {
    Design &d = out.design;
    SignalTable table = SignalTable::build(d);
    UseCount uses = count_uses(d);
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < d.items.size() && !pick; ++i) {
      const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]);
      if (!ca || skipped.count(ca->target))
        continue;
      const SignalInfo &s = table.at(ca->target);
      if (s.kind != SignalKind::Wire && s.kind != SignalKind::Implicit)
        continue;
      if (uses.uses[ca->target] != 1 || uses.structural.count(ca->target)) {
        skipped.insert(ca->target);
        continue;
      }
      std::size_t k = uses.user[ca->target];
      if (k == i) {
        skipped.insert(ca->target);
        continue;
      }
      if (const auto *blk = std::get_if<AlwaysBlock>(&d.items[k])) {
        std::vector<std::string> w;
        collect_targets(blk->body, w);
        auto r = refs_of(*ca->value);
        if (std::any_of(w.begin(), w.end(),
                        [&](const std::string &n) { return r.count(n); })) {
          skipped.insert(ca->target);
          continue;
        }
      }
      pick = i;
    }
    if (!pick)
      break;
    const auto ca = std::get<ContinuousAssign>(d.items[*pick]);
    unsigned wt = table.at(ca.target).width;
    unsigned agree = table.width_of(*ca.value) <= wt ? kAllBits : wt;
    ExprPass inl = rewrite_exprs(
        d, [&](const ExprPtr &e, const Slot &,
               const SignalTable &) -> std::optional<Replacement> {
          if (e->kind == ExprKind::Ref && e->name == ca.target)
            return Replacement{ca.value, agree};
          return std::nullopt;
        });
    if (inl.sites.empty()) {
      skipped.insert(ca.target);
      continue;
    }
    Design next = std::move(inl.design);
    next.items.erase(next.items.begin() + static_cast<std::ptrdiff_t>(*pick));
    erase_decl_name(next, ca.target);
    out.sites.push_back({NodeKind::Assign, *pick, ca.span, ca.target});
    out.design = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dead code

ExprPass dead_code_elimination(const Design &d) {
  SignalTable table = SignalTable::build(d);
  std::map<std::string, std::vector<std::size_t>> writers;
  std::vector<std::set<std::string>> reads;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    for (const auto &w : writes_of(d.items[i]))
      writers[w].push_back(i);
    reads.push_back(reads_of(d.items[i]));
  }
  std::set<std::string> live;
  std::vector<std::string> work = table.outputs();
  live.insert(work.begin(), work.end());
  std::vector<bool> live_item(d.items.size(), false);
  while (!work.empty()) {
    std::string s = work.back();
    work.pop_back();
    for (std::size_t i : writers[s]) {
      if (live_item[i])
        continue;
      live_item[i] = true;
      for (const auto &r : reads[i])
        if (live.insert(r).second)
          work.push_back(r);
    }
  }

  ExprPass out{d, {}};
  out.design.items.clear();
  std::set<std::string> kept_names;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    if (live_item[i]) {
      out.design.items.push_back(d.items[i]);
      auto w = writes_of(d.items[i]);
      kept_names.insert(w.begin(), w.end());
      kept_names.insert(reads[i].begin(), reads[i].end());
      continue;
    }
    bool assign = std::holds_alternative<ContinuousAssign>(d.items[i]);
    std::string detail;
    for (const auto &w : writes_of(d.items[i]))
      detail += (detail.empty() ? "" : ", ") + w;
    out.sites.push_back({assign ? NodeKind::Assign : NodeKind::Always, i,
                         item_span(d.items[i]), detail});
  }
  for (const auto &decl : d.decls)
    for (const auto &name : decl.names)
      if (!kept_names.count(name)) {
        bool written = writers.count(name) != 0;
        erase_decl_name(out.design, name);
        if (!written)
          out.sites.push_back({NodeKind::Module, 0, decl.span, name});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Common subexpressions

bool depends_on(const Design &d, const std::string &from,
                const std::string &target) {
  std::map<std::string, const Expr *> driver;
  for (const auto &item : d.items)
    if (const auto *ca = std::get_if<ContinuousAssign>(&item))
      driver[ca->target] = ca->value.get();
  std::set<std::string> seen;
  std::vector<std::string> work{from};
  while (!work.empty()) {
    std::string s = work.back();
    work.pop_back();
    if (s == target)
      return true;
    if (!seen.insert(s).second)
      continue;
    auto it = driver.find(s);
    if (it != driver.end())
      for (const auto &r : refs_of(*it->second))
        work.push_back(r);
  }
  return false;
}

struct NetDef {
  std::string net;
  std::size_t item;
};

// A subtree equal to the whole right-hand side of another net becomes a
// reference to that net.
void reuse_nets(Design &d, std::vector<MatchSite> &sites) {
  SignalTable table = SignalTable::build(d);
  std::map<std::string, NetDef> defs;
  for (std::size_t i = 0; i < d.items.size(); ++i)
    if (const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]))
      if (!is_leaf(*ca->value) && table.at(ca->target).kind != SignalKind::Input)
        defs.try_emplace(expr_key(*ca->value, true), NetDef{ca->target, i});

  for (std::size_t i = 0; i < d.items.size(); ++i) {
    const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]);
    if (!ca)
      continue;
    std::function<ExprPtr(const ExprPtr &, const Slot &)> walk =
        [&](const ExprPtr &e, const Slot &slot) -> ExprPtr {
      if (is_leaf(*e) || e->kind == ExprKind::Slice)
        return e;
      auto it = defs.find(expr_key(*e, true));
      if (it != defs.end() && it->second.net != ca->target &&
          it->second.item != i) {
        unsigned we = table.width_of(*e);
        unsigned wn = table.at(it->second.net).width;
        if (admissible(we, wn, wn >= we ? kAllBits : wn, slot)) {
          sites.push_back({NodeKind::Expr, i, e->span, emit_expr(*e)});
          return make_ref(it->second.net);
        }
      }
      std::vector<ExprPtr> ops;
      bool changed = false;
      for (std::size_t k = 0; k < e->operands.size(); ++k) {
        ops.push_back(walk(e->operands[k], operand_slot(*e, k, slot)));
        changed |= ops.back() != e->operands[k];
      }
      return changed ? with_operands(*e, std::move(ops)) : e;
    };
    ExprPtr v = walk(ca->value, assign_slot(table, ca->target));
    if (v != ca->value)
      d.items[i] = ContinuousAssign{ca->target, v, ca->span};
  }
}

constexpr std::size_t kMaxDecompositionPool = 24;
constexpr std::size_t kMaxDecompositionTerms = 3;

// Rewrites a net as a signed sum of earlier nets when the ring normal forms
// agree and the sum is smaller.
void decompose_nets(Design &d, std::vector<MatchSite> &sites) {
  const Design snapshot = d;
  RingNormalizer rn(snapshot);
  const SignalTable &table = rn.table();
  struct Cand {
    std::string net;
    unsigned width;
    Polynomial poly;
  };
  std::vector<Cand> earlier;
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]);
    if (!ca)
      continue;
    const std::string target = ca->target;
    unsigned wt = table.at(target).width;
    auto pt = rn.signal(target);
    if (pt && !is_leaf(*ca->value)) {
      std::vector<const Cand *> pool;
      for (const auto &c : earlier)
        if (c.width >= wt && !depends_on(d, c.net, target))
          pool.push_back(&c);
      if (pool.size() > kMaxDecompositionPool)
        pool.erase(pool.begin(),
                   pool.end() - static_cast<std::ptrdiff_t>(kMaxDecompositionPool));

      std::optional<ExprPtr> best;
      std::vector<std::size_t> pick;
      std::function<bool(std::size_t, std::size_t)> choose =
          [&](std::size_t start, std::size_t left) -> bool {
        if (left == 0) {
          std::size_t n = pick.size();
          for (unsigned signs = 0; signs < (1u << n); ++signs) {
            Polynomial sum;
            for (std::size_t k = 0; k < n; ++k)
              sum = poly_add(sum, pool[pick[k]]->poly, (signs >> k) & 1);
            reduce(sum, wt);
            if (sum != *pt)
              continue;
            ExprPtr e;
            for (int neg = 0; neg < 2; ++neg)
              for (std::size_t k = 0; k < n; ++k) {
                if (static_cast<int>((signs >> k) & 1) != neg)
                  continue;
                ExprPtr r = make_ref(pool[pick[k]]->net);
                if (!e)
                  e = neg ? nullptr : r;
                else
                  e = make_binary(neg ? BinaryOp::Sub : BinaryOp::Add, e, r);
              }
            if (!e)
              continue;
            best = e;
            return true;
          }
          return false;
        }
        for (std::size_t k = start; k < pool.size(); ++k) {
          pick.push_back(k);
          bool found = choose(k + 1, left - 1);
          pick.pop_back();
          if (found)
            return true;
        }
        return false;
      };
      for (std::size_t n = 1; n <= kMaxDecompositionTerms && !best; ++n)
        choose(0, n);
      if (best && node_count(**best) < node_count(*ca->value)) {
        unsigned wn = table.width_of(**best);
        Slot slot = assign_slot(table, target);
        if (admissible(table.width_of(*ca->value), wn, wt, slot)) {
          sites.push_back({NodeKind::Assign, i, ca->span, emit_expr(*ca->value)});
          d.items[i] = ContinuousAssign{target, *best, ca->span};
        }
      }
    }
    if (pt && table.at(target).kind != SignalKind::Input) {
      bool nonconstant = std::any_of(pt->begin(), pt->end(), [](const auto &t) {
        return !t.first.empty();
      });
      if (nonconstant)
        earlier.push_back({target, wt, *pt});
    }
  }
}

constexpr std::size_t kMinSharedNodes = 3;

// Repeated non-trivial subtrees move into fresh `cse_<n>` wires.
void extract_shared(Design &d, std::vector<MatchSite> &sites) {
  for (int round = 0; round < 64; ++round) {
    SignalTable table = SignalTable::build(d);
    std::set<std::string> whole;
    struct Occ {
      int count = 0;
      std::size_t first_item = 0;
      ExprPtr expr;
      std::size_t nodes = 0;
    };
    std::map<std::string, Occ> occ;
    for (std::size_t i = 0; i < d.items.size(); ++i) {
      const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]);
      if (!ca)
        continue;
      whole.insert(expr_key(*ca->value, true));
      std::function<void(const ExprPtr &)> visit = [&](const ExprPtr &e) {
        if (is_leaf(*e) || e->kind == ExprKind::Slice || e->kind == ExprKind::Index)
          return;
        std::size_t n = node_count(*e);
        if (n >= kMinSharedNodes) {
          auto [it, fresh] = occ.try_emplace(expr_key(*e, true));
          if (fresh)
            it->second = {0, i, e, n};
          ++it->second.count;
        }
        for (const auto &op : e->operands)
          visit(op);
      };
      visit(ca->value);
    }
    const Occ *best = nullptr;
    std::string best_key;
    for (const auto &[key, o] : occ) {
      if (o.count < 2 || whole.count(key))
        continue;
      if (!best || o.nodes > best->nodes ||
          (o.nodes == best->nodes && o.first_item < best->first_item)) {
        best = &o;
        best_key = key;
      }
    }
    if (!best)
      return;

    std::string name;
    for (int n = 0;; ++n) {
      name = "cse_" + std::to_string(n);
      if (!table.contains(name))
        break;
    }
    unsigned w = table.width_of(*best->expr);
    ExprPtr shared = best->expr;
    std::size_t first_use = d.items.size();
    for (std::size_t i = 0; i < d.items.size(); ++i) {
      const auto *ca = std::get_if<ContinuousAssign>(&d.items[i]);
      if (!ca)
        continue;
      std::function<ExprPtr(const ExprPtr &)> walk =
          [&](const ExprPtr &e) -> ExprPtr {
        if (is_leaf(*e) || e->kind == ExprKind::Slice)
          return e;
        if (expr_key(*e, true) == best_key) {
          sites.push_back({NodeKind::Expr, i, e->span, emit_expr(*e)});
          return make_ref(name);
        }
        std::vector<ExprPtr> ops;
        bool changed = false;
        for (const auto &op : e->operands) {
          ops.push_back(walk(op));
          changed |= ops.back() != op;
        }
        return changed ? with_operands(*e, std::move(ops)) : e;
      };
      ExprPtr v = walk(ca->value);
      if (v != ca->value) {
        first_use = std::min(first_use, i);
        d.items[i] = ContinuousAssign{ca->target, v, ca->span};
      }
    }
    Decl decl;
    decl.kind = NetKind::Wire;
    if (w > 1)
      decl.range = Range{make_unsized(w - 1), make_unsized(0)};
    decl.names = {name};
    d.decls.push_back(std::move(decl));
    d.items.insert(d.items.begin() + static_cast<std::ptrdiff_t>(first_use),
                   ContinuousAssign{name, shared, {}});
  }
}

ExprPass common_subexpressions(const Design &input) {
  ExprPass out{input, {}};
  reuse_nets(out.design, out.sites);
  decompose_nets(out.design, out.sites);
  extract_shared(out.design, out.sites);
  return out;
}

// ---------------------------------------------------------------------------
// Mux chains

std::optional<std::pair<ExprPtr, ExprPtr>> equality_test(const Expr &c) {
  if (c.kind != ExprKind::Binary || c.binary_op != BinaryOp::Eq)
    return std::nullopt;
  const ExprPtr &l = c.operands[0];
  const ExprPtr &r = c.operands[1];
  if (r->kind == ExprKind::Const && l->kind != ExprKind::Const)
    return std::pair{l, r};
  if (l->kind == ExprKind::Const && r->kind != ExprKind::Const)
    return std::pair{r, l};
  return std::nullopt;
}

std::set<std::string> targets(const StmtList &body) {
  std::vector<std::string> v;
  collect_targets(body, v);
  return {v.begin(), v.end()};
}

StmtList simplify_mux(const StmtList &body, std::size_t item,
                      std::vector<MatchSite> &sites);

std::optional<StmtPtr> chain_to_case(const Stmt &s, std::size_t item,
                                     std::vector<MatchSite> &sites) {
  auto first = equality_test(*s.cond);
  if (!first)
    return std::nullopt;
  ExprPtr subject = first->first;
  std::vector<CaseArm> arms;
  std::optional<StmtList> fallback;
  const Stmt *cur = &s;
  for (;;) {
    auto test = equality_test(*cur->cond);
    if (!test || !same_expr(test->first, subject)) {
      fallback = StmtList{std::make_shared<Stmt>(*cur)};
      break;
    }
    arms.push_back({{test->second}, cur->then_body});
    if (!cur->has_else)
      break;
    if (cur->else_body.size() == 1 && cur->else_body[0]->kind == StmtKind::If) {
      cur = cur->else_body[0].get();
      continue;
    }
    fallback = cur->else_body;
    break;
  }
  if (arms.size() < 2)
    return std::nullopt;
  auto want = targets(arms[0].body);
  if (want.empty())
    return std::nullopt;
  for (const auto &a : arms)
    if (targets(a.body) != want)
      return std::nullopt;
  if (fallback && targets(*fallback) != want)
    return std::nullopt;

  sites.push_back({NodeKind::Always, item, s.span, emit_expr(*subject)});
  for (auto &a : arms)
    a.body = simplify_mux(a.body, item, sites);
  if (fallback)
    arms.push_back({{}, simplify_mux(*fallback, item, sites)});
  return make_case(subject, std::move(arms), s.span);
}

StmtList simplify_mux(const StmtList &body, std::size_t item,
                      std::vector<MatchSite> &sites) {
  StmtList out;
  for (const auto &sp : body) {
    const Stmt &s = *sp;
    if (s.kind == StmtKind::If) {
      if (auto c = chain_to_case(s, item, sites)) {
        out.push_back(*c);
        continue;
      }
      out.push_back(make_if(s.cond, simplify_mux(s.then_body, item, sites),
                            s.has_else ? std::optional<StmtList>(simplify_mux(
                                             s.else_body, item, sites))
                                       : std::nullopt,
                            s.span));
    } else if (s.kind == StmtKind::Case) {
      std::vector<CaseArm> arms = s.arms;
      for (auto &a : arms)
        a.body = simplify_mux(a.body, item, sites);
      out.push_back(make_case(s.subject, std::move(arms), s.span));
    } else {
      out.push_back(sp);
    }
  }
  return out;
}

ExprPass mux_simplification(const Design &d) {
  ExprPass out{d, {}};
  for (std::size_t i = 0; i < d.items.size(); ++i) {
    const auto *blk = std::get_if<AlwaysBlock>(&d.items[i]);
    if (!blk)
      continue;
    std::size_t before = out.sites.size();
    AlwaysBlock next = *blk;
    next.body = simplify_mux(blk->body, i, out.sites);
    if (out.sites.size() != before)
      out.design.items[i] = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Registry

struct Alias {
  const char *alias;
  const char *name;
};

constexpr Alias kAliases[] = {
    {"ZeroMultiplicationTemplate", "AlgebraicSimplification"},
    {"ZeroMultiplication", "AlgebraicSimplification"},
    {"IntermediateVariableExtractionTemplate", "CommonSubexpressionElimination"},
    {"IntermediateVariableExtraction", "CommonSubexpressionElimination"},
    {"CommonSubexpression", "CommonSubexpressionElimination"},
    {"TempVarElimination", "TemporaryVariableElimination"},
    {"DeadCode", "DeadCodeElimination"},
};

std::vector<RewriteTemplate> make_builtins() {
  const std::string dataflow = "combinational/dataflow";
  using G = Goal;
  std::vector<RewriteTemplate> t;
  t.push_back(make_template(
      "ConstantFolding", NodeKind::Expr, {G::Area, G::Power, G::Timing}, dataflow,
      "Evaluates operators whose operands are all literals.", constant_folding));
  t.push_back(make_template(
      "AlgebraicSimplification", NodeKind::Expr, {G::Area, G::Power, G::Timing},
      dataflow, "Removes identity operands (x+0, x*1, x|0, x^0) and "
                "collapses annihilators (x*0, x&0) to zero.",
      algebraic_simplification));
  t.push_back(make_template(
      "CommonSubexpressionElimination", NodeKind::Assign, {G::Area, G::Power},
      dataflow, "Reuses nets that already compute a subexpression and "
                "shares repeated subtrees through new wires.",
      common_subexpressions));
  t.push_back(make_template(
      "StrengthReduction", NodeKind::Expr, {G::Area, G::Power, G::Timing},
      dataflow, "Turns multiplication and division by powers of two into shifts.",
      strength_reduction));
  t.push_back(make_template(
      "TemporaryVariableElimination", NodeKind::Assign, {G::Area}, dataflow,
      "Inlines internal wires that are read exactly once.",
      temporary_elimination));
  t.push_back(make_template(
      "MuxSimplification", NodeKind::Always, {G::Area, G::Timing}, "control",
      "Turns if/else-if chains that compare one subject against constants "
      "into a case statement.",
      mux_simplification));
  t.push_back(make_template(
      "DeadCodeElimination", NodeKind::Assign, {G::Area, G::Power}, dataflow,
      "Removes logic that no output depends on.", dead_code_elimination));
  return t;
}

} // namespace

const std::vector<RewriteTemplate> &builtin_templates() {
  static const std::vector<RewriteTemplate> templates = make_builtins();
  return templates;
}

const RewriteTemplate *find_template(const std::string &name) {
  std::string canonical = name;
  for (const auto &a : kAliases)
    if (name == a.alias)
      canonical = a.name;
  for (const auto &t : builtin_templates())
    if (t.name == canonical)
      return &t;
  return nullptr;
}

std::vector<std::string> template_names() {
  std::vector<std::string> out;
  for (const auto &t : builtin_templates())
    out.push_back(t.name);
  for (const auto &a : kAliases)
    out.push_back(a.alias);
  return out;
}

} // namespace symrtlo
