// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/sat.hpp"

#include <algorithm>

namespace symrtlo {

namespace {

using Lit = SatSolver::Lit;

constexpr std::int8_t kUndef = -1;

struct Clause {
  std::vector<Lit> lits;
  bool learnt = false;
  bool deleted = false;
};

// Luby sequence value for restart i (0-based), base 2.
double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i)
    r *= y;
  return r;
}

} // namespace

struct SatSolver::Impl {
  std::vector<Clause> clauses;
  std::vector<std::vector<int>> watches; // by literal
  std::vector<std::int8_t> assigns;      // by var: -1, 0, 1
  std::vector<int> level;
  std::vector<int> reason;
  std::vector<char> polarity; // saved phase
  std::vector<char> seen;
  std::vector<double> activity;
  std::vector<Lit> trail;
  std::vector<int> trail_lim;
  std::size_t qhead = 0;
  double var_inc = 1.0;
  bool ok = true;
  std::vector<bool> model;
  std::uint64_t n_conflicts = 0;
  std::uint64_t n_decisions = 0;
  std::size_t n_learnts = 0;

  // Binary max-heap of variables keyed by activity.
  std::vector<int> heap;
  std::vector<int> heap_pos; // -1 when absent

  int nvars() const { return static_cast<int>(assigns.size()); }
  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  std::int8_t value(Lit l) const {
    std::int8_t a = assigns[static_cast<std::size_t>(var_of(l))];
    if (a == kUndef)
      return kUndef;
    return static_cast<std::int8_t>(a ^ (l & 1));
  }

  // --- heap -----------------------------------------------------------------
  bool before(int a, int b) const { return activity[a] > activity[b]; }
  void heap_up(std::size_t i) {
    int v = heap[i];
    while (i > 0) {
      std::size_t p = (i - 1) / 2;
      if (!before(v, heap[p]))
        break;
      heap[i] = heap[p];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = p;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_down(std::size_t i) {
    int v = heap[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= heap.size())
        break;
      if (c + 1 < heap.size() && before(heap[c + 1], heap[c]))
        ++c;
      if (!before(heap[c], v))
        break;
      heap[i] = heap[c];
      heap_pos[heap[i]] = static_cast<int>(i);
      i = c;
    }
    heap[i] = v;
    heap_pos[v] = static_cast<int>(i);
  }
  void heap_insert(int v) {
    if (heap_pos[v] >= 0)
      return;
    heap.push_back(v);
    heap_up(heap.size() - 1);
  }
  int heap_pop() {
    int top = heap[0];
    heap_pos[top] = -1;
    int last = heap.back();
    heap.pop_back();
    if (!heap.empty()) {
      heap[0] = last;
      heap_pos[last] = 0;
      heap_down(0);
    }
    return top;
  }

  void bump(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (auto &a : activity)
        a *= 1e-100;
      var_inc *= 1e-100;
    }
    if (heap_pos[v] >= 0)
      heap_up(static_cast<std::size_t>(heap_pos[v]));
  }

  // --- core -----------------------------------------------------------------
  void enqueue(Lit l, int why) {
    int v = var_of(l);
    assigns[v] = static_cast<std::int8_t>((l & 1) ^ 1);
    level[v] = decision_level();
    reason[v] = why;
    trail.push_back(l);
  }

  void attach(int ci) {
    const auto &c = clauses[ci].lits;
    watches[c[0]].push_back(ci);
    watches[c[1]].push_back(ci);
  }

  int propagate() {
    while (qhead < trail.size()) {
      Lit p = trail[qhead++];
      Lit false_lit = negate(p);
      auto &ws = watches[false_lit];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        int ci = ws[i++];
        Clause &cl = clauses[ci];
        if (cl.deleted)
          continue;
        auto &c = cl.lits;
        if (c[0] == false_lit)
          std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved)
          continue;
        ws[j++] = ci;
        if (value(c[0]) == 0) {
          while (i < ws.size())
            ws[j++] = ws[i++];
          ws.resize(j);
          qhead = trail.size();
          return ci;
        }
        enqueue(c[0], ci);
      }
      ws.resize(j);
    }
    return -1;
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl)
      return;
    for (std::size_t i = trail.size(); i-- > static_cast<std::size_t>(trail_lim[lvl]);) {
      int v = var_of(trail[i]);
      polarity[v] = static_cast<char>(trail[i] & 1);
      assigns[v] = kUndef;
      reason[v] = -1;
      heap_insert(v);
    }
    trail.resize(static_cast<std::size_t>(trail_lim[lvl]));
    trail_lim.resize(static_cast<std::size_t>(lvl));
    qhead = trail.size();
  }

  bool redundant(Lit l) const {
    int r = reason[var_of(l)];
    if (r < 0)
      return false;
    const auto &c = clauses[r].lits;
    for (std::size_t k = 1; k < c.size(); ++k) {
      int v = var_of(c[k]);
      if (!seen[v] && level[v] > 0)
        return false;
    }
    return true;
  }

  void analyze(int confl, std::vector<Lit> &learnt, int &back_level) {
    learnt.assign(1, 0);
    int path = 0;
    Lit p = -1;
    std::size_t idx = trail.size();
    do {
      const auto &c = clauses[confl].lits;
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
        Lit q = c[k];
        int v = var_of(q);
        if (seen[v] || level[v] == 0)
          continue;
        seen[v] = 1;
        bump(v);
        if (level[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
      do {
        --idx;
      } while (!seen[var_of(trail[idx])]);
      p = trail[idx];
      confl = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = negate(p);

    std::vector<Lit> kept = {learnt[0]};
    for (std::size_t k = 1; k < learnt.size(); ++k)
      if (!redundant(learnt[k]))
        kept.push_back(learnt[k]);
    for (std::size_t k = 1; k < learnt.size(); ++k)
      seen[var_of(learnt[k])] = 0;
    learnt.swap(kept);

    back_level = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k)
        if (level[var_of(learnt[k])] > level[var_of(learnt[best])])
          best = k;
      std::swap(learnt[1], learnt[best]);
      back_level = level[var_of(learnt[1])];
    }
  }

  bool locked(int ci) const {
    const auto &c = clauses[ci].lits;
    int v = var_of(c[0]);
    return reason[v] == ci && value(c[0]) == 1;
  }

  void reduce_learnts() {
    std::vector<int> cand;
    for (std::size_t i = 0; i < clauses.size(); ++i)
      if (clauses[i].learnt && !clauses[i].deleted && clauses[i].lits.size() > 2 &&
          !locked(static_cast<int>(i)))
        cand.push_back(static_cast<int>(i));
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
      return clauses[a].lits.size() > clauses[b].lits.size();
    });
    for (std::size_t k = 0; k < cand.size() / 2; ++k) {
      clauses[cand[k]].deleted = true;
      clauses[cand[k]].lits.clear();
      clauses[cand[k]].lits.shrink_to_fit();
      --n_learnts;
    }
    for (auto &ws : watches)
      ws.erase(std::remove_if(ws.begin(), ws.end(),
                              [&](int ci) { return clauses[ci].deleted; }),
               ws.end());
  }

  int pick_branch() {
    while (!heap.empty()) {
      int v = heap_pop();
      if (assigns[v] == kUndef)
        return v;
    }
    return -1;
  }
};

SatSolver::SatSolver() : impl_(new Impl) {}
SatSolver::~SatSolver() { delete impl_; }

int SatSolver::new_var() {
  Impl &s = *impl_;
  int v = s.nvars();
  s.assigns.push_back(kUndef);
  s.level.push_back(0);
  s.reason.push_back(-1);
  s.polarity.push_back(1);
  s.seen.push_back(0);
  s.activity.push_back(0.0);
  s.heap_pos.push_back(-1);
  s.watches.emplace_back();
  s.watches.emplace_back();
  s.heap_insert(v);
  return v;
}

int SatSolver::num_vars() const { return impl_->nvars(); }

bool SatSolver::add_clause(std::vector<Lit> c) {
  Impl &s = *impl_;
  if (!s.ok)
    return false;
  std::sort(c.begin(), c.end());
  std::vector<Lit> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == negate(c[i]))
      return true; // tautology
    if (!out.empty() && out.back() == c[i])
      continue;
    std::int8_t v = s.value(c[i]);
    if (v == 1 && s.level[var_of(c[i])] == 0)
      return true;
    if (v == 0 && s.level[var_of(c[i])] == 0)
      continue;
    out.push_back(c[i]);
  }
  if (out.empty()) {
    s.ok = false;
    return false;
  }
  if (out.size() == 1) {
    s.enqueue(out[0], -1);
    if (s.propagate() >= 0)
      s.ok = false;
    return s.ok;
  }
  s.clauses.push_back(Clause{std::move(out), false, false});
  s.attach(static_cast<int>(s.clauses.size()) - 1);
  return true;
}

SatSolver::Result SatSolver::solve(std::int64_t budget) {
  Impl &s = *impl_;
  if (!s.ok)
    return Result::Unsat;
  std::vector<Lit> learnt;
  std::size_t max_learnts = std::max<std::size_t>(s.clauses.size() / 3, 2000);
  std::int64_t spent = 0;
  for (int restart = 0;; ++restart) {
    auto limit = static_cast<std::int64_t>(luby(2.0, restart) * 100);
    std::int64_t in_restart = 0;
    for (;;) {
      int confl = s.propagate();
      if (confl >= 0) {
        ++s.n_conflicts;
        ++in_restart;
        ++spent;
        if (s.decision_level() == 0) {
          s.ok = false;
          return Result::Unsat;
        }
        int back = 0;
        s.analyze(confl, learnt, back);
        s.cancel_until(back);
        if (learnt.size() == 1) {
          s.enqueue(learnt[0], -1);
        } else {
          s.clauses.push_back(Clause{learnt, true, false});
          int ci = static_cast<int>(s.clauses.size()) - 1;
          s.attach(ci);
          ++s.n_learnts;
          s.enqueue(learnt[0], ci);
        }
        s.var_inc /= 0.95;
        if (budget >= 0 && spent >= budget) {
          s.cancel_until(0);
          return Result::Unknown;
        }
        continue;
      }
      if (in_restart >= limit) {
        s.cancel_until(0);
        break;
      }
      if (s.n_learnts > max_learnts + s.trail.size()) {
        s.reduce_learnts();
        max_learnts += max_learnts / 10;
      }
      int v = s.pick_branch();
      if (v < 0) {
        s.model.assign(static_cast<std::size_t>(s.nvars()), false);
        for (int k = 0; k < s.nvars(); ++k)
          s.model[k] = s.assigns[k] == 1;
        s.cancel_until(0);
        return Result::Sat;
      }
      ++s.n_decisions;
      s.trail_lim.push_back(static_cast<int>(s.trail.size()));
      s.enqueue(s.polarity[v] ? neg(v) : pos(v), -1);
    }
  }
}

bool SatSolver::model_value(int var) const {
  return impl_->model.at(static_cast<std::size_t>(var));
}

std::uint64_t SatSolver::conflicts() const { return impl_->n_conflicts; }
std::uint64_t SatSolver::decisions() const { return impl_->n_decisions; }

} // namespace symrtlo
