// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <bit>
#include <deque>
#include <functional>
#include <map>

#include "symrtlo/error.hpp"
#include "symrtlo/fsm.hpp"

namespace symrtlo {

namespace {

using Mask = std::uint32_t;
using Classes = std::vector<std::vector<std::size_t>>;

// Search nodes before the exact cover search gives up.
constexpr std::size_t kCoverBudget = 2'000'000;

bool same_outputs(const SymbolicFsm &f, std::size_t p, std::size_t q) {
  return f.mealy ? f.out[p] == f.out[q] : f.out[p][0] == f.out[q][0];
}

SymbolicFsm restrict_to(const SymbolicFsm &f, const std::vector<std::size_t> &keep) {
  std::vector<std::optional<std::size_t>> index(f.states.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    index[keep[i]] = i;
  SymbolicFsm r;
  r.inputs = f.inputs;
  r.outputs = f.outputs;
  r.mealy = f.mealy;
  r.initial = *index[f.initial];
  for (std::size_t q : keep) {
    r.states.push_back(f.states[q]);
    std::vector<std::optional<std::size_t>> row;
    for (const auto &n : f.next[q])
      row.push_back(n ? index[*n] : std::nullopt);
    r.next.push_back(std::move(row));
    r.out.push_back(f.out[q]);
    if (f.accepting.count(f.states[q]))
      r.accepting.insert(f.states[q]);
  }
  for (const auto &[key, g] : f.guards)
    if (index[key.first])
      r.guards[{*index[key.first], key.second}] = g;
  return r;
}

Classes refine_partition(const SymbolicFsm &f) {
  std::size_t n = f.states.size();
  std::vector<std::size_t> block(n);
  {
    std::vector<std::size_t> reps;
    for (std::size_t q = 0; q < n; ++q) {
      auto it = std::find_if(reps.begin(), reps.end(),
                             [&](std::size_t r) { return same_outputs(f, r, q); });
      block[q] = static_cast<std::size_t>(it - reps.begin());
      if (it == reps.end())
        reps.push_back(q);
    }
  }
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next_block(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{block[q]};
      for (const auto &s : f.next[q])
        sig.push_back(block[*s]);
      auto [it, fresh] = ids.try_emplace(sig, ids.size());
      next_block[q] = it->second;
    }
    bool stable = ids.size() == static_cast<std::size_t>(
                                    *std::max_element(block.begin(), block.end()) + 1);
    block = std::move(next_block);
    if (stable)
      break;
  }
  std::map<std::size_t, std::size_t> order;
  Classes classes;
  for (std::size_t q = 0; q < n; ++q) {
    auto [it, fresh] = order.try_emplace(block[q], classes.size());
    if (fresh)
      classes.emplace_back();
    classes[it->second].push_back(q);
  }
  return classes;
}

std::vector<std::vector<bool>> compat_matrix(const SymbolicFsm &f) {
  std::size_t n = f.states.size();
  std::vector<std::vector<bool>> c(n, std::vector<bool>(n, true));
  auto guard = [&](std::size_t q, std::size_t s) {
    auto it = f.guards.find({q, s});
    return it == f.guards.end() ? std::string() : it->second;
  };
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      bool ok = same_outputs(f, p, q);
      for (std::size_t s = 0; ok && s < f.symbol_count(); ++s)
        if (f.next[p][s] && f.next[q][s] && guard(p, s) != guard(q, s))
          ok = false;
      c[p][q] = c[q][p] = ok;
    }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (!c[p][q])
          continue;
        for (std::size_t s = 0; s < f.symbol_count(); ++s) {
          const auto &a = f.next[p][s];
          const auto &b = f.next[q][s];
          if (a && b && !c[*a][*b]) {
            c[p][q] = c[q][p] = false;
            changed = true;
            break;
          }
        }
      }
  }
  return c;
}

struct CoverProblem {
  const SymbolicFsm &f;
  std::vector<std::vector<bool>> compat;

  bool clique(Mask m) const {
    for (std::size_t p = 0; p < f.states.size(); ++p)
      if (m >> p & 1)
        for (std::size_t q = p + 1; q < f.states.size(); ++q)
          if ((m >> q & 1) && !compat[p][q])
            return false;
    return true;
  }

  Mask successors(Mask m, std::size_t s) const {
    Mask out = 0;
    for (std::size_t q = 0; q < f.states.size(); ++q)
      if ((m >> q & 1) && f.next[q][s])
        out |= Mask{1} << *f.next[q][s];
    return out;
  }

  /// First implied set not contained in any chosen class.
  std::optional<Mask> open_implication(const std::vector<Mask> &cover) const {
    for (Mask c : cover)
      for (std::size_t s = 0; s < f.symbol_count(); ++s) {
        Mask need = successors(c, s);
        if (need == 0)
          continue;
        bool inside = std::any_of(cover.begin(), cover.end(),
                                  [&](Mask k) { return (need & ~k) == 0; });
        if (!inside)
          return need;
      }
    return std::nullopt;
  }
};

// Class order: larger first, then by member bitmask, so the search is
// deterministic.
bool class_before(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb)
    return pa > pb;
  return a < b;
}

std::optional<std::vector<Mask>> exact_cover(const CoverProblem &p) {
  std::size_t n = p.f.states.size();
  Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Mask> cliques;
  for (Mask m = 1; m <= all && m != 0; ++m)
    if (p.clique(m))
      cliques.push_back(m);
  std::sort(cliques.begin(), cliques.end(), class_before);

  std::size_t nodes = 0;
  bool exhausted = false;
  std::vector<Mask> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (++nodes > kCoverBudget) {
      exhausted = true;
      return false;
    }
    Mask covered = 0;
    for (Mask c : chosen)
      covered |= c;
    Mask must = 0;
    if (covered != all) {
      std::size_t u = static_cast<std::size_t>(std::countr_zero(~covered & all));
      must = Mask{1} << u;
    } else if (auto need = p.open_implication(chosen)) {
      must = *need;
    } else {
      return true;
    }
    if (chosen.size() == k)
      return false;
    for (Mask c : cliques) {
      if ((must & ~c) != 0)
        continue;
      if (std::find(chosen.begin(), chosen.end(), c) != chosen.end())
        continue;
      chosen.push_back(c);
      if (search(k))
        return true;
      chosen.pop_back();
      if (exhausted)
        return false;
    }
    return false;
  };
  for (std::size_t k = 1; k <= n; ++k) {
    chosen.clear();
    if (search(k))
      return chosen;
    if (exhausted)
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Mask> greedy_cover(const CoverProblem &p) {
  std::size_t n = p.f.states.size();
  auto grow = [&](Mask seed) {
    for (std::size_t v = 0; v < n; ++v)
      if (!(seed >> v & 1) && p.clique(seed | Mask{1} << v))
        seed |= Mask{1} << v;
    return seed;
  };
  std::vector<Mask> cover;
  Mask covered = 0;
  for (std::size_t u = 0; u < n; ++u)
    if (!(covered >> u & 1)) {
      cover.push_back(grow(Mask{1} << u));
      covered |= cover.back();
    }
  while (auto need = p.open_implication(cover))
    cover.push_back(grow(*need));
  return cover;
}

Classes to_classes(std::vector<Mask> cover, std::size_t n) {
  std::sort(cover.begin(), cover.end(), [](Mask a, Mask b) {
    int fa = std::countr_zero(a), fb = std::countr_zero(b);
    if (fa != fb)
      return fa < fb;
    return class_before(a, b);
  });
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  Classes out;
  for (Mask m : cover) {
    std::vector<std::size_t> members;
    for (std::size_t q = 0; q < n; ++q)
      if (m >> q & 1)
        members.push_back(q);
    out.push_back(std::move(members));
  }
  return out;
}

MinimizeResult build(const SymbolicFsm &f, const Classes &classes) {
  MinimizeResult r;
  SymbolicFsm &m = r.fsm;
  m.inputs = f.inputs;
  m.outputs = f.outputs;
  m.mealy = f.mealy;
  std::vector<std::string> names;
  for (const auto &c : classes) {
    std::string name;
    for (std::size_t q : c)
      name += (name.empty() ? "" : "_") + f.states[q];
    while (std::find(names.begin(), names.end(), name) != names.end())
      name += "_m";
    names.push_back(name);
  }
  m.states = names;
  auto first_class = [&](auto &&contains) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (contains(classes[i]))
        return i;
    return std::nullopt;
  };
  auto holding = [&](std::size_t q) {
    return *first_class([&](const std::vector<std::size_t> &c) {
      return std::find(c.begin(), c.end(), q) != c.end();
    });
  };
  for (std::size_t q = 0; q < f.states.size(); ++q)
    r.mapping.to_class[f.states[q]] = names[holding(q)];
  m.initial = holding(f.initial);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto &c = classes[ci];
    std::vector<std::optional<std::size_t>> row;
    std::vector<std::vector<std::uint64_t>> outs;
    for (std::size_t s = 0; s < f.symbol_count(); ++s) {
      std::vector<std::size_t> succ;
      std::optional<std::size_t> defined_by;
      for (std::size_t q : c)
        if (f.next[q][s]) {
          succ.push_back(*f.next[q][s]);
          if (!defined_by)
            defined_by = q;
        }
      if (succ.empty()) {
        row.push_back(std::nullopt);
      } else {
        auto target = first_class([&](const std::vector<std::size_t> &k) {
          return std::all_of(succ.begin(), succ.end(), [&](std::size_t x) {
            return std::find(k.begin(), k.end(), x) != k.end();
          });
        });
        if (!target)
          throw Error(ErrorKind::Internal, "state cover is not closed");
        row.push_back(*target);
        auto g = f.guards.find({*defined_by, s});
        if (g != f.guards.end())
          m.guards[{ci, s}] = g->second;
      }
      outs.push_back(f.out[defined_by.value_or(c[0])][s]);
    }
    m.next.push_back(std::move(row));
    m.out.push_back(std::move(outs));
    for (std::size_t q : c)
      if (f.accepting.count(f.states[q]))
        m.accepting.insert(names[ci]);
  }
  m.check();
  return r;
}

} // namespace

std::set<std::pair<std::size_t, std::size_t>>
compatibility_pairs(const SymbolicFsm &fsm) {
  auto c = compat_matrix(fsm);
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < fsm.states.size(); ++p)
    for (std::size_t q = p + 1; q < fsm.states.size(); ++q)
      if (c[p][q])
        out.insert({p, q});
  return out;
}

MinimizeResult minimize(const SymbolicFsm &fsm) {
  if (fsm.initial >= fsm.states.size())
    throw Error(ErrorKind::UnreachableInitial, "initial state is not a state");
  fsm.check();
  if (fsm.states.size() > 32)
    throw Error(ErrorKind::Domain, "machines above 32 states are not supported");

  std::vector<bool> seen(fsm.states.size(), false);
  std::deque<std::size_t> work{fsm.initial};
  seen[fsm.initial] = true;
  while (!work.empty()) {
    std::size_t q = work.front();
    work.pop_front();
    for (const auto &n : fsm.next[q])
      if (n && !seen[*n]) {
        seen[*n] = true;
        work.push_back(*n);
      }
  }
  std::vector<std::size_t> keep;
  std::vector<std::string> dropped;
  for (std::size_t q = 0; q < fsm.states.size(); ++q) {
    if (seen[q])
      keep.push_back(q);
    else
      dropped.push_back(fsm.states[q]);
  }
  SymbolicFsm f = restrict_to(fsm, keep);

  Classes classes;
  bool exact = true;
  if (f.complete() && f.guards.empty()) {
    classes = refine_partition(f);
  } else {
    CoverProblem p{f, compat_matrix(f)};
    std::optional<std::vector<Mask>> cover;
    if (f.states.size() <= kMaxExactCoverStates)
      cover = exact_cover(p);
    if (!cover) {
      exact = false;
      cover = greedy_cover(p);
    }
    classes = to_classes(*cover, f.states.size());
  }
  MinimizeResult r = build(f, classes);
  r.exact = exact;
  r.unreachable = std::move(dropped);
  return r;
}

} // namespace symrtlo
