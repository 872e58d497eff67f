// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

const char *path_name(Path p) {
  return p == Path::Dataflow ? "dataflow" : "controlflow";
}

bool OptimizationPlan::has(Path p) const {
  return std::find(paths.begin(), paths.end(), p) != paths.end();
}

nlohmann::ordered_json OptimizationPlan::to_json() const {
  nlohmann::ordered_json j;
  j["goal"] = goal_name(goal);
  j["paths"] = nlohmann::ordered_json::array();
  for (Path p : paths)
    j["paths"].push_back(path_name(p));
  j["selected_rules"] = nlohmann::ordered_json::array();
  for (const auto &[name, score] : selected_rules)
    j["selected_rules"].push_back({{"name", name}, {"score", score}});
  j["templates"] = templates;
  j["advisory_rules"] = advisory_rules;
  j["filtered_rules"] = filtered_rules;
  j["queries"] = queries;
  return j;
}

namespace {

std::size_t template_rank(const std::string &name) {
  const auto &all = builtin_templates();
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].name == name)
      return i;
  return all.size();
}

bool has_fsm(const Design &d) {
  try {
    extract_fsm(d);
    return true;
  } catch (const Error &) {
    return false;
  }
}

} // namespace

OptimizationPlan dispatch(const Design &design, Goal goal, const RuleLibrary &library,
                          const Adapter &adapter, std::size_t max_rules) {
  OptimizationPlan plan;
  plan.goal = goal;
  plan.paths.push_back(Path::Dataflow);
  if (has_fsm(design))
    plan.paths.push_back(Path::Controlflow);

  std::string suggestions = adapter.suggest(adapter.summarize(design), goal);
  std::size_t start = 0;
  while (start < suggestions.size()) {
    std::size_t end = suggestions.find('\n', start);
    if (end == std::string::npos)
      end = suggestions.size();
    std::string line = suggestions.substr(start, end - start);
    if (!line.empty())
      plan.queries.push_back(line);
    start = end + 1;
  }

  // Best score per selected rule across all queries.
  std::map<std::string, double> best;
  std::set<std::string> filtered;
  for (const auto &q : plan.queries) {
    SearchResult r = search(q, goal, library, max_rules);
    for (const auto &s : r.selected) {
      auto [it, fresh] = best.try_emplace(s.rule->name, s.score);
      if (!fresh)
        it->second = std::max(it->second, s.score);
    }
    filtered.insert(r.filtered.begin(), r.filtered.end());
  }
  for (const auto &[name, score] : best)
    plan.selected_rules.push_back({name, score});
  std::stable_sort(plan.selected_rules.begin(), plan.selected_rules.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  for (const auto &f : filtered)
    if (!best.count(f))
      plan.filtered_rules.push_back(f);

  std::set<std::string> chosen;
  for (const auto &[name, score] : plan.selected_rules) {
    const Rule *rule = library.find(name);
    const RewriteTemplate *t =
        rule && rule->function_name ? find_template(*rule->function_name) : nullptr;
    if (t)
      chosen.insert(t->name);
    else
      plan.advisory_rules.push_back(name);
  }
  plan.templates.assign(chosen.begin(), chosen.end());
  std::sort(plan.templates.begin(), plan.templates.end(),
            [](const std::string &a, const std::string &b) {
              return template_rank(a) < template_rank(b);
            });
  return plan;
}

// ---------------------------------------------------------------------------
// Verification

std::optional<VerifyPolicy> VerifyPolicy::parse(const std::string &text) {
  VerifyPolicy p;
  if (text == "auto")
    p.formal = Formal::Auto;
  else if (text == "exhaustive")
    p.formal = Formal::Exhaustive;
  else if (text == "sat")
    p.formal = Formal::Sat;
  else if (text == "product")
    p.formal = Formal::Product;
  else if (text.rfind("bounded:", 0) == 0) {
    std::string k = text.substr(8);
    if (k.empty() || k.size() > 4 ||
        !std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    p.formal = Formal::Bounded;
    p.bounded_depth = static_cast<unsigned>(std::stoul(k));
    if (p.bounded_depth == 0)
      return std::nullopt;
  } else {
    return std::nullopt;
  }
  return p;
}

std::string VerifyPolicy::describe() const {
  switch (formal) {
  case Formal::Auto:
    return "auto";
  case Formal::Exhaustive:
    return "exhaustive";
  case Formal::Sat:
    return "sat";
  case Formal::Product:
    return "product";
  case Formal::Bounded:
    return "bounded:" + std::to_string(bounded_depth);
  }
  return "?";
}

namespace {

bool same_values(const Assignment &a, const Assignment &b) {
  if (a.size() != b.size())
    return false;
  for (const auto &[k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || (it->second.bits & width_mask(it->second.width)) !=
                             (v.bits & width_mask(v.width)))
      return false;
  }
  return true;
}

std::optional<EquivalenceVerdict> comb_filter(const Design &a, const Design &b,
                                              const VerifyPolicy &policy) {
  auto stimulus =
      gen_stimulus(a, StimulusStrategy::random(policy.filter_vectors, policy.seed));
  for (const auto &in : stimulus)
    if (!same_values(eval_comb(a, in), eval_comb(b, in))) {
      EquivalenceVerdict v;
      v.verdict = Verdict::NotEquivalent;
      v.mode = CheckMode::Exhaustive;
      v.input = in;
      v.bound = "fast filter, " + std::to_string(stimulus.size()) + " random vectors";
      return v;
    }
  return std::nullopt;
}

std::optional<EquivalenceVerdict> seq_filter(const Design &a, const Design &b,
                                             const VerifyPolicy &policy) {
  auto sequences = gen_sequences(
      a, policy.filter_depth,
      StimulusStrategy::random(policy.filter_sequences, policy.seed));
  for (const auto &seq : sequences) {
    Trace ta = simulate(a, seq), tb = simulate(b, seq);
    for (std::size_t i = 0; i < ta.steps.size() && i < tb.steps.size(); ++i)
      if (!same_values(ta.steps[i].outputs, tb.steps[i].outputs)) {
        EquivalenceVerdict v;
        v.verdict = Verdict::NotEquivalent;
        v.mode = CheckMode::BoundedSequential;
        v.depth = static_cast<unsigned>(i + 1);
        v.sequence = std::vector<Assignment>(seq.begin(), seq.begin() + i + 1);
        v.bound = "fast filter, " + std::to_string(sequences.size()) +
                  " random sequences of depth " + std::to_string(policy.filter_depth);
        return v;
      }
  }
  return std::nullopt;
}

} // namespace

EquivalenceVerdict verify_pair(const Design &original, const Design &candidate,
                               const VerifyPolicy &policy) {
  require_same_interface(original, candidate);
  bool sequential = original.has_clocked_block() || candidate.has_clocked_block();
  using F = VerifyPolicy::Formal;
  if (!sequential) {
    if (auto bad = comb_filter(original, candidate, policy))
      return *bad;
    CombMode mode = policy.formal == F::Exhaustive ? CombMode::Exhaustive
                    : policy.formal == F::Sat      ? CombMode::Propositional
                                                   : CombMode::Auto;
    return check_equiv_comb(original, candidate, mode);
  }
  if (auto bad = seq_filter(original, candidate, policy))
    return *bad;
  SeqMode mode = SeqMode::product();
  mode.depth = policy.bounded_depth;
  mode.seed = policy.seed;
  if (policy.formal == F::Bounded || policy.formal == F::Exhaustive)
    mode = SeqMode::bounded(policy.bounded_depth, 256, policy.seed);
  return check_equiv_seq(original, candidate, mode);
}

bool verdict_accepts(const EquivalenceVerdict &v) {
  if (v.verdict == Verdict::Equivalent)
    return true;
  return v.verdict == Verdict::Inconclusive && v.mode == CheckMode::BoundedSequential &&
         !v.sequence;
}

// ---------------------------------------------------------------------------
// Optimization

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Rounds of summarize, plan and rewrite until a round accepts nothing.
constexpr int kMaxDataflowRounds = 4;

} // namespace

OptimizeResult optimize(const Design &input, const std::string &input_text,
                        const std::string &input_name, const RuleLibrary &library,
                        const OptimizeOptions &options) {
  require_valid(input);
  OptimizeResult out;
  RunReport &rep = out.report;
  rep.input_name = input_name;
  rep.input_sha256 = sha256_hex(input_text);
  rep.seed = options.seed;
  VerifyPolicy policy = options.verify;
  policy.seed = options.seed;
  std::unique_ptr<Adapter> adapter = make_adapter(options.adapter);
  rep.adapter = adapter->name();

  auto t = Clock::now();
  rep.cost_before = cost(input);
  rep.plan = dispatch(input, options.goal, library, *adapter, options.max_rules);
  rep.timings_ms.push_back({"dispatch", ms_since(t)});

  Design current = input;

  // Control flow first: templates may restructure the blocks that FSM
  // extraction looks for.
  t = Clock::now();
  if (rep.plan.has(Path::Controlflow)) {
    FsmSummary fs;
    try {
      SymbolicFsm f = extract_fsm(current);
      MinimizeResult m = minimize(f);
      fs.original_states = f.states;
      fs.minimized_states = m.fsm.states;
      fs.mapping = m.mapping.to_class;
      fs.exact = m.exact;
      for (const auto &u : m.unreachable)
        fs.notes.push_back("unreachable state " + u + " dropped");
      if (m.fsm.states.size() < f.states.size()) {
        ReemitResult r = reemit(current, m.fsm, m.mapping);
        fs.notes.insert(fs.notes.end(), r.notes.begin(), r.notes.end());
        EquivalenceVerdict v = verify_pair(current, r.design, policy);
        rep.verification.push_back({"controlflow", v});
        if (verdict_accepts(v)) {
          current = std::move(r.design);
          fs.applied = true;
        } else {
          fs.notes.push_back("re-emitted machine rejected: " + v.summary());
        }
      } else {
        fs.notes.push_back("machine is already minimal");
      }
    } catch (const Error &e) {
      fs.notes.push_back(std::string(error_kind_name(e.kind())) + ": " + e.what());
    }
    rep.fsm = std::move(fs);
  }
  rep.timings_ms.push_back({"controlflow", ms_since(t)});

  t = Clock::now();
  std::size_t fired = 0;
  auto hook = [&](const Design &a, const Design &b) -> CheckOutcome {
    EquivalenceVerdict v = verify_pair(a, b, policy);
    rep.verification.push_back({"dataflow", v});
    return {verdict_accepts(v), verdict_accepts(v) ? "" : v.summary()};
  };
  std::vector<std::string> applied_order;
  for (int round = 0; round < kMaxDataflowRounds; ++round) {
    OptimizationPlan plan = round == 0 ? rep.plan
                                       : dispatch(current, options.goal, library,
                                                  *adapter, options.max_rules);
    std::vector<RewriteTemplate> seq;
    for (const auto &name : plan.templates) {
      seq.push_back(*find_template(name));
      for (const auto &bad : options.injected)
        seq.push_back(bad);
    }
    if (seq.empty())
      break;
    std::size_t before = fired;
    PipelineResult r = run_pipeline(current, seq, hook, options.budget);
    for (auto &e : r.log.entries) {
      if (e.accepted)
        ++fired;
      rep.rewrite_log.entries.push_back(std::move(e));
    }
    current = std::move(r.design);
    // Later rounds may add templates the first summary did not call for.
    for (const auto &name : plan.templates)
      if (std::find(rep.plan.templates.begin(), rep.plan.templates.end(), name) ==
          rep.plan.templates.end())
        rep.plan.templates.push_back(name);
    if (fired == before)
      break;
  }
  rep.timings_ms.push_back({"dataflow", ms_since(t)});

  // The final artifact is checked against the input, whatever happened
  // along the way.
  t = Clock::now();
  EquivalenceVerdict final_verdict = verify_pair(input, current, policy);
  rep.verification.push_back({"final", final_verdict});
  rep.timings_ms.push_back({"verify", ms_since(t)});
  if (verdict_accepts(final_verdict)) {
    rep.success = true;
  } else {
    rep.failure = "VerificationFailed: " + final_verdict.summary();
    current = input;
  }

  t = Clock::now();
  rep.cost_after = cost(current);
  rep.timings_ms.push_back({"cost", ms_since(t)});

  out.text = same_design(current, input) ? input_text : emit(current);
  out.design = std::move(current);
  rep.output_sha256 = sha256_hex(out.text);
  return out;
}

std::vector<double> pass_at_k(std::uint64_t n, std::uint64_t c,
                              const std::vector<std::uint64_t> &ks) {
  if (c > n)
    throw Error(ErrorKind::Domain, "pass@k needs c <= n");
  std::vector<double> out;
  for (std::uint64_t k : ks) {
    if (k < 1 || k > n)
      throw Error(ErrorKind::Domain, "pass@k needs 1 <= k <= n");
    if (n - c < k) {
      out.push_back(1.0);
      continue;
    }
    // C(n-c, k) / C(n, k) = prod_{i=n-c+1}^{n} (1 - k / i)
    double miss = 1.0;
    for (std::uint64_t i = n - c + 1; i <= n; ++i)
      miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
    out.push_back(1.0 - miss);
  }
  return out;
}

} // namespace symrtlo
