// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// End-to-end optimization: summarize the design, pick rules, run data-flow
// templates and FSM minimization under verification, and report.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrtlo/ast.hpp"
#include "symrtlo/cost.hpp"
#include "symrtlo/rewrite.hpp"
#include "symrtlo/rules.hpp"
#include "symrtlo/verify.hpp"

namespace symrtlo {

// ---------------------------------------------------------------------------
// Adapters

/// The two text capabilities the dispatcher needs. Implementations must be
/// deterministic for the run to be reproducible.
class Adapter {
public:
  virtual ~Adapter() = default;
  virtual std::string name() const = 0;
  /// Plain-text description of the design.
  virtual std::string summarize(const Design &design) const = 0;
  /// Optimization suggestions, one per line. Each line becomes a rule
  /// library query.
  virtual std::string suggest(const std::string &summary, Goal goal) const = 0;
};

/// Offline summarizer: module name, port and register counts, operator
/// histogram, always-block kinds, FSM flag, and one line per structure
/// that a built-in template can act on.
class StructuralAdapter : public Adapter {
public:
  std::string name() const override { return "structural"; }
  std::string summarize(const Design &design) const override;
  std::string suggest(const std::string &summary, Goal goal) const override;
};

/// Known names: "structural". Throws Error(Domain) otherwise.
std::unique_ptr<Adapter> make_adapter(const std::string &name);

/// Adapter name from the SYMRTLO_ADAPTER environment variable, or
/// "structural" when unset.
std::string adapter_from_env();

// ---------------------------------------------------------------------------
// Planning

enum class Path { Dataflow, Controlflow };
const char *path_name(Path p);

struct OptimizationPlan {
  Goal goal = Goal::Area;
  std::vector<Path> paths;
  std::vector<std::pair<std::string, double>> selected_rules;
  std::vector<std::string> templates; // canonical application order
  std::vector<std::string> advisory_rules;
  std::vector<std::string> filtered_rules; // dropped for a goal conflict
  std::vector<std::string> queries;

  bool has(Path p) const;
  nlohmann::ordered_json to_json() const;
};

/// Summarizes `design`, queries `library` once per suggestion, and maps
/// selected rules to templates. Control flow is planned iff the design
/// holds an extractable FSM.
OptimizationPlan dispatch(const Design &design, Goal goal, const RuleLibrary &library,
                          const Adapter &adapter, std::size_t max_rules);

// ---------------------------------------------------------------------------
// Verification policy

struct VerifyPolicy {
  enum class Formal { Auto, Exhaustive, Sat, Product, Bounded };
  Formal formal = Formal::Auto;
  unsigned bounded_depth = 8;
  std::size_t filter_vectors = 256;  // combinational fast filter
  std::size_t filter_sequences = 64; // sequential fast filter
  unsigned filter_depth = 16;
  std::uint64_t seed = 1;

  /// "auto", "exhaustive", "sat", "product" or "bounded:K".
  static std::optional<VerifyPolicy> parse(const std::string &text);
  std::string describe() const;
};

/// Random-stimulus comparison, then the formal check when the filter
/// passes. The verdict is Equivalent, bounded-positive Inconclusive, or a
/// failure carrying a counterexample.
EquivalenceVerdict verify_pair(const Design &original, const Design &candidate,
                               const VerifyPolicy &policy);

/// Equivalent, or Inconclusive from a bounded sequential run that found no
/// difference.
bool verdict_accepts(const EquivalenceVerdict &v);

// ---------------------------------------------------------------------------
// Optimization

struct OptimizeOptions {
  Goal goal = Goal::Area;
  std::size_t max_rules = 5;
  std::uint64_t seed = 1;
  VerifyPolicy verify;
  std::string adapter = "structural";
  /// Applied after every planned template; used for fault injection.
  std::vector<RewriteTemplate> injected;
  std::size_t budget = 512;
};

struct FsmSummary {
  std::vector<std::string> original_states;
  std::vector<std::string> minimized_states;
  std::map<std::string, std::string> mapping;
  bool exact = true;
  bool applied = false;
  std::vector<std::string> notes;
};

struct StageVerdict {
  std::string stage;
  EquivalenceVerdict verdict;
};

struct RunReport {
  std::string input_name;
  std::string input_sha256;
  std::string output_name;
  std::string output_sha256;
  std::string adapter;
  OptimizationPlan plan;
  RewriteLog rewrite_log;
  std::optional<FsmSummary> fsm;
  std::vector<StageVerdict> verification;
  CostReport cost_before;
  CostReport cost_after;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<std::string> failure;

  nlohmann::ordered_json to_json(bool with_timings = true) const;
};

struct OptimizeResult {
  Design design;
  std::string text; // emitted Verilog; the input text itself when unchanged
  RunReport report;
};

/// Runs the plan. A final artifact that fails verification is replaced by
/// the input and the report records the failure (success = false).
OptimizeResult optimize(const Design &input, const std::string &input_text,
                        const std::string &input_name, const RuleLibrary &library,
                        const OptimizeOptions &options);

// ---------------------------------------------------------------------------
// Metrics and hashing

/// 1 - C(n-c, k) / C(n, k) for each k. Throws Error(Domain) unless
/// 0 <= c <= n and 1 <= k <= n.
std::vector<double> pass_at_k(std::uint64_t n, std::uint64_t c,
                              const std::vector<std::uint64_t> &ks);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string &data);

} // namespace symrtlo
