// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// AST rewrite templates and the verified rewrite pipeline.
//
// A template pairs a matcher (which sites qualify) with a transform (what
// replaces them). The pipeline applies templates one at a time, checks each
// result against the original design, and rolls back any application that
// fails the check.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrtlo/ast.hpp"

namespace symrtlo {

enum class Goal { Area, Power, Timing };
const char *goal_name(Goal g);
/// Accepts "area", "power", "timing" and "delay" (a synonym for timing).
std::optional<Goal> parse_goal(const std::string &text);

struct MatchSite {
  NodeKind kind = NodeKind::Expr;
  std::size_t item = 0; // index into Design::items; unused for Module
  SourceSpan span;
  std::string detail;
};

struct RewriteTemplate {
  std::string name;
  NodeKind target_kind = NodeKind::Expr;
  std::vector<Goal> goals;
  std::string category; // "combinational/dataflow", "control", "fsm"
  std::string description;
  /// Every site where the template applies, in source order. Must not
  /// modify anything.
  std::function<std::vector<MatchSite>(const Design &)> matcher;
  /// Rewrites all `sites` in one pass. Sites that an earlier rewrite in
  /// the same pass invalidated are skipped and described in `notes`.
  std::function<Design(const Design &, const std::vector<MatchSite> &sites,
                       std::vector<std::string> &notes)>
      transform;
};

struct RewriteLogEntry {
  std::string template_name;
  std::vector<MatchSite> sites;
  bool accepted = false;
  std::optional<std::string> reason; // set whenever accepted is false
  std::vector<std::string> notes;
};

struct RewriteLog {
  std::vector<RewriteLogEntry> entries;
  nlohmann::ordered_json to_json() const;
};

/// Every match site of `tmpl` in `design`. Requires a valid design.
std::vector<MatchSite> match_nodes(const Design &design,
                                   const RewriteTemplate &tmpl);

struct Application {
  Design design;
  RewriteLogEntry entry;
};

/// Applies `tmpl` at all its sites. With no site the input comes back
/// unchanged and the entry is rejected as "no-op". A transform that throws
/// or yields an invalid design produces a rejected "TransformFailed" entry
/// and the unchanged input.
Application apply_template(const Design &design, const RewriteTemplate &tmpl);

/// Equivalence hook for the pipeline: ok when `candidate` behaves like
/// `original`; `detail` explains a failure.
struct CheckOutcome {
  bool ok = false;
  std::string detail;
};
using VerifyHook =
    std::function<CheckOutcome(const Design &original, const Design &candidate)>;

struct PipelineResult {
  Design design;
  RewriteLog log;
  bool budget_exhausted = false;
};

/// Applies `templates` in order, verifying each accepted application
/// against the input design and rolling back failures. At most `budget`
/// applications are attempted; when it runs out, the best verified design
/// so far is returned with `budget_exhausted` set.
PipelineResult run_pipeline(const Design &design,
                            const std::vector<RewriteTemplate> &templates,
                            const VerifyHook &verify, std::size_t budget = 64);

/// Built-in templates in their default application order: ConstantFolding,
/// AlgebraicSimplification, CommonSubexpressionElimination,
/// StrengthReduction, TemporaryVariableElimination, MuxSimplification,
/// DeadCodeElimination.
const std::vector<RewriteTemplate> &builtin_templates();

/// Looks up a built-in template by name or alias; nullptr when unknown.
const RewriteTemplate *find_template(const std::string &name);

/// Every name accepted by find_template.
std::vector<std::string> template_names();

} // namespace symrtlo
