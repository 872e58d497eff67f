// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Optimization rule store and retrieval.
//
// Rules are embedded as term-frequency vectors over the library's own
// vocabulary and ranked by cosine similarity against a query. The ranking is
// cut at the largest gap between consecutive scores, and rules whose design
// pattern conflicts with the requested goal are dropped.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrtlo/rewrite.hpp"

namespace symrtlo {

using Embedding = std::vector<double>;

struct Rule {
  std::string name;
  std::string pattern;
  std::string rewrite;
  std::string category;
  std::string objective_improvement; // as written, e.g. "area, delay"
  std::optional<std::string> template_guidance;
  std::optional<std::string> function_name;

  // Derived on load.
  std::vector<Goal> objectives;
  std::vector<std::string> pattern_tags;
  Embedding embedding;

  /// Text the embedding is computed from: name, pattern, rewrite, category.
  std::string embedding_text() const;
  /// A rule with a built-in template behind it; others are advisory.
  bool actionable() const { return function_name.has_value(); }
  bool operator==(const Rule &other) const;
};

/// One row of the goal conflict table: applying `pattern` for `goal` works
/// against `conflicting_goal`, which `conflicting_pattern` serves. Lookups
/// work from either side.
struct Conflict {
  std::string pattern;
  Goal goal;
  Goal conflicting_goal;
  std::string conflicting_pattern;
};

class ConflictTable {
public:
  /// Pipelining vs resource sharing, clock gating vs retiming.
  static ConflictTable defaults();

  void add(Conflict c);
  const std::vector<Conflict> &entries() const { return entries_; }
  /// Every pattern tag the table mentions, lowercased.
  std::vector<std::string> pattern_tags() const;
  /// True when a rule carrying `tags` and serving `objectives` works against
  /// `goal`.
  bool conflicts(const std::vector<std::string> &tags,
                 const std::vector<Goal> &objectives, Goal goal) const;

private:
  std::vector<Conflict> entries_;
};

/// Lowercase alphanumeric tokens with common English stopwords removed.
std::vector<std::string> tokenize(const std::string &text);

/// Sorted token dictionary; one embedding dimension per token.
class Vocabulary {
public:
  static Vocabulary from_texts(const std::vector<std::string> &texts);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  /// L2-normalized term frequencies. Tokens outside the vocabulary are
  /// dropped; text with no known token gives the zero vector.
  Embedding embed(const std::string &text) const;

private:
  std::vector<std::string> tokens_;
};

bool is_zero_vector(const Embedding &v);

/// Dot product of two unit vectors. Throws Error(DimensionMismatch); a zero
/// vector on either side scores 0.
double similarity(const Embedding &a, const Embedding &b);

/// Number of leading entries to keep from non-increasing `scores`: the
/// position of the largest drop between neighbours, earliest on ties.
/// Throws Error(EmptyScores).
std::size_t elbow_cutoff(const std::vector<double> &scores);

class RuleLibrary {
public:
  /// Validates names and template references, then derives objectives,
  /// pattern tags and embeddings. Throws Error(Schema),
  /// Error(DuplicateRuleName).
  static RuleLibrary build(std::vector<Rule> rules,
                           ConflictTable conflicts = ConflictTable::defaults());

  const std::vector<Rule> &rules() const { return rules_; }
  const ConflictTable &conflicts() const { return conflicts_; }
  const Vocabulary &vocabulary() const { return vocab_; }
  const Rule *find(const std::string &name) const;

private:
  std::vector<Rule> rules_;
  ConflictTable conflicts_;
  Vocabulary vocab_;
};

struct ScoredRule {
  const Rule *rule = nullptr;
  double score = 0;
};

struct SearchResult {
  std::vector<ScoredRule> ranked;    // every rule, best first
  std::size_t elbow = 0;             // leading entries of `ranked` kept
  std::vector<std::string> filtered; // dropped for a goal conflict
  std::vector<ScoredRule> selected;  // final answer
  bool zero_query = false;           // no query token is in the vocabulary
};

/// Throws Error(EmptyLibrary), Error(Domain) when max_rules is 0.
SearchResult search(const std::string &query, Goal goal,
                    const RuleLibrary &library, std::size_t max_rules);

/// Accepts a JSON array of rule records, or an object
/// {"rules": [...], "conflicts": [...]} that extends the default conflict
/// table. Throws Error(Schema) naming the offending field.
RuleLibrary parse_rules(const nlohmann::json &doc);
RuleLibrary load_rules(const std::string &path);
nlohmann::ordered_json rules_to_json(const RuleLibrary &library);
void save_rules(const std::string &path, const RuleLibrary &library);

} // namespace symrtlo
