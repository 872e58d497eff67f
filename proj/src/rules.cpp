// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/rules.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "symrtlo/error.hpp"

namespace symrtlo {

namespace {

const std::set<std::string> kStopwords = {
    "a",    "an",   "and",  "are", "as",   "at",   "be",   "by",
    "e",    "eg",   "for",  "from", "g",   "in",   "into", "is",
    "it",   "its",  "of",   "on",  "or",   "that", "the",  "their",
    "this", "to",   "with", "which", "when"};

std::vector<Goal> parse_objectives(const std::string &text,
                                   const std::string &where) {
  std::vector<Goal> out;
  std::string item;
  auto flush = [&] {
    std::string t;
    for (char c : item)
      if (!std::isspace(static_cast<unsigned char>(c)))
        t += c;
    item.clear();
    if (t.empty())
      return;
    auto g = parse_goal(t);
    if (!g)
      throw Error(ErrorKind::Schema, where + ": unknown objective '" + t + "'");
    if (std::find(out.begin(), out.end(), *g) == out.end())
      out.push_back(*g);
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      item += c;
  }
  flush();
  if (out.empty())
    throw Error(ErrorKind::Schema, where + ": no objective given");
  return out;
}

Goal parse_goal_field(const nlohmann::json &j, const std::string &where) {
  if (!j.is_string())
    throw Error(ErrorKind::Schema, where + ": expected a string");
  std::string t = j.get<std::string>();
  // Table rows say "Low Timing" and so on.
  std::string lower;
  for (char c : t)
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower.rfind("low ", 0) == 0)
    lower = lower.substr(4);
  auto g = parse_goal(lower);
  if (!g)
    throw Error(ErrorKind::Schema, where + ": unknown goal '" + t + "'");
  return *g;
}

std::string lower_tokens(const std::string &text) {
  std::string out;
  for (const auto &t : tokenize(text))
    out += (out.empty() ? "" : " ") + t;
  return out;
}

const char *const kRuleFields[] = {"name",     "pattern",
                                   "rewrite",  "category",
                                   "objective_improvement",
                                   "template_guidance", "function_name"};

Rule parse_rule(const nlohmann::json &j, const std::string &where) {
  if (!j.is_object())
    throw Error(ErrorKind::Schema, where + ": expected an object");
  for (const auto &[key, value] : j.items())
    if (std::find(std::begin(kRuleFields), std::end(kRuleFields), key) ==
        std::end(kRuleFields))
      throw Error(ErrorKind::Schema, where + "." + key + ": unknown field");
  auto text = [&](const char *field) {
    if (!j.contains(field))
      throw Error(ErrorKind::Schema,
                  where + "." + field + ": missing required field");
    if (!j[field].is_string())
      throw Error(ErrorKind::Schema, where + "." + field + ": expected a string");
    return j[field].get<std::string>();
  };
  auto nullable = [&](const char *field) -> std::optional<std::string> {
    if (!j.contains(field))
      throw Error(ErrorKind::Schema,
                  where + "." + field + ": missing required field");
    if (j[field].is_null())
      return std::nullopt;
    if (!j[field].is_string())
      throw Error(ErrorKind::Schema,
                  where + "." + field + ": expected a string or null");
    return j[field].get<std::string>();
  };
  Rule r;
  r.name = text("name");
  r.pattern = text("pattern");
  r.rewrite = text("rewrite");
  r.category = text("category");
  r.objective_improvement = text("objective_improvement");
  r.template_guidance = nullable("template_guidance");
  r.function_name = nullable("function_name");
  return r;
}

} // namespace

std::string Rule::embedding_text() const {
  return name + " " + pattern + " " + rewrite + " " + category;
}

bool Rule::operator==(const Rule &o) const {
  return name == o.name && pattern == o.pattern && rewrite == o.rewrite &&
         category == o.category &&
         objective_improvement == o.objective_improvement &&
         template_guidance == o.template_guidance &&
         function_name == o.function_name;
}

// ---------------------------------------------------------------------------
// Conflicts

ConflictTable ConflictTable::defaults() {
  ConflictTable t;
  t.add({"pipelining", Goal::Timing, Goal::Area, "resource sharing"});
  t.add({"clock gating", Goal::Power, Goal::Timing, "retiming"});
  return t;
}

void ConflictTable::add(Conflict c) {
  c.pattern = lower_tokens(c.pattern);
  c.conflicting_pattern = lower_tokens(c.conflicting_pattern);
  entries_.push_back(std::move(c));
}

std::vector<std::string> ConflictTable::pattern_tags() const {
  std::set<std::string> tags;
  for (const auto &e : entries_) {
    tags.insert(e.pattern);
    tags.insert(e.conflicting_pattern);
  }
  return {tags.begin(), tags.end()};
}

bool ConflictTable::conflicts(const std::vector<std::string> &tags,
                              const std::vector<Goal> &objectives,
                              Goal goal) const {
  auto has_tag = [&](const std::string &t) {
    return std::find(tags.begin(), tags.end(), t) != tags.end();
  };
  auto serves = [&](Goal g) {
    return std::find(objectives.begin(), objectives.end(), g) != objectives.end();
  };
  for (const auto &e : entries_) {
    if (has_tag(e.pattern) && serves(e.goal) && goal == e.conflicting_goal)
      return true;
    if (has_tag(e.conflicting_pattern) && serves(e.conflicting_goal) &&
        goal == e.goal)
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Embedding

std::vector<std::string> tokenize(const std::string &text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !kStopwords.count(cur))
      out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else
      flush();
  }
  flush();
  return out;
}

Vocabulary Vocabulary::from_texts(const std::vector<std::string> &texts) {
  std::set<std::string> all;
  for (const auto &t : texts)
    for (auto &tok : tokenize(t))
      all.insert(std::move(tok));
  Vocabulary v;
  v.tokens_.assign(all.begin(), all.end());
  return v;
}

Embedding Vocabulary::embed(const std::string &text) const {
  Embedding v(tokens_.size(), 0.0);
  for (const auto &tok : tokenize(text)) {
    auto it = std::lower_bound(tokens_.begin(), tokens_.end(), tok);
    if (it != tokens_.end() && *it == tok)
      v[static_cast<std::size_t>(it - tokens_.begin())] += 1.0;
  }
  double norm = 0;
  for (double x : v)
    norm += x * x;
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (double &x : v)
      x /= norm;
  }
  return v;
}

bool is_zero_vector(const Embedding &v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

double similarity(const Embedding &a, const Embedding &b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::DimensionMismatch,
                "embedding dimensions differ: " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
  double dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dot += a[i] * b[i];
  return std::clamp(dot, 0.0, 1.0);
}

std::size_t elbow_cutoff(const std::vector<double> &scores) {
  if (scores.empty())
    throw Error(ErrorKind::EmptyScores, "no similarity scores to cut");
  std::size_t best = 1;
  double gap = -1;
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) {
    double d = scores[i] - scores[i + 1];
    if (d > gap) {
      gap = d;
      best = i + 1;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Library

RuleLibrary RuleLibrary::build(std::vector<Rule> rules, ConflictTable conflicts) {
  RuleLibrary lib;
  std::set<std::string> names;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    Rule &r = rules[i];
    std::string where = "[" + std::to_string(i) + "]";
    if (r.name.empty())
      throw Error(ErrorKind::Schema, where + ".name: must not be empty");
    if (!names.insert(r.name).second)
      throw Error(ErrorKind::DuplicateRuleName,
                  "duplicate rule name '" + r.name + "'");
    if (r.function_name && !find_template(*r.function_name))
      throw Error(ErrorKind::Schema, where + ".function_name: unknown template '" +
                                         *r.function_name + "'");
    r.objectives =
        parse_objectives(r.objective_improvement, where + ".objective_improvement");
    texts.push_back(r.embedding_text());
  }
  lib.vocab_ = Vocabulary::from_texts(texts);
  for (auto &r : rules) {
    std::vector<std::string> own = tokenize(r.name + " " + r.pattern);
    std::set<std::string> have(own.begin(), own.end());
    r.pattern_tags.clear();
    for (const auto &tag : conflicts.pattern_tags()) {
      auto need = tokenize(tag);
      if (!need.empty() && std::all_of(need.begin(), need.end(),
                                       [&](const auto &t) { return have.count(t); }))
        r.pattern_tags.push_back(tag);
    }
    r.embedding = lib.vocab_.embed(r.embedding_text());
  }
  lib.rules_ = std::move(rules);
  lib.conflicts_ = std::move(conflicts);
  return lib;
}

const Rule *RuleLibrary::find(const std::string &name) const {
  for (const auto &r : rules_)
    if (r.name == name)
      return &r;
  return nullptr;
}

SearchResult search(const std::string &query, Goal goal,
                    const RuleLibrary &library, std::size_t max_rules) {
  if (library.rules().empty())
    throw Error(ErrorKind::EmptyLibrary, "rule library is empty");
  if (max_rules == 0)
    throw Error(ErrorKind::Domain, "max_rules must be at least 1");
  SearchResult out;
  Embedding q = library.vocabulary().embed(query);
  out.zero_query = is_zero_vector(q);
  for (const auto &r : library.rules())
    out.ranked.push_back({&r, similarity(q, r.embedding)});
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const ScoredRule &a, const ScoredRule &b) {
                     if (a.score != b.score)
                       return a.score > b.score;
                     return a.rule->name < b.rule->name;
                   });
  std::vector<double> scores;
  for (const auto &s : out.ranked)
    scores.push_back(s.score);
  out.elbow = elbow_cutoff(scores);
  for (std::size_t i = 0; i < out.elbow; ++i) {
    const ScoredRule &s = out.ranked[i];
    if (library.conflicts().conflicts(s.rule->pattern_tags, s.rule->objectives,
                                      goal)) {
      out.filtered.push_back(s.rule->name);
      continue;
    }
    if (out.selected.size() < max_rules)
      out.selected.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

RuleLibrary parse_rules(const nlohmann::json &doc) {
  const nlohmann::json *arr = &doc;
  ConflictTable conflicts = ConflictTable::defaults();
  if (doc.is_object()) {
    for (const auto &[key, value] : doc.items())
      if (key != "rules" && key != "conflicts")
        throw Error(ErrorKind::Schema, key + ": unknown field");
    if (!doc.contains("rules"))
      throw Error(ErrorKind::Schema, "rules: missing required field");
    arr = &doc["rules"];
    if (doc.contains("conflicts")) {
      const auto &cs = doc["conflicts"];
      if (!cs.is_array())
        throw Error(ErrorKind::Schema, "conflicts: expected an array");
      for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string where = "conflicts[" + std::to_string(i) + "]";
        const auto &c = cs[i];
        if (!c.is_object())
          throw Error(ErrorKind::Schema, where + ": expected an object");
        for (const auto &[key, value] : c.items())
          if (key != "pattern" && key != "goal" && key != "conflicting_goal" &&
              key != "conflicting_pattern")
            throw Error(ErrorKind::Schema, where + "." + key + ": unknown field");
        auto text = [&](const char *f) {
          if (!c.contains(f) || !c[f].is_string())
            throw Error(ErrorKind::Schema,
                        where + "." + f + ": missing required field");
          return c[f].get<std::string>();
        };
        conflicts.add({text("pattern"),
                       parse_goal_field(c.value("goal", nlohmann::json()),
                                        where + ".goal"),
                       parse_goal_field(c.value("conflicting_goal", nlohmann::json()),
                                        where + ".conflicting_goal"),
                       text("conflicting_pattern")});
      }
    }
  }
  if (!arr->is_array())
    throw Error(ErrorKind::Schema, "expected an array of rule records");
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < arr->size(); ++i)
    rules.push_back(parse_rule((*arr)[i], "[" + std::to_string(i) + "]"));
  return RuleLibrary::build(std::move(rules), std::move(conflicts));
}

RuleLibrary load_rules(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::Io, "cannot open rules file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Schema, path + ": " + e.what());
  }
  return parse_rules(doc);
}

nlohmann::ordered_json rules_to_json(const RuleLibrary &library) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto nullable = [](const std::optional<std::string> &s) {
    return s ? nlohmann::ordered_json(*s) : nlohmann::ordered_json(nullptr);
  };
  for (const auto &r : library.rules()) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["pattern"] = r.pattern;
    j["rewrite"] = r.rewrite;
    j["category"] = r.category;
    j["objective_improvement"] = r.objective_improvement;
    j["template_guidance"] = nullable(r.template_guidance);
    j["function_name"] = nullable(r.function_name);
    arr.push_back(std::move(j));
  }
  const auto &all = library.conflicts().entries();
  std::size_t base = ConflictTable::defaults().entries().size();
  if (all.size() <= base)
    return arr;
  nlohmann::ordered_json extra = nlohmann::ordered_json::array();
  for (std::size_t i = base; i < all.size(); ++i)
    extra.push_back({{"pattern", all[i].pattern},
                     {"goal", goal_name(all[i].goal)},
                     {"conflicting_goal", goal_name(all[i].conflicting_goal)},
                     {"conflicting_pattern", all[i].conflicting_pattern}});
  return {{"rules", arr}, {"conflicts", extra}};
}

void save_rules(const std::string &path, const RuleLibrary &library) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorKind::Io, "cannot write rules file " + path);
  out << rules_to_json(library).dump(2) << "\n";
}

} // namespace symrtlo
