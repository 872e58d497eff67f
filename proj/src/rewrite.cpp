// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/rewrite.hpp"

#include <cctype>

#include "symrtlo/frontend.hpp"

namespace symrtlo {

const char *goal_name(Goal g) {
  switch (g) {
  case Goal::Area: return "area";
  case Goal::Power: return "power";
  case Goal::Timing: return "timing";
  }
  return "?";
}

std::optional<Goal> parse_goal(const std::string &text) {
  std::string t;
  for (char c : text)
    if (c != ' ')
      t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "area")
    return Goal::Area;
  if (t == "power")
    return Goal::Power;
  if (t == "timing" || t == "delay")
    return Goal::Timing;
  return std::nullopt;
}

nlohmann::ordered_json RewriteLog::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto &e : entries) {
    nlohmann::ordered_json j;
    j["template"] = e.template_name;
    j["accepted"] = e.accepted;
    j["reason"] = e.reason ? nlohmann::ordered_json(*e.reason)
                           : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json sites = nlohmann::ordered_json::array();
    for (const auto &s : e.sites) {
      nlohmann::ordered_json site;
      site["kind"] = node_kind_name(s.kind);
      site["line"] = s.span.line_start;
      site["col"] = s.span.col_start;
      site["detail"] = s.detail;
      sites.push_back(std::move(site));
    }
    j["sites"] = std::move(sites);
    j["notes"] = e.notes;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<MatchSite> match_nodes(const Design &design,
                                   const RewriteTemplate &tmpl) {
  if (!tmpl.matcher)
    return {};
  return tmpl.matcher(design);
}

Application apply_template(const Design &design, const RewriteTemplate &tmpl) {
  Application out{design, {}};
  out.entry.template_name = tmpl.name;
  try {
    out.entry.sites = match_nodes(design, tmpl);
  } catch (const std::exception &e) {
    out.entry.reason = std::string("TransformFailed: matcher raised: ") + e.what();
    return out;
  }
  if (out.entry.sites.empty()) {
    out.entry.reason = "no-op";
    return out;
  }
  Design next;
  try {
    if (!tmpl.transform)
      throw Error(ErrorKind::TransformFailed, "template has no transform");
    next = tmpl.transform(design, out.entry.sites, out.entry.notes);
  } catch (const std::exception &e) {
    out.entry.reason = std::string("TransformFailed: ") + e.what();
    return out;
  }
  std::vector<Diagnostic> diags;
  try {
    diags = validate(next);
  } catch (const std::exception &e) {
    diags.push_back({Severity::Error, {}, e.what()});
  }
  for (const auto &d : diags) {
    if (d.severity == Severity::Error) {
      out.entry.reason = "TransformFailed: result does not validate: " + d.message;
      return out;
    }
  }
  if (same_design(next, design)) {
    out.entry.reason = "no-op";
    return out;
  }
  out.design = std::move(next);
  out.entry.accepted = true;
  return out;
}

PipelineResult run_pipeline(const Design &design,
                            const std::vector<RewriteTemplate> &templates,
                            const VerifyHook &verify, std::size_t budget) {
  PipelineResult result{design, {}, false};
  std::size_t attempts = 0;
  for (const auto &tmpl : templates) {
    if (attempts == budget) {
      result.budget_exhausted = true;
      break;
    }
    ++attempts;
    Application app = apply_template(result.design, tmpl);
    if (app.entry.accepted && verify) {
      CheckOutcome check;
      try {
        check = verify(design, app.design);
      } catch (const std::exception &e) {
        check = {false, e.what()};
      }
      if (!check.ok) {
        app.entry.accepted = false;
        app.entry.reason = "verification failed" +
                           (check.detail.empty() ? "" : ": " + check.detail);
      }
    }
    if (app.entry.accepted)
      result.design = std::move(app.design);
    result.log.entries.push_back(std::move(app.entry));
  }
  return result;
}

} // namespace symrtlo
