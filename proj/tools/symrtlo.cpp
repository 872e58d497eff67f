// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver. Exit codes: 0 success, 1 usage or other error,
// 2 parse/validate error, 3 verification failure, 4 bound exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symrtlo/cost.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/frontend.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/pipeline.hpp"
#include "symrtlo/rules.hpp"
#include "symrtlo/verify.hpp"

using namespace symrtlo;

namespace {

enum Exit { kOk = 0, kError = 1, kInput = 2, kVerify = 3, kBound = 4 };

int exit_for(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse:
  case ErrorKind::UnsupportedConstruct:
  case ErrorKind::Validate:
  case ErrorKind::CombinationalLoop:
    return kInput;
  case ErrorKind::SpaceTooLarge:
  case ErrorKind::StateSpaceTooLarge:
    return kBound;
  default:
    return kError;
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw Error(ErrorKind::Io, "cannot write " + path);
}

Design load(const std::string &path, std::string *text = nullptr) {
  std::string src = read_file(path);
  Design d = parse(src, path);
  require_valid(d);
  if (text)
    *text = std::move(src);
  return d;
}

std::string default_rules_path() {
  if (std::filesystem::exists("rules/default.json"))
    return "rules/default.json";
  return SYMRTLO_DEFAULT_RULES;
}

Goal goal_or_throw(const std::string &g) {
  auto goal = parse_goal(g);
  if (!goal)
    throw Error(ErrorKind::Domain, "unknown goal '" + g + "'");
  return *goal;
}

// --------------------------------------------------------------------------

struct OptimizeArgs {
  std::string input, out, report, rules, goal = "area", verify = "auto";
  std::size_t max_rules = 5;
  std::uint64_t seed = 1;
};

int cmd_optimize(const OptimizeArgs &a) {
  std::string text;
  Design d = load(a.input, &text);
  OptimizeOptions o;
  o.goal = goal_or_throw(a.goal);
  o.max_rules = a.max_rules;
  o.seed = a.seed;
  o.adapter = adapter_from_env();
  auto policy = VerifyPolicy::parse(a.verify);
  if (!policy)
    throw Error(ErrorKind::Domain, "unknown verify mode '" + a.verify + "'");
  o.verify = *policy;
  RuleLibrary lib = load_rules(a.rules.empty() ? default_rules_path() : a.rules);
  OptimizeResult r = optimize(d, text, a.input, lib, o);
  r.report.output_name = a.out.empty() ? "-" : a.out;
  if (a.out.empty())
    std::cout << r.text;
  else
    write_file(a.out, r.text);
  if (!a.report.empty())
    write_file(a.report, r.report.to_json().dump(2) + "\n");
  const CostReport &b = r.report.cost_before, &c = r.report.cost_after;
  std::cerr << (r.report.success ? "ok" : "FAILED") << ": cells " << b.cells << " -> "
            << c.cells << ", wires " << b.wires << " -> " << c.wires << ", depth "
            << b.depth << " -> " << c.depth << "\n";
  if (!r.report.success) {
    std::cerr << *r.report.failure << "\n";
    return kVerify;
  }
  return kOk;
}

int cmd_fsm_min(const std::string &input, bool dump, const std::string &out) {
  Design d = load(input);
  SymbolicFsm f = extract_fsm(d);
  MinimizeResult m = minimize(f);
  if (dump) {
    nlohmann::ordered_json j;
    j["original"] = f.to_json();
    j["minimized"] = m.fsm.to_json();
    j["mapping"] = nlohmann::ordered_json::object();
    for (const auto &s : f.states)
      if (auto it = m.mapping.to_class.find(s); it != m.mapping.to_class.end())
        j["mapping"][s] = it->second;
    j["exact"] = m.exact;
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << f.states.size() << " states -> " << m.fsm.states.size() << " states"
            << (m.exact ? "" : " (greedy cover)") << "\n";
  ReemitResult r = reemit(d, m.fsm, m.mapping);
  for (const auto &n : r.notes)
    std::cerr << "note: " << n << "\n";
  EquivalenceVerdict v = check_equiv_seq(d, r.design);
  std::cerr << v.summary() << "\n";
  if (!verdict_accepts(v))
    return kVerify;
  if (!out.empty())
    write_file(out, emit(r.design));
  else if (!dump)
    std::cout << emit(r.design);
  return kOk;
}

int cmd_check(const std::string &a_path, const std::string &b_path,
              const std::string &mode) {
  Design a = load(a_path), b = load(b_path);
  bool seq = a.has_clocked_block() || b.has_clocked_block();
  EquivalenceVerdict v;
  if (mode == "auto") {
    v = check_equiv(a, b);
  } else if (mode == "exhaustive") {
    v = seq ? check_equiv_seq(a, b, SeqMode::bounded(8))
            : check_equiv_comb(a, b, CombMode::Exhaustive);
  } else if (mode == "sat") {
    v = check_equiv_comb(a, b, CombMode::Propositional);
  } else if (mode == "product") {
    v = check_equiv_seq(a, b, SeqMode::product());
  } else if (auto p = VerifyPolicy::parse(mode);
             p && p->formal == VerifyPolicy::Formal::Bounded) {
    v = check_equiv_seq(a, b, SeqMode::bounded(p->bounded_depth));
  } else {
    throw Error(ErrorKind::Domain, "unknown mode '" + mode + "'");
  }
  std::cout << v.summary() << "\n" << v.to_json().dump(2) << "\n";
  return verdict_accepts(v) ? kOk : kVerify;
}

int cmd_cost(const std::string &input, bool json) {
  CostReport r = cost(load(input));
  if (json) {
    std::cout << r.to_json().dump(2) << "\n";
    return kOk;
  }
  std::cout << "wires " << r.wires << "\ncells " << r.cells << "\narea_proxy "
            << r.area_proxy << "\ndepth " << r.depth << "\nregister_bits "
            << r.register_bits << "\n";
  for (const auto &[k, n] : r.histogram)
    std::cout << "  " << k << " " << n << "\n";
  return kOk;
}

int cmd_rules_search(const std::string &query, const std::string &goal,
                     const std::string &rules, std::size_t max_rules) {
  RuleLibrary lib = load_rules(rules.empty() ? default_rules_path() : rules);
  SearchResult r = search(query, goal_or_throw(goal), lib, max_rules);
  nlohmann::ordered_json j;
  j["query"] = query;
  j["goal"] = goal_name(goal_or_throw(goal));
  j["zero_query"] = r.zero_query;
  j["elbow"] = r.elbow;
  j["ranked"] = nlohmann::ordered_json::array();
  for (const auto &s : r.ranked)
    j["ranked"].push_back({{"name", s.rule->name}, {"score", s.score}});
  j["filtered"] = r.filtered;
  j["selected"] = nlohmann::ordered_json::array();
  for (const auto &s : r.selected)
    j["selected"].push_back({{"name", s.rule->name},
                             {"score", s.score},
                             {"function_name", s.rule->function_name
                                                   ? nlohmann::ordered_json(
                                                         *s.rule->function_name)
                                                   : nlohmann::ordered_json(nullptr)}});
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_passk(std::uint64_t n, std::uint64_t c, const std::vector<std::uint64_t> &ks) {
  auto v = pass_at_k(n, c, ks);
  for (std::size_t i = 0; i < ks.size(); ++i)
    std::cout << "pass@" << ks[i] << " " << v[i] << "\n";
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"symrtlo: verified RTL optimization"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto *optimize_cmd = app.add_subcommand("optimize", "Optimize one Verilog module");
  optimize_cmd->add_option("--input", opt.input, "input .v file")->required();
  optimize_cmd->add_option("--goal", opt.goal, "area, power or timing");
  optimize_cmd->add_option("--out", opt.out, "output .v file (stdout when omitted)");
  optimize_cmd->add_option("--report", opt.report, "RunReport JSON file");
  optimize_cmd->add_option("--rules", opt.rules, "rules file");
  optimize_cmd->add_option("--max-rules", opt.max_rules, "rules kept per query");
  optimize_cmd->add_option("--seed", opt.seed, "random seed");
  optimize_cmd->add_option("--verify", opt.verify,
                           "auto, exhaustive, sat, product or bounded:K");

  std::string fsm_input, fsm_out;
  bool dump = false;
  auto *fsm_cmd = app.add_subcommand("fsm-min", "Minimize the FSM in a module");
  fsm_cmd->add_option("file", fsm_input)->required();
  fsm_cmd->add_flag("--dump-symbolic", dump, "print the symbolic machines as JSON");
  fsm_cmd->add_option("--out", fsm_out, "write the re-emitted module here");

  std::string eq_a, eq_b, eq_mode = "auto";
  auto *eq_cmd = app.add_subcommand("check-equiv", "Check two modules for equivalence");
  eq_cmd->add_option("a", eq_a)->required();
  eq_cmd->add_option("b", eq_b)->required();
  eq_cmd->add_option("--mode", eq_mode, "auto, exhaustive, sat, product or bounded:K");

  std::string cost_input;
  bool cost_json = false;
  auto *cost_cmd = app.add_subcommand("cost", "Structural cost of a module");
  cost_cmd->add_option("file", cost_input)->required();
  cost_cmd->add_flag("--json", cost_json);

  std::string query, rgoal = "area", rfile;
  std::size_t rmax = 5;
  auto *rules_cmd = app.add_subcommand("rules", "Rule library queries");
  rules_cmd->require_subcommand(1);
  auto *search_cmd = rules_cmd->add_subcommand("search", "Rank rules for a query");
  search_cmd->add_option("query", query)->required();
  search_cmd->add_option("--goal", rgoal);
  search_cmd->add_option("--rules", rfile);
  search_cmd->add_option("--max-rules", rmax);

  std::uint64_t pn = 0, pc = 0;
  std::vector<std::uint64_t> pk;
  auto *passk_cmd = app.add_subcommand("passk", "pass@k from sample counts");
  passk_cmd->add_option("--n", pn)->required();
  passk_cmd->add_option("--c", pc)->required();
  passk_cmd->add_option("--k", pk)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*optimize_cmd)
      return cmd_optimize(opt);
    if (*fsm_cmd)
      return cmd_fsm_min(fsm_input, dump, fsm_out);
    if (*eq_cmd)
      return cmd_check(eq_a, eq_b, eq_mode);
    if (*cost_cmd)
      return cmd_cost(cost_input, cost_json);
    if (*search_cmd)
      return cmd_rules_search(query, rgoal, rfile, rmax);
    if (*passk_cmd)
      return cmd_passk(pn, pc, pk);
  } catch (const Error &e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.format() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
