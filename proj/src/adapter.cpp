// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <map>
#include <sstream>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/fsm.hpp"
#include "symrtlo/pipeline.hpp"

namespace symrtlo {

namespace {

// Observed structure per template, worded the way rule patterns are.
const std::map<std::string, std::string> kObservations = {
    {"ConstantFolding", "operators whose operands are all constant literals"},
    {"AlgebraicSimplification",
     "identity operands such as addition of zero or multiplication by one, "
     "or multiplication by zero"},
    {"CommonSubexpressionElimination",
     "repeated subexpressions that recompute values already held by other nets"},
    {"StrengthReduction", "multiplication or division by a constant power of two"},
    {"TemporaryVariableElimination",
     "internal temporary wires assigned once and read exactly once"},
    {"MuxSimplification",
     "priority if else chains that compare one select signal against constants"},
    {"DeadCodeElimination", "assignments whose values never reach an output"},
};

constexpr const char *kObservationTag = "opportunity: ";

void count_ops(const Expr &e, std::map<std::string, std::size_t> &ops) {
  if (e.kind == ExprKind::Unary)
    ++ops[unary_op_text(e.unary_op)];
  else if (e.kind == ExprKind::Binary)
    ++ops[binary_op_text(e.binary_op)];
  else if (e.kind == ExprKind::Ternary)
    ++ops["?:"];
  for (const auto &o : e.operands)
    count_ops(*o, ops);
}

void count_ops(const StmtList &body, std::map<std::string, std::size_t> &ops) {
  for (const auto &s : body) {
    switch (s->kind) {
    case StmtKind::Blocking:
    case StmtKind::Nonblocking:
      count_ops(*s->value, ops);
      break;
    case StmtKind::If:
      count_ops(*s->cond, ops);
      count_ops(s->then_body, ops);
      count_ops(s->else_body, ops);
      break;
    case StmtKind::Case:
      count_ops(*s->subject, ops);
      for (const auto &a : s->arms) {
        for (const auto &l : a.labels)
          count_ops(*l, ops);
        count_ops(a.body, ops);
      }
      break;
    }
  }
}

} // namespace

std::string StructuralAdapter::summarize(const Design &design) const {
  SignalTable table = SignalTable::build(design);
  std::ostringstream os;
  os << "module " << design.name << "\n";
  auto ports = [&](const std::vector<std::string> &names) {
    unsigned bits = 0;
    for (const auto &n : names)
      bits += table.at(n).width;
    os << names.size() << " (" << bits << " bits)\n";
  };
  os << "inputs ";
  ports(table.inputs());
  os << "outputs ";
  ports(table.outputs());

  std::map<std::string, std::size_t> ops;
  std::size_t comb = 0, clocked = 0, assigns = 0;
  std::vector<std::string> registers;
  for (const auto &item : design.items) {
    if (const auto *ca = std::get_if<ContinuousAssign>(&item)) {
      ++assigns;
      count_ops(*ca->value, ops);
      continue;
    }
    const auto &blk = std::get<AlwaysBlock>(item);
    count_ops(blk.body, ops);
    if (blk.sensitivity.clocked()) {
      ++clocked;
      collect_targets(blk.body, registers);
    } else {
      ++comb;
    }
  }
  os << "registers " << registers.size() << "\n";
  os << "continuous assigns " << assigns << "\n";
  os << "always blocks " << comb << " combinational, " << clocked << " clocked\n";
  os << "operators";
  if (ops.empty())
    os << " none";
  for (const auto &[op, n] : ops)
    os << " " << op << ":" << n;
  os << "\n";

  try {
    SymbolicFsm f = extract_fsm(design);
    os << "fsm " << f.states.size() << " states, " << f.symbol_count() << " symbols"
       << (f.complete() ? "" : ", partial") << (f.mealy ? ", mealy" : ", moore")
       << "\n";
  } catch (const Error &e) {
    os << "fsm none\n";
  }

  for (const auto &t : builtin_templates()) {
    std::size_t sites = 0;
    try {
      sites = match_nodes(design, t).size();
    } catch (const Error &) {
      sites = 0;
    }
    if (sites)
      os << kObservationTag << kObservations.at(t.name) << " (" << sites
         << (sites == 1 ? " site" : " sites") << ")\n";
  }
  return os.str();
}

std::string StructuralAdapter::suggest(const std::string &summary, Goal goal) const {
  std::istringstream is(summary);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(kObservationTag, 0) != 0)
      continue;
    std::string what = line.substr(std::string(kObservationTag).size());
    if (auto paren = what.rfind(" ("); paren != std::string::npos)
      what.resize(paren);
    os << "detect " << what << " to improve " << goal_name(goal) << "\n";
  }
  return os.str();
}

std::unique_ptr<Adapter> make_adapter(const std::string &name) {
  if (name == "structural")
    return std::make_unique<StructuralAdapter>();
  throw Error(ErrorKind::Domain, "unknown adapter '" + name + "'");
}

std::string adapter_from_env() {
  const char *v = std::getenv("SYMRTLO_ADAPTER");
  return v && *v ? std::string(v) : std::string("structural");
}

} // namespace symrtlo
