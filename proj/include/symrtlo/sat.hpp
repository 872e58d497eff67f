// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Conflict-driven clause-learning SAT solver: two watched literals, first-UIP
// learning with local minimization, activity-ordered decisions with phase
// saving, and Luby restarts.

#pragma once

#include <cstdint>
#include <vector>

namespace symrtlo {

class SatSolver {
public:
  /// Literal = 2 * var + (1 if negated).
  using Lit = int;
  static Lit pos(int var) { return var * 2; }
  static Lit neg(int var) { return var * 2 + 1; }
  static int var_of(Lit l) { return l >> 1; }
  static Lit negate(Lit l) { return l ^ 1; }

  enum class Result { Sat, Unsat, Unknown };

  SatSolver();
  ~SatSolver();
  SatSolver(const SatSolver &) = delete;
  SatSolver &operator=(const SatSolver &) = delete;

  int new_var();
  int num_vars() const;
  /// Returns false once the formula is known unsatisfiable.
  bool add_clause(std::vector<Lit> clause);

  /// `conflict_budget` < 0 means unlimited.
  Result solve(std::int64_t conflict_budget = -1);

  /// Model value after a Sat result.
  bool model_value(int var) const;

  std::uint64_t conflicts() const;
  std::uint64_t decisions() const;

private:
  struct Impl;
  Impl *impl_;
};

} // namespace symrtlo
