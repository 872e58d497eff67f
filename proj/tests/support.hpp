// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test binaries.

#pragma once

#include <string>
#include <vector>

#include "symrtlo/ast.hpp"

namespace symrtlo::testing {

std::string fixture_path(const std::string &name);
std::string read_text(const std::string &path);
Design load_fixture(const std::string &name);

/// Every bundled .v fixture, sorted by file name.
std::vector<std::string> all_fixtures();

/// Text with all whitespace removed.
std::string squash(const std::string &text);

/// Copy of `design` with header parameter `name` set to `value`.
Design with_parameter(const Design &design, const std::string &name,
                      std::uint64_t value);

} // namespace symrtlo::testing

#include <random>

#include <optional>

#include "symrtlo/fsm.hpp"
#include "symrtlo/rewrite.hpp"

namespace symrtlo::testing {

struct Var {
  std::string name;
  unsigned width;
};

/// Random expression over `vars` using the full operator set. Division and
/// modulo are included, so some draws divide by zero.
ExprPtr random_expr(std::mt19937_64 &rng, const std::vector<Var> &vars,
                    int depth);

/// Ten templates that each corrupt the design in a different way (when
/// they find something to corrupt). Used for fault injection.
std::vector<RewriteTemplate> broken_templates();

/// Combinational module `name` with the given inputs and one output `y` of
/// width `out_width` driven by `value`.
Design comb_design(const std::string &name, const std::vector<Var> &inputs,
                   unsigned out_width, const ExprPtr &value);

/// Meaning-preserving rewrite: commutes operands of commutative operators
/// at random and sometimes wraps nodes in a double complement.
ExprPtr commute(const ExprPtr &e, std::mt19937_64 &rng);

/// Replaces one leaf with a small constant, usually changing meaning.
ExprPtr perturb(const ExprPtr &e, std::mt19937_64 &rng);

/// Random Moore machine over one input of `in_bits` bits and one 2-bit
/// output taking `out_values` distinct values. Each transition is left
/// unspecified with probability `undefined`, except a chain Q0 -> Q1 -> ...
/// on symbol 0 that keeps every state reachable.
SymbolicFsm random_machine(std::mt19937_64 &rng, std::size_t n, unsigned in_bits,
                           unsigned out_values, double undefined = 0.0);

/// Size of the smallest congruent partition of a complete machine, by
/// enumerating set partitions.
std::size_t brute_force_minimum(const SymbolicFsm &f);

/// First input word of length <= depth on which `a` is defined and `b`
/// is undefined or produces a different output trace.
std::optional<std::vector<std::size_t>>
trace_mismatch(const SymbolicFsm &a, const SymbolicFsm &b, std::size_t depth);

} // namespace symrtlo::testing
