// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Width contexts for expression rewriting.
//
// Every expression position ("slot") has a demand: the number of low result
// bits its surroundings can observe. Below an assignment the demand is the
// target width and it flows unchanged through + - * & | ^ ~, unary -, the
// left side of <<, and ternary branches. Any other operand position observes
// the whole value. Width-free slots (comparison and logical operands,
// conditions, case labels, shift amounts, index bits) observe only the
// integer value, not the width it is carried in.
//
// Replacing X (width w) by X' (width w') in a slot with demand D is sound
// when min(w', D) == min(w, D) and the two values agree in their low
// min(w, D) bits. In a width-free slot the integer values must be equal.

#pragma once

#include <climits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/rewrite.hpp"

namespace symrtlo {

inline constexpr unsigned kAllBits = UINT_MAX;

struct Slot {
  unsigned demand = kAllBits;
  bool width_free = false;
};

/// `agree_bits`: how many low bits of the zero-extended old and new values
/// are guaranteed equal (kAllBits when the integer values are equal).
bool admissible(unsigned old_width, unsigned new_width, unsigned agree_bits,
                const Slot &slot);

struct Replacement {
  ExprPtr expr;
  unsigned agree_bits = kAllBits;
};

/// Proposes a replacement for a node whose operands were already rewritten.
using ExprRule = std::function<std::optional<Replacement>(
    const ExprPtr &, const Slot &, const SignalTable &)>;

struct ExprPass {
  Design design;
  std::vector<MatchSite> sites;
};

/// Rewrites every expression of `design` bottom-up with `rule`, keeping
/// only admissible replacements. Sites are reported in source order.
ExprPass rewrite_exprs(const Design &design, const ExprRule &rule);

/// Slot of each operand of `e` when `e` sits in `slot`.
Slot operand_slot(const Expr &e, std::size_t operand, const Slot &slot);

/// Slot of the right-hand side of an assignment to `target`.
Slot assign_slot(const SignalTable &table, const std::string &target);

} // namespace symrtlo
