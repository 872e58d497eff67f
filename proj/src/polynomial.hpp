// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Word-level normal form for ring arithmetic (+, -, *, unary -) over input
// ports. An output whose value is a polynomial modulo 2^w in both designs is
// proven equal when the two normal forms coincide; bit-level solving is left
// for everything else.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symrtlo/ast.hpp"
#include "symrtlo/elaborate.hpp"

namespace symrtlo {

/// Sorted multiset of input names to a coefficient.
using Monomial = std::vector<std::string>;
using Polynomial = std::map<Monomial, std::uint64_t>;

/// Ring normal forms of a design's continuously assigned nets, over its
/// input ports. Results are memoized per net; `design` must outlive the
/// normalizer.
class RingNormalizer {
public:
  explicit RingNormalizer(const Design &design);

  /// Value of a net modulo 2^(its width), when it admits a normal form.
  std::optional<Polynomial> signal(const std::string &name);
  /// A polynomial congruent to the value of `e` modulo 2^w.
  std::optional<Polynomial> expr(const Expr &e, unsigned w);

  const SignalTable &table() const { return table_; }

private:
  SignalTable table_;
  std::map<std::string, const Expr *> driver_;
  std::map<std::string, std::optional<Polynomial>> memo_;
  std::set<std::string> active_;
};

/// Reduces every coefficient modulo 2^w and drops zero terms.
void reduce(Polynomial &p, unsigned w);
Polynomial poly_add(const Polynomial &a, const Polynomial &b, bool subtract);

/// Normal form of every output port, reduced modulo 2^(port width), for the
/// outputs that admit one.
std::map<std::string, Polynomial> output_polynomials(const Design &design);

} // namespace symrtlo
