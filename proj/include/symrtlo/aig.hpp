// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// And-inverter graph with constant propagation and structural hashing.

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace symrtlo {

class Aig {
public:
  /// Literal = 2 * node + complement bit. Node 0 is constant false.
  using Lit = std::uint32_t;
  static constexpr Lit kFalse = 0;
  static constexpr Lit kTrue = 1;

  static Lit negate(Lit l) { return l ^ 1u; }
  static std::uint32_t node_of(Lit l) { return l >> 1; }
  static bool is_complemented(Lit l) { return (l & 1u) != 0; }

  Aig();

  Lit make_input();
  Lit make_and(Lit a, Lit b);
  Lit make_or(Lit a, Lit b) { return negate(make_and(negate(a), negate(b))); }
  Lit make_xor(Lit a, Lit b);
  Lit make_xnor(Lit a, Lit b) { return negate(make_xor(a, b)); }
  /// sel ? t : f
  Lit make_mux(Lit sel, Lit t, Lit f);

  std::size_t num_nodes() const { return fanin0_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  bool is_input(std::uint32_t node) const { return input_index_[node] >= 0; }
  bool is_and(std::uint32_t node) const {
    return node != 0 && input_index_[node] < 0;
  }
  /// Position of an input node in creation order.
  int input_index(std::uint32_t node) const { return input_index_[node]; }
  std::uint32_t input_node(std::size_t i) const { return inputs_[i]; }
  Lit fanin0(std::uint32_t node) const { return fanin0_[node]; }
  Lit fanin1(std::uint32_t node) const { return fanin1_[node]; }

  /// Value of `root` given input values indexed by creation order.
  bool evaluate(Lit root, const std::vector<bool> &inputs) const;

private:
  std::vector<Lit> fanin0_;
  std::vector<Lit> fanin1_;
  std::vector<int> input_index_;
  std::vector<std::uint32_t> inputs_;
  std::unordered_map<std::uint64_t, Lit> strash_;
};

} // namespace symrtlo
