// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/aig.hpp"

#include <utility>

namespace symrtlo {

Aig::Aig() {
  fanin0_.push_back(kFalse);
  fanin1_.push_back(kFalse);
  input_index_.push_back(-1);
}

Aig::Lit Aig::make_input() {
  auto node = static_cast<std::uint32_t>(fanin0_.size());
  fanin0_.push_back(kFalse);
  fanin1_.push_back(kFalse);
  input_index_.push_back(static_cast<int>(inputs_.size()));
  inputs_.push_back(node);
  return node << 1;
}

Aig::Lit Aig::make_and(Lit a, Lit b) {
  if (a > b)
    std::swap(a, b);
  if (a == kFalse || a == negate(b))
    return kFalse;
  if (a == kTrue || a == b)
    return b;
  std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
  auto it = strash_.find(key);
  if (it != strash_.end())
    return it->second;
  auto node = static_cast<std::uint32_t>(fanin0_.size());
  fanin0_.push_back(a);
  fanin1_.push_back(b);
  input_index_.push_back(-1);
  Lit out = node << 1;
  strash_.emplace(key, out);
  return out;
}

Aig::Lit Aig::make_xor(Lit a, Lit b) {
  if (a > b)
    std::swap(a, b);
  if (a == kFalse)
    return b;
  if (a == kTrue)
    return negate(b);
  if (a == b)
    return kFalse;
  if (a == negate(b))
    return kTrue;
  // Normalize complements to the output so xor(!a, b) shares xor(a, b).
  bool flip = is_complemented(a) != is_complemented(b);
  Lit pa = a & ~1u;
  Lit pb = b & ~1u;
  Lit x = make_or(make_and(pa, negate(pb)), make_and(negate(pa), pb));
  return flip ? negate(x) : x;
}

Aig::Lit Aig::make_mux(Lit sel, Lit t, Lit f) {
  if (sel == kTrue || t == f)
    return t;
  if (sel == kFalse)
    return f;
  if (t == kTrue && f == kFalse)
    return sel;
  if (t == kFalse && f == kTrue)
    return negate(sel);
  return make_or(make_and(sel, t), make_and(negate(sel), f));
}

bool Aig::evaluate(Lit root, const std::vector<bool> &inputs) const {
  std::vector<char> val(num_nodes(), 0);
  std::uint32_t top = node_of(root);
  for (std::uint32_t n = 1; n <= top; ++n) {
    if (input_index_[n] >= 0) {
      val[n] = inputs[static_cast<std::size_t>(input_index_[n])];
      continue;
    }
    bool x = val[node_of(fanin0_[n])] != is_complemented(fanin0_[n]);
    bool y = val[node_of(fanin1_[n])] != is_complemented(fanin1_[n]);
    val[n] = x && y;
  }
  return (val[node_of(root)] != 0) != is_complemented(root);
}

} // namespace symrtlo
