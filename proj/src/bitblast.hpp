// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Bit-level encoding of combinational designs into a shared AIG.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "symrtlo/aig.hpp"
#include "symrtlo/ast.hpp"

namespace symrtlo {

using LitVec = std::vector<Aig::Lit>; // least significant bit first

/// Input ports are looked up by name in `inputs` and created on demand, so
/// two designs blasted into the same Aig share their input variables.
class BitBlaster {
public:
  explicit BitBlaster(Aig &aig) : aig_(aig) {}

  /// Output port name to its bits. The design must be combinational.
  std::map<std::string, LitVec> blast(const Design &design);

  const std::map<std::string, LitVec> &inputs() const { return inputs_; }

private:
  Aig &aig_;
  std::map<std::string, LitVec> inputs_;
};

// Word-level operators, exposed for tests.
LitVec bb_add(Aig &g, const LitVec &a, const LitVec &b, Aig::Lit carry_in);
LitVec bb_mul(Aig &g, LitVec a, LitVec b);
/// Quotient and remainder; both are 0 when the divisor is 0.
std::pair<LitVec, LitVec> bb_divmod(Aig &g, const LitVec &a, const LitVec &b);

} // namespace symrtlo
