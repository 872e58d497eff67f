// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Stimulus generation and equivalence checking.
//
// Combinational designs are compared by exhaustive simulation or by a
// SAT-decided miter over their bit-blasted forms. Sequential designs are
// compared on their port behavior only: registers are never matched by name,
// so re-encoded state machines can still be proven equivalent.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrtlo/ast.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };
enum class CheckMode {
  Exhaustive,
  Propositional,
  BoundedSequential,
  ProductReachability
};

const char *verdict_name(Verdict v);
const char *check_mode_name(CheckMode m);

struct EquivalenceVerdict {
  Verdict verdict = Verdict::Inconclusive;
  CheckMode mode = CheckMode::Exhaustive;
  unsigned depth = 0; // BoundedSequential only
  /// Combinational counterexample.
  std::optional<Assignment> input;
  /// Sequential counterexample: one entry per clock edge after reset.
  std::optional<std::vector<Assignment>> sequence;
  /// Explored space, e.g. "256 vectors" or "equivalent to depth 6".
  std::string bound;
  std::vector<std::string> notes;

  bool equivalent() const { return verdict == Verdict::Equivalent; }
  std::string summary() const;
  nlohmann::ordered_json to_json() const;
};

struct StimulusStrategy {
  enum class Kind { Exhaustive, Random };
  Kind kind = Kind::Exhaustive;
  std::size_t count = 0;  // Random only
  std::uint64_t seed = 0; // Random only

  static StimulusStrategy exhaustive() { return {}; }
  static StimulusStrategy random(std::size_t count, std::uint64_t seed) {
    return {Kind::Random, count, seed};
  }
};

inline constexpr unsigned kMaxExhaustiveBits = 20;
inline constexpr std::uint64_t kMaxExhaustiveSequences = 1000000;
inline constexpr unsigned kMaxProductStateBits = 24;
inline constexpr unsigned kMaxProductInputBits = 16;

/// Input vectors over the design's data inputs (clock and reset excluded).
/// Exhaustive order is ascending binary with the first port most
/// significant. Throws Error(SpaceTooLarge) past kMaxExhaustiveBits.
std::vector<Assignment> gen_stimulus(const Design &design,
                                     const StimulusStrategy &strategy);

/// Input sequences of length `depth`. Exhaustive enumeration is allowed
/// while |inputs|^depth stays within kMaxExhaustiveSequences.
std::vector<std::vector<Assignment>>
gen_sequences(const Design &design, unsigned depth,
              const StimulusStrategy &strategy);

enum class CombMode { Auto, Exhaustive, Propositional };

struct SeqMode {
  enum class Kind { Product, Bounded };
  Kind kind = Kind::Product;
  unsigned depth = 8;
  std::size_t vectors = 256;
  std::uint64_t seed = 1;
  unsigned reset_cycles = 1;

  static SeqMode product() { return {}; }
  static SeqMode bounded(unsigned depth, std::size_t vectors = 256,
                         std::uint64_t seed = 1) {
    return {Kind::Bounded, depth, vectors, seed, 1};
  }
};

/// Throws Error(InterfaceMismatch) when ports differ in name, direction or
/// width, Error(SpaceTooLarge) for an explicit exhaustive request past the
/// bound. A solver budget overrun yields Inconclusive.
EquivalenceVerdict check_equiv_comb(const Design &a, const Design &b,
                                    CombMode mode = CombMode::Auto);

/// Product mode falls back to bounded mode (with a note) when the joint
/// register space or the input alphabet exceeds its bound.
EquivalenceVerdict check_equiv_seq(const Design &a, const Design &b,
                                   const SeqMode &mode = SeqMode::product());

/// Dispatches on whether the designs are sequential.
EquivalenceVerdict check_equiv(const Design &a, const Design &b);

/// Replays a NotEquivalent verdict through the simulator; true when the
/// designs' outputs really differ.
bool replay_differs(const Design &a, const Design &b,
                    const EquivalenceVerdict &v);

/// Throws Error(InterfaceMismatch) unless both designs have the same ports.
void require_same_interface(const Design &a, const Design &b);

} // namespace symrtlo
