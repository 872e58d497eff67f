// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "symrtlo/verify.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

#include "bitblast.hpp"
#include "polynomial.hpp"
#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/sat.hpp"

namespace symrtlo {

const char *verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Equivalent: return "Equivalent";
  case Verdict::NotEquivalent: return "NotEquivalent";
  case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char *check_mode_name(CheckMode m) {
  switch (m) {
  case CheckMode::Exhaustive: return "Exhaustive";
  case CheckMode::Propositional: return "Propositional";
  case CheckMode::BoundedSequential: return "BoundedSequential";
  case CheckMode::ProductReachability: return "ProductReachability";
  }
  return "?";
}

namespace {

nlohmann::ordered_json assignment_json(const Assignment &a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto &[k, v] : a)
    j[k] = v.bits;
  return j;
}

struct PortBits {
  std::string name;
  unsigned width;
};

// Data inputs of a model in port order.
std::vector<PortBits> data_ports(const Model &m) {
  std::vector<PortBits> out;
  for (int s : m.data_inputs())
    out.push_back({m.name(s), m.width(s)});
  return out;
}

unsigned total_bits(const std::vector<PortBits> &ports) {
  unsigned n = 0;
  for (const auto &p : ports)
    n += p.width;
  return n;
}

// Splits `x` over the ports, first port in the most significant bits.
Assignment decode(const std::vector<PortBits> &ports, std::uint64_t x) {
  Assignment a;
  for (auto it = ports.rbegin(); it != ports.rend(); ++it) {
    a[it->name] = BitVal{x & width_mask(it->width), it->width};
    x = it->width >= 64 ? 0 : x >> it->width;
  }
  return a;
}

// Output slots of `b` listed in the order of `a`'s outputs.
std::vector<int> matching_outputs(const Model &a, const Model &b) {
  std::vector<int> out;
  for (int s : a.outputs())
    out.push_back(b.slot(a.name(s)));
  return out;
}

bool outputs_differ(const Model &ma, const SimState &sa, const SimState &sb,
                    const std::vector<int> &b_out) {
  const auto &oa = ma.outputs();
  for (std::size_t i = 0; i < oa.size(); ++i)
    if (sa.values[oa[i]] != sb.values[b_out[i]])
      return true;
  return false;
}

EquivalenceVerdict comb_exhaustive(const Design &a, const Design &b) {
  Model ma(a), mb(b);
  auto ports = data_ports(ma);
  unsigned bits = total_bits(ports);
  if (bits > kMaxExhaustiveBits)
    throw Error(ErrorKind::SpaceTooLarge,
                "exhaustive check over " + std::to_string(bits) +
                    " input bits exceeds the limit of " +
                    std::to_string(kMaxExhaustiveBits));
  std::vector<int> slots_a, slots_b;
  for (const auto &p : ports) {
    slots_a.push_back(ma.slot(p.name));
    slots_b.push_back(mb.slot(p.name));
  }
  auto b_out = matching_outputs(ma, mb);
  SimState sa = ma.initial_state();
  SimState sb = mb.initial_state();
  EquivalenceVerdict v;
  v.mode = CheckMode::Exhaustive;
  const std::uint64_t n = std::uint64_t{1} << bits;
  for (std::uint64_t x = 0; x < n; ++x) {
    std::uint64_t rest = x;
    for (std::size_t i = ports.size(); i-- > 0;) {
      std::uint64_t val = rest & width_mask(ports[i].width);
      rest >>= ports[i].width;
      sa.values[slots_a[i]] = val;
      sb.values[slots_b[i]] = val;
    }
    ma.settle(sa);
    mb.settle(sb);
    if (outputs_differ(ma, sa, sb, b_out)) {
      v.verdict = Verdict::NotEquivalent;
      v.input = decode(ports, x);
      v.bound = std::to_string(x + 1) + " of " + std::to_string(n) + " vectors";
      return v;
    }
  }
  v.verdict = Verdict::Equivalent;
  v.bound = std::to_string(n) + " vectors";
  return v;
}

EquivalenceVerdict comb_propositional(const Design &a, const Design &b) {
  EquivalenceVerdict v;
  v.mode = CheckMode::Propositional;
  Aig g;
  BitBlaster blaster(g);
  std::map<std::string, LitVec> out_a, out_b;
  try {
    out_a = blaster.blast(a);
    out_b = blaster.blast(b);
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::UnsupportedConstruct)
      throw;
    v.verdict = Verdict::Inconclusive;
    v.notes.push_back(std::string("UnsupportedForBlasting: ") + e.what());
    return v;
  }

  // Outputs with matching ring normal forms need no bit-level proof.
  auto poly_a = output_polynomials(a);
  auto poly_b = output_polynomials(b);
  std::size_t discharged = 0;
  Aig::Lit miter = Aig::kFalse;
  for (const auto &[name, bits] : out_a) {
    auto pa = poly_a.find(name);
    auto pb = poly_b.find(name);
    if (pa != poly_a.end() && pb != poly_b.end() && pa->second == pb->second) {
      ++discharged;
      continue;
    }
    const LitVec &other = out_b.at(name);
    for (std::size_t i = 0; i < bits.size(); ++i)
      miter = g.make_or(miter, g.make_xor(bits[i], other[i]));
  }

  Model ma(a);
  auto ports = data_ports(ma);
  unsigned bits = total_bits(ports);
  v.bound = "all 2^" + std::to_string(bits) + " input vectors";
  auto read_inputs = [&](const auto &value_of) {
    Assignment in;
    for (const auto &p : ports) {
      std::uint64_t x = 0;
      auto it = blaster.inputs().find(p.name);
      if (it != blaster.inputs().end())
        for (std::size_t i = 0; i < it->second.size() && i < 64; ++i)
          if (value_of(it->second[i]))
            x |= std::uint64_t{1} << i;
      in[p.name] = BitVal{x, p.width};
    }
    return in;
  };

  if (discharged > 0)
    v.notes.push_back(std::to_string(discharged) +
                      " outputs matched by word-level normal form");
  if (miter == Aig::kFalse) {
    v.verdict = Verdict::Equivalent;
    v.notes.push_back("miter reduced to constant 0 structurally");
    return v;
  }
  if (miter == Aig::kTrue) {
    v.verdict = Verdict::NotEquivalent;
    v.input = read_inputs([](Aig::Lit) { return false; });
    return v;
  }

  // Tseitin encoding of the miter's cone of influence.
  std::vector<int> var(g.num_nodes(), -1);
  std::vector<std::uint32_t> stack = {Aig::node_of(miter)};
  std::vector<std::uint32_t> cone;
  while (!stack.empty()) {
    std::uint32_t n = stack.back();
    stack.pop_back();
    if (n == 0 || var[n] != -1)
      continue;
    var[n] = 0;
    cone.push_back(n);
    if (g.is_and(n)) {
      stack.push_back(Aig::node_of(g.fanin0(n)));
      stack.push_back(Aig::node_of(g.fanin1(n)));
    }
  }
  std::sort(cone.begin(), cone.end());
  SatSolver sat;
  int false_var = sat.new_var();
  sat.add_clause({SatSolver::neg(false_var)});
  for (std::uint32_t n : cone)
    var[n] = sat.new_var();
  var[0] = false_var;
  auto lit = [&](Aig::Lit l) {
    int x = var[Aig::node_of(l)];
    return Aig::is_complemented(l) ? SatSolver::neg(x) : SatSolver::pos(x);
  };
  for (std::uint32_t n : cone) {
    if (!g.is_and(n))
      continue;
    int o = SatSolver::pos(var[n]);
    int x = lit(g.fanin0(n));
    int y = lit(g.fanin1(n));
    sat.add_clause({SatSolver::negate(o), x});
    sat.add_clause({SatSolver::negate(o), y});
    sat.add_clause({o, SatSolver::negate(x), SatSolver::negate(y)});
  }
  sat.add_clause({lit(miter)});
  constexpr std::int64_t kConflictBudget = 5000000;
  switch (sat.solve(kConflictBudget)) {
  case SatSolver::Result::Unsat:
    v.verdict = Verdict::Equivalent;
    break;
  case SatSolver::Result::Sat:
    v.verdict = Verdict::NotEquivalent;
    v.input = read_inputs([&](Aig::Lit l) {
      int x = var[Aig::node_of(l)];
      bool val = x >= 0 && sat.model_value(x);
      return val != Aig::is_complemented(l);
    });
    break;
  case SatSolver::Result::Unknown:
    v.verdict = Verdict::Inconclusive;
    v.notes.push_back("solver conflict budget exhausted");
    break;
  }
  v.notes.push_back(std::to_string(cone.size()) + " AIG nodes, " +
                    std::to_string(sat.conflicts()) + " conflicts");
  return v;
}

// --- sequential -------------------------------------------------------------

struct SeqPair {
  Model ma;
  Model mb;
  std::vector<PortBits> ports;
  std::vector<int> b_out;
  unsigned reset_cycles;

  SeqPair(const Design &a, const Design &b, unsigned rc)
      : ma(a), mb(b), ports(data_ports(ma)), b_out(matching_outputs(ma, mb)),
        reset_cycles(rc) {}

  std::pair<SimState, SimState> reset_states() const {
    SimState sa = ma.initial_state();
    SimState sb = mb.initial_state();
    ma.apply_reset(sa, reset_cycles);
    mb.apply_reset(sb, reset_cycles);
    return {std::move(sa), std::move(sb)};
  }

  // One trace step on both machines; true when the sampled outputs differ.
  bool step(SimState &sa, SimState &sb, const Assignment &in) const {
    ma.set_inputs(sa, in);
    mb.set_inputs(sb, in);
    ma.settle(sa);
    mb.settle(sb);
    ma.clock_edge(sa);
    mb.clock_edge(sb);
    return outputs_differ(ma, sa, sb, b_out);
  }
};

void require_compatible_clocking(const Model &a, const Model &b) {
  const ClockInfo &x = a.clock();
  const ClockInfo &y = b.clock();
  if (x.clock != y.clock || x.clock_posedge != y.clock_posedge ||
      x.reset != y.reset ||
      (x.reset && x.reset_active_high != y.reset_active_high))
    throw Error(ErrorKind::InterfaceMismatch,
                "designs disagree on clock or reset");
}

EquivalenceVerdict seq_bounded(const SeqPair &p, unsigned depth,
                               std::size_t vectors, std::uint64_t seed) {
  EquivalenceVerdict v;
  v.mode = CheckMode::BoundedSequential;
  v.depth = depth;
  unsigned bits = total_bits(p.ports);
  double space = 1;
  bool exhaustive = true;
  for (unsigned i = 0; i < depth; ++i) {
    space *= static_cast<double>(std::uint64_t{1} << std::min(bits, 63u));
    if (bits > 63 || space > static_cast<double>(kMaxExhaustiveSequences)) {
      exhaustive = false;
      break;
    }
  }
  auto [ra, rb] = p.reset_states();

  if (exhaustive) {
    const std::uint64_t n = std::uint64_t{1} << bits;
    std::vector<Assignment> path;
    std::vector<std::pair<SimState, SimState>> frames = {{ra, rb}};
    std::vector<std::uint64_t> next = {0};
    // Depth-first in ascending input order; the first mismatch found is the
    // lexicographically smallest failing prefix.
    while (!next.empty()) {
      std::size_t d = next.size() - 1;
      if (d == depth || next[d] == n) {
        next.pop_back();
        frames.pop_back();
        if (!path.empty())
          path.pop_back();
        continue;
      }
      std::uint64_t x = next[d]++;
      SimState sa = frames[d].first;
      SimState sb = frames[d].second;
      Assignment in = decode(p.ports, x);
      path.push_back(in);
      if (p.step(sa, sb, in)) {
        v.verdict = Verdict::NotEquivalent;
        v.sequence = path;
        v.bound = "exhaustive sequences to depth " + std::to_string(depth);
        return v;
      }
      frames.emplace_back(std::move(sa), std::move(sb));
      next.push_back(0);
    }
    v.verdict = Verdict::Inconclusive;
    v.bound = "equivalent to depth " + std::to_string(depth) +
              " over all input sequences";
    return v;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < vectors; ++k) {
    SimState sa = ra;
    SimState sb = rb;
    std::vector<Assignment> path;
    for (unsigned d = 0; d < depth; ++d) {
      Assignment in;
      for (const auto &port : p.ports)
        in[port.name] = BitVal{rng() & width_mask(port.width), port.width};
      path.push_back(in);
      if (p.step(sa, sb, in)) {
        v.verdict = Verdict::NotEquivalent;
        v.sequence = path;
        v.bound = "random sequences to depth " + std::to_string(depth);
        return v;
      }
    }
  }
  v.verdict = Verdict::Inconclusive;
  v.bound = "equivalent to depth " + std::to_string(depth) + " over " +
            std::to_string(vectors) + " random sequences";
  return v;
}

EquivalenceVerdict seq_product(const SeqPair &p, std::string &why_not) {
  EquivalenceVerdict v;
  v.mode = CheckMode::ProductReachability;
  struct RegField {
    bool in_b;
    int slot;
    unsigned width;
  };
  std::vector<RegField> fields;
  unsigned state_bits = 0;
  for (int s : p.ma.registers()) {
    fields.push_back({false, s, p.ma.width(s)});
    state_bits += p.ma.width(s);
  }
  for (int s : p.mb.registers()) {
    fields.push_back({true, s, p.mb.width(s)});
    state_bits += p.mb.width(s);
  }
  unsigned in_bits = total_bits(p.ports);
  if (state_bits > kMaxProductStateBits) {
    why_not = "joint register space of " + std::to_string(state_bits) +
              " bits exceeds " + std::to_string(kMaxProductStateBits);
    return v;
  }
  if (in_bits > kMaxProductInputBits) {
    why_not = "input alphabet of " + std::to_string(in_bits) +
              " bits exceeds " + std::to_string(kMaxProductInputBits);
    return v;
  }

  auto encode = [&](const SimState &sa, const SimState &sb) {
    std::uint64_t key = 0;
    for (const auto &f : fields) {
      std::uint64_t val = (f.in_b ? sb : sa).values[f.slot];
      key = (key << f.width) | val;
    }
    return key;
  };
  auto load = [&](std::uint64_t key, SimState &sa, SimState &sb) {
    for (auto it = fields.rbegin(); it != fields.rend(); ++it) {
      (it->in_b ? sb : sa).values[it->slot] = key & width_mask(it->width);
      key >>= it->width;
    }
  };

  auto [sa, sb] = p.reset_states();
  std::uint64_t start = encode(sa, sb);
  struct Parent {
    std::uint64_t from;
    std::uint64_t input;
  };
  std::unordered_map<std::uint64_t, Parent> parent;
  parent.emplace(start, Parent{start, 0});
  std::deque<std::uint64_t> queue = {start};
  const std::uint64_t n = std::uint64_t{1} << in_bits;
  SimState wa = sa;
  SimState wb = sb;
  while (!queue.empty()) {
    std::uint64_t key = queue.front();
    queue.pop_front();
    for (std::uint64_t x = 0; x < n; ++x) {
      wa = sa;
      wb = sb;
      load(key, wa, wb);
      Assignment in = decode(p.ports, x);
      if (p.step(wa, wb, in)) {
        std::vector<Assignment> seq = {in};
        for (std::uint64_t k = key; k != start; k = parent.at(k).from)
          seq.push_back(decode(p.ports, parent.at(k).input));
        std::reverse(seq.begin(), seq.end());
        v.verdict = Verdict::NotEquivalent;
        v.sequence = std::move(seq);
        v.bound = std::to_string(parent.size()) + " joint states explored";
        return v;
      }
      std::uint64_t next = encode(wa, wb);
      if (parent.emplace(next, Parent{key, x}).second)
        queue.push_back(next);
    }
  }
  v.verdict = Verdict::Equivalent;
  v.bound = std::to_string(parent.size()) + " reachable joint states";
  return v;
}

} // namespace

std::string EquivalenceVerdict::summary() const {
  std::string s = std::string(verdict_name(verdict)) + " (" +
                  check_mode_name(mode);
  if (mode == CheckMode::BoundedSequential)
    s += ", depth " + std::to_string(depth);
  if (!bound.empty())
    s += ", " + bound;
  return s + ")";
}

nlohmann::ordered_json EquivalenceVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(verdict);
  j["mode"] = check_mode_name(mode);
  if (mode == CheckMode::BoundedSequential)
    j["depth"] = depth;
  j["bound"] = bound;
  if (input) {
    j["counterexample"] = assignment_json(*input);
  } else if (sequence) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &a : *sequence)
      arr.push_back(assignment_json(a));
    j["counterexample"] = std::move(arr);
  } else {
    j["counterexample"] = nullptr;
  }
  j["notes"] = notes;
  return j;
}

std::vector<Assignment> gen_stimulus(const Design &design,
                                     const StimulusStrategy &strategy) {
  Model m(design);
  auto ports = data_ports(m);
  std::vector<Assignment> out;
  if (strategy.kind == StimulusStrategy::Kind::Random) {
    std::mt19937_64 rng(strategy.seed);
    for (std::size_t i = 0; i < strategy.count; ++i) {
      Assignment a;
      for (const auto &p : ports)
        a[p.name] = BitVal{rng() & width_mask(p.width), p.width};
      out.push_back(std::move(a));
    }
    return out;
  }
  unsigned bits = total_bits(ports);
  if (bits > kMaxExhaustiveBits)
    throw Error(ErrorKind::SpaceTooLarge,
                "SpaceTooLarge(" + std::to_string(bits) + " input bits)");
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << bits); ++x)
    out.push_back(decode(ports, x));
  return out;
}

std::vector<std::vector<Assignment>>
gen_sequences(const Design &design, unsigned depth,
              const StimulusStrategy &strategy) {
  if (strategy.kind == StimulusStrategy::Kind::Random) {
    Model m(design);
    auto ports = data_ports(m);
    std::mt19937_64 rng(strategy.seed);
    std::vector<std::vector<Assignment>> out;
    for (std::size_t i = 0; i < strategy.count; ++i) {
      std::vector<Assignment> seq;
      for (unsigned d = 0; d < depth; ++d) {
        Assignment a;
        for (const auto &p : ports)
          a[p.name] = BitVal{rng() & width_mask(p.width), p.width};
        seq.push_back(std::move(a));
      }
      out.push_back(std::move(seq));
    }
    return out;
  }
  std::vector<Assignment> symbols = gen_stimulus(design, strategy);
  double space = 1;
  for (unsigned d = 0; d < depth; ++d)
    space *= static_cast<double>(symbols.size());
  if (space > static_cast<double>(kMaxExhaustiveSequences))
    throw Error(ErrorKind::SpaceTooLarge,
                "SpaceTooLarge(" + std::to_string(symbols.size()) + "^" +
                    std::to_string(depth) + " sequences)");
  std::vector<std::vector<Assignment>> out = {{}};
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<std::vector<Assignment>> grown;
    for (const auto &prefix : out)
      for (const auto &s : symbols) {
        grown.push_back(prefix);
        grown.back().push_back(s);
      }
    out = std::move(grown);
  }
  return out;
}

void require_same_interface(const Design &a, const Design &b) {
  auto describe = [](const Design &d) {
    SignalTable t = SignalTable::build(d);
    std::map<std::string, std::pair<Direction, unsigned>> ports;
    for (const auto &p : d.ports)
      ports[p.name] = {p.direction, t.at(p.name).width};
    return ports;
  };
  auto pa = describe(a);
  auto pb = describe(b);
  for (const auto &[name, info] : pa) {
    auto it = pb.find(name);
    if (it == pb.end())
      throw Error(ErrorKind::InterfaceMismatch,
                  "port '" + name + "' missing from the second design");
    if (it->second.first != info.first)
      throw Error(ErrorKind::InterfaceMismatch,
                  "port '" + name + "' changes direction");
    if (it->second.second != info.second)
      throw Error(ErrorKind::InterfaceMismatch,
                  "port '" + name + "' is " + std::to_string(info.second) +
                      " bits vs " + std::to_string(it->second.second));
  }
  for (const auto &entry : pb)
    if (!pa.count(entry.first))
      throw Error(ErrorKind::InterfaceMismatch,
                  "port '" + entry.first + "' missing from the first design");
}

EquivalenceVerdict check_equiv_comb(const Design &a, const Design &b,
                                    CombMode mode) {
  require_valid(a);
  require_valid(b);
  require_same_interface(a, b);
  if (a.has_clocked_block() || b.has_clocked_block())
    throw Error(ErrorKind::InterfaceMismatch,
                "combinational check given a sequential design");
  if (mode == CombMode::Auto) {
    Model m(a);
    mode = total_bits(data_ports(m)) <= kMaxExhaustiveBits
               ? CombMode::Exhaustive
               : CombMode::Propositional;
  }
  return mode == CombMode::Exhaustive ? comb_exhaustive(a, b)
                                      : comb_propositional(a, b);
}

EquivalenceVerdict check_equiv_seq(const Design &a, const Design &b,
                                   const SeqMode &mode) {
  require_valid(a);
  require_valid(b);
  require_same_interface(a, b);
  SeqPair p(a, b, mode.reset_cycles);
  if (!p.ma.sequential() || !p.mb.sequential())
    throw Error(ErrorKind::InterfaceMismatch,
                "sequential check given a combinational design");
  require_compatible_clocking(p.ma, p.mb);
  if (mode.kind == SeqMode::Kind::Product) {
    std::string why_not;
    EquivalenceVerdict v = seq_product(p, why_not);
    if (why_not.empty())
      return v;
    EquivalenceVerdict fb = seq_bounded(p, mode.depth, mode.vectors, mode.seed);
    fb.notes.insert(fb.notes.begin(),
                    "StateSpaceTooLarge: " + why_not +
                        "; fell back to bounded checking");
    return fb;
  }
  return seq_bounded(p, mode.depth, mode.vectors, mode.seed);
}

EquivalenceVerdict check_equiv(const Design &a, const Design &b) {
  if (a.has_clocked_block() || b.has_clocked_block())
    return check_equiv_seq(a, b);
  return check_equiv_comb(a, b);
}

bool replay_differs(const Design &a, const Design &b,
                    const EquivalenceVerdict &v) {
  if (v.input) {
    Assignment x = eval_comb(a, *v.input);
    Assignment y = eval_comb(b, *v.input);
    for (const auto &[name, val] : x)
      if (y.at(name).bits != val.bits)
        return true;
    return false;
  }
  if (v.sequence) {
    Trace x = simulate(a, *v.sequence);
    Trace y = simulate(b, *v.sequence);
    for (std::size_t i = 0; i < x.steps.size(); ++i)
      for (const auto &[name, val] : x.steps[i].outputs)
        if (y.steps[i].outputs.at(name).bits != val.bits)
          return true;
  }
  return false;
}

} // namespace symrtlo
