// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "bitblast.hpp"

#include <algorithm>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/error.hpp"
#include "symrtlo/sim.hpp"

namespace symrtlo {

namespace {

using Lit = Aig::Lit;
using Env = std::map<std::string, LitVec>;

LitVec fit(LitVec v, unsigned width) {
  v.resize(width, Aig::kFalse);
  return v;
}

LitVec constant(std::uint64_t value, unsigned width) {
  LitVec v(width, Aig::kFalse);
  for (unsigned i = 0; i < width && i < 64; ++i)
    if ((value >> i) & 1)
      v[i] = Aig::kTrue;
  return v;
}

Lit any(Aig &g, const LitVec &v) {
  Lit r = Aig::kFalse;
  for (Lit l : v)
    r = g.make_or(r, l);
  return r;
}

// Sum bits plus the final carry.
std::pair<LitVec, Lit> add_carry(Aig &g, const LitVec &a, const LitVec &b,
                                 Lit c) {
  LitVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Lit x = g.make_xor(a[i], b[i]);
    s[i] = g.make_xor(x, c);
    c = g.make_or(g.make_and(a[i], b[i]), g.make_and(c, x));
  }
  return {s, c};
}

LitVec invert(const LitVec &v) {
  LitVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = Aig::negate(v[i]);
  return r;
}

Lit ult(Aig &g, const LitVec &a, const LitVec &b) {
  // a - b borrows exactly when a < b.
  return Aig::negate(add_carry(g, a, invert(b), Aig::kTrue).second);
}

Lit eq(Aig &g, const LitVec &a, const LitVec &b) {
  Lit r = Aig::kTrue;
  for (std::size_t i = 0; i < a.size(); ++i)
    r = g.make_and(r, g.make_xnor(a[i], b[i]));
  return r;
}

LitVec mux(Aig &g, Lit sel, const LitVec &t, const LitVec &f) {
  LitVec r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    r[i] = g.make_mux(sel, t[i], f[i]);
  return r;
}

LitVec shift(Aig &g, const LitVec &a, const LitVec &amount, bool left) {
  const std::size_t w = a.size();
  LitVec r = a;
  Lit overflow = Aig::kFalse;
  for (std::size_t k = 0; k < amount.size(); ++k) {
    if (k >= 63 || (std::size_t{1} << k) >= w) {
      overflow = g.make_or(overflow, amount[k]);
      continue;
    }
    std::size_t d = std::size_t{1} << k;
    LitVec s(w, Aig::kFalse);
    for (std::size_t i = 0; i < w; ++i) {
      if (left && i >= d)
        s[i] = r[i - d];
      else if (!left && i + d < w)
        s[i] = r[i + d];
    }
    r = mux(g, amount[k], s, r);
  }
  return mux(g, overflow, LitVec(w, Aig::kFalse), r);
}

class Blaster {
public:
  Blaster(Aig &g, const Design &d, std::map<std::string, LitVec> &inputs)
      : g_(g), design_(d), table_(SignalTable::build(d)), inputs_(inputs) {}

  std::map<std::string, LitVec> run() {
    if (design_.has_clocked_block())
      throw Error(ErrorKind::UnsupportedConstruct,
                  "bit-blasting needs a combinational design");
    Env env;
    for (const auto &name : table_.order()) {
      const SignalInfo &s = table_.at(name);
      if (s.kind == SignalKind::Input) {
        auto it = inputs_.find(name);
        if (it == inputs_.end()) {
          LitVec v(s.width);
          for (auto &l : v)
            l = g_.make_input();
          it = inputs_.emplace(name, std::move(v)).first;
        }
        env[name] = fit(it->second, s.width);
      } else if (s.kind == SignalKind::Parameter) {
        env[name] = constant(s.param_value, s.width);
      } else {
        env[name] = LitVec(s.width, Aig::kFalse);
      }
    }
    for (const Process &p : schedule_processes(design_)) {
      const ModuleItem &item = design_.items[p.item_index];
      if (const auto *ca = std::get_if<ContinuousAssign>(&item)) {
        env[ca->target] = fit(eval(*ca->value, env), table_.at(ca->target).width);
      } else {
        const auto &blk = std::get<AlwaysBlock>(item);
        for (const auto &w : p.writes)
          env[w] = LitVec(table_.at(w).width, Aig::kFalse);
        exec(blk.body, env);
      }
    }
    std::map<std::string, LitVec> out;
    for (const auto &name : table_.outputs())
      out[name] = env.at(name);
    return out;
  }

private:
  LitVec eval(const Expr &e, const Env &env) {
    switch (e.kind) {
    case ExprKind::Const:
      return constant(e.value, e.width);
    case ExprKind::Ref:
      return env.at(e.name);
    case ExprKind::Index: {
      const SignalInfo &s = table_.at(e.name);
      const LitVec &v = env.at(e.name);
      if (s.kind == SignalKind::Parameter || is_const(*e.operands[0])) {
        std::int64_t pos =
            static_cast<std::int64_t>(table_.const_value(*e.operands[0])) - s.lsb;
        if (pos < 0 || pos >= static_cast<std::int64_t>(v.size()))
          return {Aig::kFalse};
        return {v[static_cast<std::size_t>(pos)]};
      }
      LitVec idx = eval(*e.operands[0], env);
      Lit r = Aig::kFalse;
      for (std::size_t p = 0; p < v.size(); ++p) {
        std::uint64_t at = p + static_cast<std::uint64_t>(s.lsb);
        if (idx.size() < 64 && at >> idx.size())
          continue;
        r = g_.make_or(r, g_.make_and(eq(g_, idx, constant(at, idx.size())), v[p]));
      }
      return {r};
    }
    case ExprKind::Slice: {
      const SignalInfo &s = table_.at(e.name);
      const LitVec &v = env.at(e.name);
      auto msb = static_cast<std::int64_t>(table_.const_value(*e.operands[0]));
      auto lsb = static_cast<std::int64_t>(table_.const_value(*e.operands[1]));
      LitVec r(static_cast<std::size_t>(msb - lsb + 1), Aig::kFalse);
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::int64_t p = lsb - s.lsb + static_cast<std::int64_t>(i);
        if (p >= 0 && p < static_cast<std::int64_t>(v.size()))
          r[i] = v[static_cast<std::size_t>(p)];
      }
      return r;
    }
    case ExprKind::Unary: {
      LitVec a = eval(*e.operands[0], env);
      switch (e.unary_op) {
      case UnaryOp::BitNot:
        return invert(a);
      case UnaryOp::Negate:
        return bb_add(g_, invert(a), LitVec(a.size(), Aig::kFalse), Aig::kTrue);
      case UnaryOp::LogicalNot:
        return {Aig::negate(any(g_, a))};
      case UnaryOp::ReduceOr:
        return {any(g_, a)};
      case UnaryOp::ReduceAnd: {
        Lit r = Aig::kTrue;
        for (Lit l : a)
          r = g_.make_and(r, l);
        return {r};
      }
      case UnaryOp::ReduceXor: {
        Lit r = Aig::kFalse;
        for (Lit l : a)
          r = g_.make_xor(r, l);
        return {r};
      }
      }
      break;
    }
    case ExprKind::Binary:
      return binary(e.binary_op, eval(*e.operands[0], env),
                    eval(*e.operands[1], env));
    case ExprKind::Ternary: {
      Lit c = any(g_, eval(*e.operands[0], env));
      LitVec t = eval(*e.operands[1], env);
      LitVec f = eval(*e.operands[2], env);
      std::size_t w = std::max(t.size(), f.size());
      return mux(g_, c, fit(t, static_cast<unsigned>(w)),
                 fit(f, static_cast<unsigned>(w)));
    }
    }
    throw Error(ErrorKind::Internal, "unhandled expression in bit-blaster");
  }

  LitVec binary(BinaryOp op, LitVec a, LitVec b) {
    if (op == BinaryOp::Shl || op == BinaryOp::Shr)
      return shift(g_, a, b, op == BinaryOp::Shl);
    if (op == BinaryOp::LogicalAnd)
      return {g_.make_and(any(g_, a), any(g_, b))};
    if (op == BinaryOp::LogicalOr)
      return {g_.make_or(any(g_, a), any(g_, b))};
    auto w = static_cast<unsigned>(std::max(a.size(), b.size()));
    a = fit(std::move(a), w);
    b = fit(std::move(b), w);
    switch (op) {
    case BinaryOp::Add:
      return bb_add(g_, a, b, Aig::kFalse);
    case BinaryOp::Sub:
      return bb_add(g_, a, invert(b), Aig::kTrue);
    case BinaryOp::Mul:
      return bb_mul(g_, a, b);
    case BinaryOp::Div:
      return bb_divmod(g_, a, b).first;
    case BinaryOp::Mod:
      return bb_divmod(g_, a, b).second;
    case BinaryOp::BitAnd:
    case BinaryOp::BitOr:
    case BinaryOp::BitXor: {
      LitVec r(w);
      for (unsigned i = 0; i < w; ++i)
        r[i] = op == BinaryOp::BitAnd  ? g_.make_and(a[i], b[i])
               : op == BinaryOp::BitOr ? g_.make_or(a[i], b[i])
                                       : g_.make_xor(a[i], b[i]);
      return r;
    }
    case BinaryOp::Eq:
      return {eq(g_, a, b)};
    case BinaryOp::Ne:
      return {Aig::negate(eq(g_, a, b))};
    case BinaryOp::Lt:
      return {ult(g_, a, b)};
    case BinaryOp::Gt:
      return {ult(g_, b, a)};
    case BinaryOp::Le:
      return {Aig::negate(ult(g_, b, a))};
    case BinaryOp::Ge:
      return {Aig::negate(ult(g_, a, b))};
    default:
      break;
    }
    throw Error(ErrorKind::Internal, "unhandled operator in bit-blaster");
  }

  void merge(Lit sel, const Env &t, Env &f) {
    for (auto &[name, bits] : f) {
      const LitVec &tb = t.at(name);
      if (tb != bits)
        bits = mux(g_, sel, tb, bits);
    }
  }

  void exec(const StmtList &body, Env &env) {
    for (const auto &sp : body) {
      const Stmt &s = *sp;
      switch (s.kind) {
      case StmtKind::Blocking:
      case StmtKind::Nonblocking:
        env[s.target] = fit(eval(*s.value, env), table_.at(s.target).width);
        break;
      case StmtKind::If: {
        Lit c = any(g_, eval(*s.cond, env));
        Env t = env;
        exec(s.then_body, t);
        exec(s.else_body, env);
        merge(c, t, env);
        break;
      }
      case StmtKind::Case: {
        LitVec subject = eval(*s.subject, env);
        // Priority order: build from the fallback up to the first arm.
        std::vector<std::pair<Lit, const CaseArm *>> guarded;
        const CaseArm *fallback = nullptr;
        for (const auto &arm : s.arms) {
          if (arm.is_default()) {
            fallback = &arm;
            continue;
          }
          Lit m = Aig::kFalse;
          for (const auto &l : arm.labels) {
            LitVec lv = eval(*l, env);
            auto w = static_cast<unsigned>(std::max(lv.size(), subject.size()));
            m = g_.make_or(m, eq(g_, fit(lv, w), fit(subject, w)));
          }
          guarded.emplace_back(m, &arm);
        }
        Env result = env;
        if (fallback)
          exec(fallback->body, result);
        for (auto it = guarded.rbegin(); it != guarded.rend(); ++it) {
          Env taken = env;
          exec(it->second->body, taken);
          merge(it->first, taken, result);
        }
        env = std::move(result);
        break;
      }
      }
    }
  }

  Aig &g_;
  const Design &design_;
  SignalTable table_;
  std::map<std::string, LitVec> &inputs_;
};

} // namespace

LitVec bb_add(Aig &g, const LitVec &a, const LitVec &b, Lit carry_in) {
  return add_carry(g, a, b, carry_in).first;
}

LitVec bb_mul(Aig &g, LitVec a, LitVec b) {
  // Canonical operand order so a*b and b*a hash to the same structure.
  if (b < a)
    std::swap(a, b);
  const std::size_t w = a.size();
  LitVec acc(w, Aig::kFalse);
  for (std::size_t i = 0; i < w; ++i) {
    if (b[i] == Aig::kFalse)
      continue;
    LitVec row(w, Aig::kFalse);
    for (std::size_t j = 0; j + i < w; ++j)
      row[j + i] = g.make_and(a[j], b[i]);
    acc = bb_add(g, acc, row, Aig::kFalse);
  }
  return acc;
}

std::pair<LitVec, LitVec> bb_divmod(Aig &g, const LitVec &a, const LitVec &b) {
  const std::size_t w = a.size();
  LitVec bx = b;
  bx.push_back(Aig::kFalse);
  LitVec rem(w + 1, Aig::kFalse);
  LitVec q(w, Aig::kFalse);
  for (std::size_t k = w; k-- > 0;) {
    LitVec shifted(w + 1);
    shifted[0] = a[k];
    for (std::size_t i = 1; i <= w; ++i)
      shifted[i] = rem[i - 1];
    auto [diff, no_borrow] = add_carry(g, shifted, invert(bx), Aig::kTrue);
    q[k] = no_borrow;
    rem = mux(g, no_borrow, diff, shifted);
  }
  Lit zero = Aig::negate(any(g, b));
  LitVec z(w, Aig::kFalse);
  rem.resize(w);
  return {mux(g, zero, z, q), mux(g, zero, z, rem)};
}

std::map<std::string, LitVec> BitBlaster::blast(const Design &design) {
  return Blaster(aig_, design, inputs_).run();
}

} // namespace symrtlo
