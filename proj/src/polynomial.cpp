// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "polynomial.hpp"

#include <algorithm>

#include "symrtlo/elaborate.hpp"
#include "symrtlo/eval.hpp"

namespace symrtlo {

namespace {

// Terms beyond this size are not worth normalizing.
constexpr std::size_t kMaxTerms = 4096;

} // namespace

void reduce(Polynomial &p, unsigned w) {
  std::uint64_t m = width_mask(w);
  for (auto it = p.begin(); it != p.end();) {
    it->second &= m;
    it = it->second == 0 ? p.erase(it) : std::next(it);
  }
}

Polynomial poly_add(const Polynomial &a, const Polynomial &b, bool subtract) {
  Polynomial r = a;
  for (const auto &[mono, c] : b)
    r[mono] += subtract ? (~c + 1) : c;
  return r;
}

namespace {

std::optional<Polynomial> mul(const Polynomial &a, const Polynomial &b) {
  if (a.size() * b.size() > kMaxTerms)
    return std::nullopt;
  Polynomial r;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b) {
      Monomial m;
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(),
                 std::back_inserter(m));
      r[m] += ca * cb;
    }
  return r;
}

} // namespace

RingNormalizer::RingNormalizer(const Design &d) : table_(SignalTable::build(d)) {
  for (const auto &item : d.items)
    if (const auto *ca = std::get_if<ContinuousAssign>(&item))
      driver_[ca->target] = ca->value.get();
}

std::optional<Polynomial> RingNormalizer::signal(const std::string &name) {
  auto memo = memo_.find(name);
  if (memo != memo_.end())
    return memo->second;
  std::optional<Polynomial> result;
  auto it = driver_.find(name);
  if (it != driver_.end() && !active_.count(name)) {
    active_.insert(name);
    result = expr(*it->second, table_.at(name).width);
    active_.erase(name);
  }
  memo_[name] = result;
  return result;
}

std::optional<Polynomial> RingNormalizer::expr(const Expr &e, unsigned w) {
  std::optional<Polynomial> r;
  switch (e.kind) {
  case ExprKind::Const:
    r = Polynomial{{Monomial{}, e.value}};
    break;
  case ExprKind::Ref: {
    const SignalInfo &s = table_.at(e.name);
    if (s.kind == SignalKind::Input)
      r = Polynomial{{Monomial{e.name}, 1}};
    else if (s.kind == SignalKind::Parameter)
      r = Polynomial{{Monomial{}, s.param_value}};
    else if (s.width >= w)
      r = signal(e.name);
    break;
  }
  case ExprKind::Unary:
    if (e.unary_op == UnaryOp::Negate && table_.width_of(e) >= w)
      if (auto a = expr(*e.operands[0], w))
        r = poly_add(Polynomial{}, *a, true);
    break;
  case ExprKind::Binary: {
    BinaryOp op = e.binary_op;
    if (op != BinaryOp::Add && op != BinaryOp::Sub && op != BinaryOp::Mul)
      break;
    if (table_.width_of(e) < w)
      break;
    auto a = expr(*e.operands[0], w);
    if (!a)
      break;
    auto b = expr(*e.operands[1], w);
    if (!b)
      break;
    r = op == BinaryOp::Mul ? mul(*a, *b)
                            : poly_add(*a, *b, op == BinaryOp::Sub);
    break;
  }
  default:
    break;
  }
  if (r)
    reduce(*r, w);
  return r;
}

std::map<std::string, Polynomial> output_polynomials(const Design &design) {
  RingNormalizer n(design);
  std::map<std::string, Polynomial> out;
  for (const auto &name : n.table().outputs())
    if (auto p = n.signal(name))
      out[name] = *p;
  return out;
}

} // namespace symrtlo
