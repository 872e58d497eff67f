// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "symrtlo/frontend.hpp"

namespace symrtlo {

using detail::Token;
using detail::TokKind;

namespace {

const std::set<std::string> kUnsupportedKeywords = {
    "generate", "endgenerate", "initial", "function", "endfunction",
    "task",     "endtask",     "integer", "genvar",   "for",
    "while",    "repeat",      "forever", "fork",     "join",
    "casez",    "casex",       "inout",   "real",     "time",
    "supply0",  "supply1",     "tri",     "defparam", "specify",
    "primitive", "always_ff",  "always_comb", "always_latch", "logic",
    "signed",   "assert",      "wait",    "disable",  "event"};

const std::set<std::string> kGatePrimitives = {
    "and", "or", "nand", "nor", "xor", "xnor", "not", "buf"};

class Parser {
public:
  Parser(std::vector<Token> toks, std::string file)
      : toks_(std::move(toks)), file_(std::move(file)) {}

  Design parse_module() {
    Design d;
    const Token &start = peek();
    expect_word("module");
    d.name = expect_ident("module name");
    if (accept_sym("#")) {
      expect_sym("(");
      parse_header_params(d);
      expect_sym(")");
    }
    expect_sym("(");
    if (!check_sym(")"))
      parse_port_list(d);
    expect_sym(")");
    expect_sym(";");
    while (!check_word("endmodule")) {
      if (peek().kind == TokKind::End)
        fail(peek(), "expected 'endmodule' before end of input");
      parse_item(d);
    }
    const Token &end = next();
    d.span = span_of(start, end);
    if (peek().kind != TokKind::End) {
      if (check_word("module"))
        unsupported(peek(), "multiple modules per file are not supported");
      fail(peek(), "unexpected '" + peek().text + "' after 'endmodule'");
    }
    return d;
  }

private:
  // --- token helpers -------------------------------------------------------

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token &next() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  const Token &prev() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

  bool check_sym(const char *s) const {
    return peek().kind == TokKind::Symbol && peek().text == s;
  }
  bool check_word(const char *w) const {
    return peek().kind == TokKind::Ident && peek().text == w;
  }
  bool accept_sym(const char *s) {
    if (!check_sym(s))
      return false;
    next();
    return true;
  }
  bool accept_word(const char *w) {
    if (!check_word(w))
      return false;
    next();
    return true;
  }
  void expect_sym(const char *s) {
    if (!check_sym(s))
      fail(peek(), std::string("expected '") + s + "' but found " +
                       describe(peek()));
    next();
  }
  void expect_word(const char *w) {
    if (!check_word(w))
      fail(peek(), std::string("expected '") + w + "' but found " +
                       describe(peek()));
    next();
  }
  std::string expect_ident(const char *what) {
    const Token &t = peek();
    if (t.kind != TokKind::Ident || is_keyword(t.text)) {
      if (t.kind == TokKind::Ident && kUnsupportedKeywords.count(t.text))
        unsupported(t, "'" + t.text + "' is not supported");
      fail(t, std::string("expected ") + what + " but found " + describe(t));
    }
    next();
    return t.text;
  }

  static bool is_keyword(const std::string &w) {
    static const std::set<std::string> kw = {
        "module", "endmodule", "input",     "output",  "wire",
        "reg",    "parameter", "localparam", "assign", "always",
        "begin",  "end",       "if",        "else",    "case",
        "endcase", "default",  "posedge",   "negedge", "or"};
    return kw.count(w) || kUnsupportedKeywords.count(w);
  }

  static std::string describe(const Token &t) {
    if (t.kind == TokKind::End)
      return "end of input";
    return "'" + t.text + "'";
  }

  SourceSpan span_of(const Token &a, const Token &b) const {
    return SourceSpan{file_, a.line, a.col, b.end_line, b.end_col};
  }
  SourceSpan span_of(const Token &t) const { return span_of(t, t); }

  [[noreturn]] void fail(const Token &t, const std::string &msg) const {
    throw Error(ErrorKind::Parse, msg, span_of(t));
  }
  [[noreturn]] void unsupported(const Token &t, const std::string &msg) const {
    throw Error(ErrorKind::UnsupportedConstruct, msg, span_of(t));
  }

  // --- module header -------------------------------------------------------

  void parse_header_params(Design &d) {
    expect_word("parameter");
    do {
      accept_word("parameter");
      const Token &start = peek();
      Parameter p;
      p.name = expect_ident("parameter name");
      expect_sym("=");
      p.value = parse_expr();
      p.in_header = true;
      p.span = span_of(start, prev());
      d.parameters.push_back(std::move(p));
    } while (accept_sym(","));
  }

  void parse_port_list(Design &d) {
    bool have_header = false;
    Direction dir = Direction::Input;
    NetKind kind = NetKind::Wire;
    bool kind_explicit = false;
    std::optional<Range> range;
    do {
      const Token &start = peek();
      if (check_word("input") || check_word("output")) {
        dir = next().text == "input" ? Direction::Input : Direction::Output;
        kind = NetKind::Wire;
        kind_explicit = false;
        if (check_word("wire") || check_word("reg")) {
          kind = next().text == "wire" ? NetKind::Wire : NetKind::Reg;
          kind_explicit = true;
        }
        if (check_word("signed"))
          unsupported(peek(), "signed ports are not supported");
        range.reset();
        if (check_sym("["))
          range = parse_range();
        have_header = true;
      } else if (check_word("inout")) {
        unsupported(peek(), "inout ports are not supported");
      } else if (!have_header) {
        if (peek().kind == TokKind::Ident && !is_keyword(peek().text))
          unsupported(peek(),
                      "non-ANSI port lists are not supported; declare "
                      "direction in the header");
        fail(peek(), "expected port declaration but found " +
                         describe(peek()));
      }
      Port p;
      p.direction = dir;
      p.kind = kind;
      p.kind_explicit = kind_explicit;
      p.range = range;
      p.name = expect_ident("port name");
      if (dir == Direction::Input && kind == NetKind::Reg)
        fail(start, "input port '" + p.name + "' cannot be a reg");
      p.span = span_of(start, prev());
      d.ports.push_back(std::move(p));
    } while (accept_sym(","));
  }

  Range parse_range() {
    expect_sym("[");
    Range r;
    r.msb = parse_expr();
    expect_sym(":");
    r.lsb = parse_expr();
    expect_sym("]");
    return r;
  }

  // --- module items --------------------------------------------------------

  void parse_item(Design &d) {
    const Token &t = peek();
    if (t.kind != TokKind::Ident)
      fail(t, "expected module item but found " + describe(t));
    const std::string &w = t.text;
    if (w == "parameter" || w == "localparam") {
      next();
      bool local = w == "localparam";
      if (check_sym("["))
        unsupported(peek(), "ranged parameters are not supported");
      do {
        const Token &start = peek();
        Parameter p;
        p.name = expect_ident("parameter name");
        expect_sym("=");
        p.value = parse_expr();
        p.local = local;
        p.span = span_of(start, prev());
        d.parameters.push_back(std::move(p));
      } while (accept_sym(","));
      expect_sym(";");
    } else if (w == "wire" || w == "reg") {
      next();
      Decl decl;
      decl.kind = w == "wire" ? NetKind::Wire : NetKind::Reg;
      if (check_word("signed"))
        unsupported(peek(), "signed declarations are not supported");
      if (check_sym("["))
        decl.range = parse_range();
      do {
        decl.names.push_back(expect_ident("net name"));
        if (check_sym("["))
          unsupported(peek(), "memories (unpacked arrays) are not supported");
        if (check_sym("="))
          unsupported(peek(),
                      "declaration assignments are not supported; use a "
                      "continuous assign");
      } while (accept_sym(","));
      expect_sym(";");
      decl.span = span_of(t, prev());
      d.decls.push_back(std::move(decl));
    } else if (w == "assign") {
      next();
      do {
        const Token &start = peek();
        ContinuousAssign a;
        a.target = expect_ident("assignment target");
        if (check_sym("["))
          unsupported(peek(), "part-select assignment targets are not "
                              "supported");
        expect_sym("=");
        a.value = parse_expr();
        a.span = span_of(start, prev());
        d.items.emplace_back(std::move(a));
      } while (accept_sym(","));
      expect_sym(";");
    } else if (w == "always") {
      d.items.emplace_back(parse_always());
    } else if (w == "input" || w == "output") {
      unsupported(t, "port declarations in the module body are not supported");
    } else if (kUnsupportedKeywords.count(w) || kGatePrimitives.count(w)) {
      unsupported(t, "'" + w + "' is not supported");
    } else if (!is_keyword(w) && peek(1).kind == TokKind::Ident) {
      unsupported(t, "module instantiation is not supported");
    } else if (!is_keyword(w) && peek(1).kind == TokKind::Symbol &&
               peek(1).text == "#") {
      unsupported(t, "module instantiation is not supported");
    } else {
      fail(t, "expected module item but found " + describe(t));
    }
  }

  AlwaysBlock parse_always() {
    const Token &start = next(); // always
    AlwaysBlock blk;
    expect_sym("@");
    if (accept_sym("*")) {
      blk.sensitivity.kind = Sensitivity::Kind::Star;
    } else {
      expect_sym("(");
      if (accept_sym("*")) {
        blk.sensitivity.kind = Sensitivity::Kind::Star;
      } else if (check_word("posedge") || check_word("negedge")) {
        blk.sensitivity.kind = Sensitivity::Kind::Edges;
        do {
          if (!(check_word("posedge") || check_word("negedge")))
            unsupported(peek(), "mixed edge and level sensitivity lists are "
                                "not supported");
          bool pos = next().text == "posedge";
          blk.sensitivity.edges.push_back({pos, expect_ident("signal")});
        } while (accept_word("or") || accept_sym(","));
      } else {
        blk.sensitivity.kind = Sensitivity::Kind::List;
        do {
          if (check_word("posedge") || check_word("negedge"))
            unsupported(peek(), "mixed edge and level sensitivity lists are "
                                "not supported");
          blk.sensitivity.signals.push_back(expect_ident("signal"));
        } while (accept_word("or") || accept_sym(","));
      }
      expect_sym(")");
    }
    blk.body = parse_stmt_as_list();
    blk.span = span_of(start, prev());
    return blk;
  }

  // --- statements ----------------------------------------------------------

  StmtList parse_stmt_as_list() {
    StmtList out;
    if (check_word("begin")) {
      next();
      if (accept_sym(":"))
        unsupported(prev(), "named blocks are not supported");
      while (!check_word("end")) {
        if (peek().kind == TokKind::End)
          fail(peek(), "expected 'end' before end of input");
        auto inner = parse_stmt_as_list();
        out.insert(out.end(), inner.begin(), inner.end());
      }
      next();
      return out;
    }
    if (accept_sym(";"))
      return out;
    out.push_back(parse_stmt());
    return out;
  }

  StmtPtr parse_stmt() {
    const Token &start = peek();
    if (accept_word("if")) {
      expect_sym("(");
      ExprPtr cond = parse_expr();
      expect_sym(")");
      StmtList then_body = parse_stmt_as_list();
      std::optional<StmtList> else_body;
      if (accept_word("else"))
        else_body = parse_stmt_as_list();
      return make_if(std::move(cond), std::move(then_body),
                     std::move(else_body), span_of(start, prev()));
    }
    if (accept_word("case")) {
      expect_sym("(");
      ExprPtr subject = parse_expr();
      expect_sym(")");
      std::vector<CaseArm> arms;
      bool seen_default = false;
      while (!check_word("endcase")) {
        if (peek().kind == TokKind::End)
          fail(peek(), "expected 'endcase' before end of input");
        CaseArm arm;
        if (check_word("default")) {
          if (seen_default)
            fail(peek(), "duplicate default arm");
          seen_default = true;
          next();
          accept_sym(":");
        } else {
          do {
            arm.labels.push_back(parse_expr());
          } while (accept_sym(","));
          expect_sym(":");
        }
        arm.body = parse_stmt_as_list();
        arms.push_back(std::move(arm));
      }
      next();
      return make_case(std::move(subject), std::move(arms),
                       span_of(start, prev()));
    }
    if (check_word("casez") || check_word("casex"))
      unsupported(peek(), "'" + peek().text + "' is not supported");
    if (peek().kind == TokKind::Ident && !is_keyword(peek().text)) {
      std::string target = next().text;
      if (check_sym("["))
        unsupported(peek(), "part-select assignment targets are not supported");
      StmtKind kind;
      if (accept_sym("="))
        kind = StmtKind::Blocking;
      else if (accept_sym("<="))
        kind = StmtKind::Nonblocking;
      else
        fail(peek(), "expected '=' or '<=' but found " + describe(peek()));
      ExprPtr value = parse_expr();
      expect_sym(";");
      return make_assign(kind, std::move(target), std::move(value),
                         span_of(start, prev()));
    }
    if (peek().kind == TokKind::Ident && kUnsupportedKeywords.count(peek().text))
      unsupported(peek(), "'" + peek().text + "' is not supported");
    if (check_sym("{"))
      unsupported(peek(), "concatenation targets are not supported");
    fail(peek(), "expected statement but found " + describe(peek()));
  }

  // --- expressions ---------------------------------------------------------

  ExprPtr parse_expr() { return parse_ternary(); }

  ExprPtr parse_ternary() {
    const Token &start = peek();
    ExprPtr cond = parse_binary(0);
    if (!accept_sym("?"))
      return cond;
    ExprPtr t = parse_ternary();
    expect_sym(":");
    ExprPtr e = parse_ternary();
    return make_ternary(std::move(cond), std::move(t), std::move(e),
                        span_of(start, prev()));
  }

  struct OpInfo {
    int prec;
    BinaryOp op;
  };

  std::optional<OpInfo> binary_info(const Token &t) const {
    if (t.kind != TokKind::Symbol)
      return std::nullopt;
    static const std::pair<const char *, OpInfo> table[] = {
        {"||", {1, BinaryOp::LogicalOr}}, {"&&", {2, BinaryOp::LogicalAnd}},
        {"|", {3, BinaryOp::BitOr}},      {"^", {4, BinaryOp::BitXor}},
        {"&", {5, BinaryOp::BitAnd}},     {"==", {6, BinaryOp::Eq}},
        {"!=", {6, BinaryOp::Ne}},        {"<", {7, BinaryOp::Lt}},
        {"<=", {7, BinaryOp::Le}},        {">", {7, BinaryOp::Gt}},
        {">=", {7, BinaryOp::Ge}},        {"<<", {8, BinaryOp::Shl}},
        {">>", {8, BinaryOp::Shr}},       {"+", {9, BinaryOp::Add}},
        {"-", {9, BinaryOp::Sub}},        {"*", {10, BinaryOp::Mul}},
        {"/", {10, BinaryOp::Div}},       {"%", {10, BinaryOp::Mod}},
    };
    for (const auto &[text, info] : table)
      if (t.text == text)
        return info;
    static const std::set<std::string> unsupported_ops = {
        "===", "!==", "<<<", ">>>", "~^", "^~", "**"};
    if (unsupported_ops.count(t.text))
      const_cast<Parser *>(this)->unsupported(
          t, "operator '" + t.text + "' is not supported");
    return std::nullopt;
  }

  ExprPtr parse_binary(int min_prec) {
    const Token &start = peek();
    ExprPtr lhs = parse_unary();
    while (true) {
      auto info = binary_info(peek());
      if (!info || info->prec < min_prec)
        break;
      next();
      ExprPtr rhs = parse_binary(info->prec + 1);
      lhs = make_binary(info->op, std::move(lhs), std::move(rhs),
                        span_of(start, prev()));
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token &t = peek();
    if (t.kind == TokKind::Symbol) {
      std::optional<UnaryOp> op;
      if (t.text == "~")
        op = UnaryOp::BitNot;
      else if (t.text == "!")
        op = UnaryOp::LogicalNot;
      else if (t.text == "-")
        op = UnaryOp::Negate;
      else if (t.text == "&")
        op = UnaryOp::ReduceAnd;
      else if (t.text == "|")
        op = UnaryOp::ReduceOr;
      else if (t.text == "^")
        op = UnaryOp::ReduceXor;
      else if (t.text == "~&" || t.text == "~|" || t.text == "~^" ||
               t.text == "^~")
        unsupported(t, "operator '" + t.text + "' is not supported");
      if (t.text == "+") {
        next();
        return parse_unary();
      }
      if (op) {
        next();
        ExprPtr operand = parse_unary();
        return make_unary(*op, std::move(operand), span_of(t, prev()));
      }
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token &t = peek();
    if (t.kind == TokKind::Number) {
      next();
      return parse_number(t);
    }
    if (accept_sym("(")) {
      ExprPtr e = parse_expr();
      expect_sym(")");
      return e;
    }
    if (check_sym("{"))
      unsupported(t, "concatenation is not supported");
    if (t.kind == TokKind::Ident && !is_keyword(t.text)) {
      next();
      if (t.text[0] == '$')
        unsupported(t, "system functions are not supported");
      if (check_sym("(")) {
        unsupported(t, "function calls are not supported");
      }
      if (accept_sym("[")) {
        ExprPtr first = parse_expr();
        if (accept_sym(":")) {
          ExprPtr second = parse_expr();
          expect_sym("]");
          return make_slice(t.text, std::move(first), std::move(second),
                            span_of(t, prev()));
        }
        if (check_sym("+:") || check_sym("-:"))
          unsupported(peek(), "indexed part-selects are not supported");
        expect_sym("]");
        return make_index(t.text, std::move(first), span_of(t, prev()));
      }
      return make_ref(t.text, span_of(t));
    }
    if (t.kind == TokKind::Ident && kUnsupportedKeywords.count(t.text))
      unsupported(t, "'" + t.text + "' is not supported");
    fail(t, "expected expression but found " + describe(t));
  }

  ExprPtr parse_number(const Token &t) {
    std::string text;
    for (char c : t.text)
      if (c != '_' && c != ' ' && c != '\t')
        text.push_back(c);
    auto quote = text.find('\'');
    SourceSpan sp = span_of(t);
    if (quote == std::string::npos) {
      std::uint64_t v = 0;
      for (char c : text) {
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > 0xFFFFFFFFull)
          unsupported(t, "unsized literal does not fit in 32 bits");
      }
      return make_unsized(v, sp);
    }
    unsigned width = kUnsizedWidth;
    bool sized = quote != 0;
    if (sized) {
      unsigned long long w = std::stoull(text.substr(0, quote));
      if (w == 0)
        fail(t, "literal width must be at least 1");
      if (w > kMaxWidth)
        unsupported(t, "literal wider than 64 bits is not supported");
      width = static_cast<unsigned>(w);
    }
    char base = static_cast<char>(std::tolower(text[quote + 1]));
    unsigned radix = 0;
    switch (base) {
    case 'b': radix = 2; break;
    case 'o': radix = 8; break;
    case 'd': radix = 10; break;
    case 'h': radix = 16; break;
    default: fail(t, std::string("unknown literal base '") + base + "'");
    }
    std::uint64_t v = 0;
    for (std::size_t i = quote + 2; i < text.size(); ++i) {
      char c = static_cast<char>(std::tolower(text[i]));
      if (c == 'x' || c == 'z' || c == '?')
        unsupported(t, "x/z literal digits are not supported (two-valued "
                       "semantics)");
      unsigned digit = std::isdigit(static_cast<unsigned char>(c))
                           ? static_cast<unsigned>(c - '0')
                           : static_cast<unsigned>(c - 'a' + 10);
      if (digit >= radix)
        fail(t, "digit out of range for literal base");
      std::uint64_t nv = v * radix + digit;
      if (nv / radix != v && v != 0)
        unsupported(t, "literal does not fit in 64 bits");
      v = nv;
    }
    if (width < 64 && (v >> width) != 0)
      fail(t, "literal value does not fit in its declared width");
    return make_const(v, width, sized, base, sp);
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

} // namespace

Design parse(std::string_view source, const std::string &file) {
  Parser p(detail::tokenize(source, file), file);
  return p.parse_module();
}

Design parse_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

} // namespace symrtlo
