// Copyright (c) 2026 The symrtlo Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <array>
#include <cctype>

#include "symrtlo/error.hpp"

namespace symrtlo::detail {

namespace {

// Longest symbols first.
constexpr std::array<std::string_view, 16> kMultiSymbols = {
    "===", "!==", "<<<", ">>>", "==", "!=", "<=", ">=", "&&",
    "||",  "<<",  ">>",  "~&",  "~|", "~^", "^~"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

} // namespace

std::vector<Token> tokenize(std::string_view src, const std::string &file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto fail = [&](ErrorKind kind, const std::string &msg) {
    throw Error(kind, msg, SourceSpan{file, line, col, line, col});
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/'))
        advance(1);
      if (i + 1 >= src.size())
        fail(ErrorKind::Parse, "unterminated block comment");
      advance(2);
      continue;
    }
    if (c == '`')
      fail(ErrorKind::UnsupportedConstruct,
           "preprocessor directives are not supported");

    Token tok;
    tok.line = line;
    tok.col = col;
    std::size_t start = i;

    if (ident_start(c)) {
      while (i < src.size() && ident_char(src[i]))
        advance(1);
      tok.kind = TokKind::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
      // [size] ['base] digits, with optional underscores
      while (i < src.size() &&
             (std::isdigit(static_cast<unsigned char>(src[i])) ||
              src[i] == '_'))
        advance(1);
      std::size_t save = i;
      int save_line = line, save_col = col;
      while (i < src.size() && (src[i] == ' ' || src[i] == '\t'))
        advance(1);
      if (i < src.size() && src[i] == '\'') {
        advance(1);
        if (i < src.size() && (src[i] == 's' || src[i] == 'S'))
          fail(ErrorKind::UnsupportedConstruct,
               "signed literals are not supported");
        if (i >= src.size() || !std::isalpha(static_cast<unsigned char>(src[i])))
          fail(ErrorKind::Parse, "malformed based literal");
        advance(1);
        while (i < src.size() && (src[i] == ' ' || src[i] == '\t'))
          advance(1);
        std::size_t digits = i;
        while (i < src.size() &&
               (std::isxdigit(static_cast<unsigned char>(src[i])) ||
                src[i] == '_' || src[i] == 'x' || src[i] == 'X' ||
                src[i] == 'z' || src[i] == 'Z' || src[i] == '?'))
          advance(1);
        if (digits == i)
          fail(ErrorKind::Parse, "based literal without digits");
      } else {
        i = save;
        line = save_line;
        col = save_col;
      }
      tok.kind = TokKind::Number;
    } else {
      std::string_view rest = src.substr(i);
      std::size_t len = 1;
      for (auto sym : kMultiSymbols) {
        if (rest.substr(0, sym.size()) == sym) {
          len = sym.size();
          break;
        }
      }
      static const std::string_view kSingles = "()[]{};:,#@=+-*/%<>!~&|^?.";
      if (len == 1 && kSingles.find(c) == std::string_view::npos) {
        if (c == '\\')
          fail(ErrorKind::UnsupportedConstruct,
               "escaped identifiers are not supported");
        fail(ErrorKind::Parse, std::string("unexpected character '") + c + "'");
      }
      advance(len);
      tok.kind = TokKind::Symbol;
    }
    tok.text = std::string(src.substr(start, i - start));
    tok.end_line = line;
    tok.end_col = col > 1 ? col - 1 : 1;
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = TokKind::End;
  end.line = end.end_line = line;
  end.col = end.end_col = col;
  out.push_back(end);
  return out;
}

} // namespace symrtlo::detail
