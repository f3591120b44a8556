#pragma once

// Recursive-descent parser for the small arithmetic language shared by the
// CLI, presentation files and matrix files:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := power ([ '*' | '/' ] power)*     juxtaposition means '*'
//   power   := primary ['^' integer]
//   primary := integer | identifier | '(' expr ')'
//
// Division is only allowed by an integer literal. The parser is generic over
// a builder that gives meaning to literals, identifiers and the operators.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "skewpbw/errors.hpp"

namespace skewpbw {

struct Token {
  enum class Kind { Number, Identifier, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

inline bool is_identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

inline bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(std::string_view text, std::size_t line = 0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) ++i;
      out.push_back({Token::Kind::Number, std::string(text.substr(start, i - start)), start + 1});
    } else if (is_identifier_start(c)) {
      while (i < text.size() && is_identifier_char(text[i])) ++i;
      out.push_back({Token::Kind::Identifier, std::string(text.substr(start, i - start)), start + 1});
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), start + 1});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, start + 1);
    }
  }
  out.push_back({Token::Kind::End, "", text.size() + 1});
  return out;
}

template <class Builder>
class ExpressionParser {
 public:
  using Value = typename Builder::Value;

  ExpressionParser(std::string_view text, const Builder& builder, std::size_t line = 0)
      : tokens_(tokenize(text, line)), builder_(builder), line_(line) {}

  Value parse() {
    Value v = expr();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  bool accept(std::string_view symbol) {
    if (peek().kind == Token::Kind::Symbol && peek().text == symbol) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, peek().column);
  }

  bool starts_primary() const {
    const Token& t = peek();
    return t.kind == Token::Kind::Number || t.kind == Token::Kind::Identifier ||
           (t.kind == Token::Kind::Symbol && t.text == "(");
  }

  Value expr() {
    bool negate = false;
    if (accept("-")) {
      negate = true;
    } else {
      accept("+");
    }
    Value acc = term();
    if (negate) acc = builder_.neg(acc);
    for (;;) {
      if (accept("+")) {
        acc = builder_.add(acc, term());
      } else if (accept("-")) {
        acc = builder_.sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = power();
    for (;;) {
      if (accept("*")) {
        acc = builder_.mul(acc, power());
      } else if (peek().kind == Token::Kind::Symbol && peek().text == "/") {
        ++pos_;
        if (peek().kind != Token::Kind::Number) fail("division is only supported by an integer literal");
        std::size_t column = peek().column;
        mpz_class d(peek().text);
        ++pos_;
        if (d == 0) throw ParseError("division by zero", line_, column);
        acc = builder_.divide(acc, d);
      } else if (starts_primary()) {
        acc = builder_.mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  Value power() {
    Value base = primary();
    if (accept("^")) {
      if (peek().kind != Token::Kind::Number) fail("exponent must be a non-negative integer");
      unsigned long e = std::stoul(peek().text);
      ++pos_;
      return builder_.pow(base, e);
    }
    return base;
  }

  Value primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      ++pos_;
      return builder_.from_integer(mpz_class(t.text));
    }
    if (t.kind == Token::Kind::Identifier) {
      ++pos_;
      return builder_.from_identifier(t.text, line_, t.column);
    }
    if (accept("(")) {
      Value v = expr();
      if (!accept(")")) fail("expected ')'");
      return v;
    }
    if (t.kind == Token::Kind::End) fail("unexpected end of expression");
    fail("unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  const Builder& builder_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <class Builder>
typename Builder::Value parse_expression(std::string_view text, const Builder& builder, std::size_t line = 0) {
  return ExpressionParser<Builder>(text, builder, line).parse();
}

}  // namespace skewpbw
