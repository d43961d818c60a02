#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hahn/rational.hpp"

namespace hahn {

/// Syntax tree of the expression language:
///   expr     := term (('+' | '-') term)*
///   term     := unary (('*' | '/') unary)*
///   unary    := ('+' | '-') unary | power
///   power    := primary ('^' exponent)?
///   exponent := ['+' | '-'] INT | '(' ['+' | '-'] INT ['/' INT] ')'
///   primary  := NUMBER | 't' INT | 't^{' expr '}' | FN '(' expr ')'
///             | 'O(' expr ')' | '(' expr ')'
///   FN       := log | exp | d | ai | int
struct Expr {
  enum class Kind { number, symbol, el_monomial, power, neg, add, sub, mul, div, call, big_o };

  Kind kind = Kind::number;
  Rational value;           // number literal, or the exponent of a power
  std::int64_t label = 0;   // symbol
  std::string name;         // call
  std::vector<Expr> children;
  int line = 1;
  int column = 1;

  static Expr number(Rational q);
  static Expr symbol(std::int64_t label);
  static Expr unary(Kind kind, Expr child, Rational value = 0);
  static Expr binary(Kind kind, Expr left, Expr right);
  static Expr call(std::string name, Expr argument);

  /// Structural equality; positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

/// Throws ParseError with the 1-based line and column of the offending token.
Expr parse_expression(std::string_view text);

}  // namespace hahn
