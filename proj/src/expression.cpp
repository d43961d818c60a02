#include "hahn/expression.hpp"

#include <cctype>

#include "hahn/errors.hpp"

namespace hahn {

Expr Expr::number(Rational q) {
  Expr e;
  e.value = std::move(q);
  return e;
}

Expr Expr::symbol(std::int64_t label) {
  Expr e;
  e.kind = Kind::symbol;
  e.label = label;
  return e;
}

Expr Expr::unary(Kind kind, Expr child, Rational value) {
  Expr e;
  e.kind = kind;
  e.value = std::move(value);
  e.line = child.line;
  e.column = child.column;
  e.children.push_back(std::move(child));
  return e;
}

Expr Expr::binary(Kind kind, Expr left, Expr right) {
  Expr e;
  e.kind = kind;
  e.line = left.line;
  e.column = left.column;
  e.children.push_back(std::move(left));
  e.children.push_back(std::move(right));
  return e;
}

Expr Expr::call(std::string name, Expr argument) {
  Expr e = unary(Kind::call, std::move(argument));
  e.name = std::move(name);
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.value == b.value && a.label == b.label && a.name == b.name &&
         a.children == b.children;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (accept(c)) return;
    if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
    fail(std::string("expected '") + c + "'");
  }

  Expr located(Expr e, std::size_t at) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    e.line = line;
    e.column = column;
    return e;
  }

  bool digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (digit_at(pos_)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string integer_literal() {
    skip_space();
    if (!digit_at(pos_)) fail(pos_ < text_.size() ? "expected an integer" : "expected an integer before end of input");
    return digits();
  }

  Expr expr() {
    Expr left = term();
    for (;;) {
      if (accept('+')) {
        left = Expr::binary(Expr::Kind::add, std::move(left), term());
      } else if (accept('-')) {
        left = Expr::binary(Expr::Kind::sub, std::move(left), term());
      } else {
        return left;
      }
    }
  }

  Expr term() {
    Expr left = unary();
    for (;;) {
      if (accept('*')) {
        left = Expr::binary(Expr::Kind::mul, std::move(left), unary());
      } else if (accept('/')) {
        left = Expr::binary(Expr::Kind::div, std::move(left), unary());
      } else {
        return left;
      }
    }
  }

  Expr unary() {
    std::size_t at = (peek(), pos_);
    if (accept('-')) return located(Expr::unary(Expr::Kind::neg, unary()), at);
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    return Expr::unary(Expr::Kind::power, std::move(base), exponent());
  }

  Rational exponent() {
    if (accept('(')) {
      std::string sign = signed_prefix();
      Rational q(sign + integer_literal(), 10);
      if (accept('/')) {
        std::size_t at = (peek(), pos_);
        Rational den(integer_literal(), 10);
        if (den == 0) fail_at("zero denominator", at);
        q /= den;
      }
      expect(')');
      q.canonicalize();
      return q;
    }
    std::string sign = signed_prefix();
    skip_space();
    if (!digit_at(pos_)) {
      fail(pos_ < text_.size() ? "expected an exponent" : "expected an exponent before end of input");
    }
    return Rational(sign + digits(), 10);
  }

  std::string signed_prefix() {
    if (accept('-')) return "-";
    accept('+');
    return "";
  }

  Expr primary() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '\0') fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) return located(Expr::number(number()), at);
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == 't' && digit_at(pos_ + 1)) {
      ++pos_;
      return located(Expr::symbol(std::stoll(digits())), at);
    }
    if (c == 't' && text_.substr(pos_, 3) == "t^{") {
      pos_ += 3;
      Expr e = located(Expr::unary(Expr::Kind::el_monomial, expr()), at);
      expect('}');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name != "log" && name != "exp" && name != "d" && name != "ai" && name != "int" && name != "O") {
        fail_at("unknown identifier '" + name + "'", start);
      }
      expect('(');
      Expr argument = expr();
      expect(')');
      if (name == "O") return located(Expr::unary(Expr::Kind::big_o, std::move(argument)), at);
      return located(Expr::call(name, std::move(argument)), at);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    std::string whole = digits();
    if (pos_ < text_.size() && text_[pos_] == '.' && digit_at(pos_ + 1)) {
      ++pos_;
      std::string fraction = digits();
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
      Rational q(mpz_class(whole + fraction, 10), scale);
      q.canonicalize();
      return q;
    }
    return Rational(whole, 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace hahn
