// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "atansum/algebra.hpp"
#include "atansum/closedform.hpp"
#include "atansum/error.hpp"
#include "atansum/sequences.hpp"

namespace atansum {

// Grammar (see docs/grammar.md):
//   expr    = term { ("+" | "-") term }
//   term    = unary { ("*" | "/") unary }
//   unary   = ("-" | "+") unary | power
//   power   = primary [ "^" unary ]
//   primary = number | "k" | "pi" | ("sqrt" | "atan") "(" expr ")" | "(" expr ")"

namespace ast {

struct Node;
using Ptr = std::shared_ptr<const Node>;

struct Node {
  enum Op { Num, K, Pi, Sqrt, Atan, Neg, Add, Sub, Mul, Div, Pow } op;
  std::size_t pos;
  Rational value;
  Ptr a, b;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Ptr parse() {
    Ptr e = expr();
    skip();
    if (i_ != s_.size()) throw SyntaxError(i_, std::string("unexpected '") + s_[i_] + "'");
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  static Ptr make(Node::Op op, std::size_t pos, Ptr a = nullptr, Ptr b = nullptr, Rational v = 0) {
    return std::make_shared<const Node>(Node{op, pos, std::move(v), std::move(a), std::move(b)});
  }

  Ptr expr() {
    Ptr l = term();
    for (;;) {
      skip();
      std::size_t p = i_;
      if (eat('+')) {
        l = make(Node::Add, p, l, term());
      } else if (eat('-')) {
        l = make(Node::Sub, p, l, term());
      } else {
        return l;
      }
    }
  }

  Ptr term() {
    Ptr l = unary();
    for (;;) {
      skip();
      std::size_t p = i_;
      if (eat('*')) {
        l = make(Node::Mul, p, l, unary());
      } else if (eat('/')) {
        l = make(Node::Div, p, l, unary());
      } else {
        return l;
      }
    }
  }

  Ptr unary() {
    skip();
    std::size_t p = i_;
    if (eat('-')) return make(Node::Neg, p, unary());
    if (eat('+')) return unary();
    return power();
  }

  Ptr power() {
    Ptr base = primary();
    skip();
    std::size_t p = i_;
    if (eat('^')) return make(Node::Pow, p, base, unary());
    return base;
  }

  Ptr primary() {
    skip();
    std::size_t p = i_;
    if (i_ >= s_.size()) throw SyntaxError(i_, "unexpected end of input");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string_view id = s_.substr(start, i_ - start);
      if (id == "k") return make(Node::K, p);
      if (id == "pi") return make(Node::Pi, p);
      if (id == "sqrt" || id == "atan") {
        if (!eat('(')) throw SyntaxError(i_, "expected '(' after " + std::string(id));
        Ptr inner = expr();
        if (!eat(')')) throw SyntaxError(i_, "expected ')'");
        return make(id == "sqrt" ? Node::Sqrt : Node::Atan, p, inner);
      }
      throw SyntaxError(p, "unknown identifier '" + std::string(id) + "'");
    }
    if (eat('(')) {
      Ptr inner = expr();
      if (!eat(')')) throw SyntaxError(i_, "expected ')'");
      return inner;
    }
    throw SyntaxError(p, std::string("unexpected '") + c + "'");
  }

  Ptr number() {
    std::size_t p = i_;
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      if (s_[i_] == '.') {
        if (dot) throw SyntaxError(i_, "second decimal point");
        dot = true;
      } else {
        digits += s_[i_];
        if (dot) ++frac;
      }
      ++i_;
    }
    if (digits.empty()) throw SyntaxError(p, "malformed number");
    mpz_class den = 1;
    for (std::size_t j = 0; j < frac; ++j) den *= 10;
    return make(Node::Num, p, nullptr, nullptr, canonical(Rational(mpz_class(digits, 10), den)));
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline bool mentions(const Ptr& n, Node::Op op) {
  if (!n) return false;
  return n->op == op || mentions(n->a, op) || mentions(n->b, op);
}

inline SurdRationalFunction to_function(const Ptr& n);

inline long integer_exponent(const Ptr& n) {
  SurdRationalFunction e = to_function(n);
  if (!e.is_constant() || e.radicand() != 1) throw SyntaxError(n->pos, "exponent must be an integer constant");
  Rational v = e.rational_part().num().constant();
  if (v.get_den() != 1 || abs(v) > 64) throw SyntaxError(n->pos, "exponent must be a small integer");
  return v.get_num().get_si();
}

inline SurdRationalFunction to_function(const Ptr& n) {
  using F = SurdRationalFunction;
  switch (n->op) {
    case Node::Num: return F(RationalFunction(Polynomial(n->value)));
    case Node::K: return F(RationalFunction(Polynomial::k()));
    case Node::Pi: throw SyntaxError(n->pos, "pi is not allowed in a rational function");
    case Node::Atan: throw SyntaxError(n->pos, "atan is not allowed in a rational function");
    case Node::Sqrt: {
      F inner = to_function(n->a);
      if (!inner.is_constant() || inner.radicand() != 1)
        throw SyntaxError(n->pos, "sqrt needs a rational constant argument");
      Rational v = inner.rational_part().num().constant();
      if (v < 0) throw SyntaxError(n->pos, "sqrt of a negative number");
      return F::from_scalar(ExactScalar::sqrt_of(v));
    }
    case Node::Neg: return -to_function(n->a);
    case Node::Add:
    case Node::Sub:
      try {
        return n->op == Node::Add ? to_function(n->a) + to_function(n->b) : to_function(n->a) - to_function(n->b);
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        throw SyntaxError(n->pos, e.what());
      }
    case Node::Mul: return to_function(n->a) * to_function(n->b);
    case Node::Div: {
      F d = to_function(n->b);
      if (d.is_zero()) throw SyntaxError(n->pos, "division by zero");
      return to_function(n->a) / d;
    }
    case Node::Pow: return to_function(n->a).pow(static_cast<int>(integer_exponent(n->b)));
  }
  throw SyntaxError(n->pos, "unsupported expression");
}

inline ExactScalar to_scalar(const Ptr& n) {
  SurdRationalFunction f = to_function(n);
  if (!f.is_constant()) throw SyntaxError(n->pos, "expected a constant");
  return f.constant_value();
}

inline ClosedFormExpr to_closed_form(const Ptr& n) {
  switch (n->op) {
    case Node::Num: return ClosedFormExpr::constant(n->value);
    case Node::K: throw SyntaxError(n->pos, "k is not allowed in a closed form");
    case Node::Pi: return ClosedFormExpr::pi();
    case Node::Atan: return ClosedFormExpr::atan(to_scalar(n->a));
    case Node::Sqrt: {
      ExactScalar s = to_scalar(n);
      if (!s.is_rational()) throw SyntaxError(n->pos, "irrational coefficient outside atan");
      return ClosedFormExpr::constant(s.coefficient());
    }
    case Node::Neg: return -to_closed_form(n->a);
    case Node::Add: return to_closed_form(n->a) + to_closed_form(n->b);
    case Node::Sub: return to_closed_form(n->a) - to_closed_form(n->b);
    case Node::Mul: return to_closed_form(n->a) * to_closed_form(n->b);
    case Node::Div: {
      ClosedFormExpr d = to_closed_form(n->b);
      if (!d.is_rational_constant() || d.rational_value() == 0)
        throw SyntaxError(n->pos, "closed form divisor must be a nonzero rational");
      return to_closed_form(n->a).scaled(Rational(1) / d.rational_value());
    }
    case Node::Pow: {
      long e = integer_exponent(n->b);
      if (e < 0) throw SyntaxError(n->pos, "negative power in closed form");
      return to_closed_form(n->a).pow(static_cast<unsigned>(e));
    }
  }
  throw SyntaxError(n->pos, "unsupported expression");
}

inline Polynomial to_polynomial(const Ptr& n) {
  SurdRationalFunction f = to_function(n);
  if (f.radicand() != 1 || !f.rational_part().is_polynomial())
    throw SyntaxError(n->pos, "expected a polynomial in k");
  return f.rational_part().num();
}

inline SequenceSpec to_sequence(const Ptr& n) {
  Polynomial base;
  long power = 1;
  if (n->op == Node::Pow) {
    power = integer_exponent(n->b);
    base = to_polynomial(n->a);
  } else {
    base = to_polynomial(n);
  }
  if (power < 1) throw SyntaxError(n->pos, "sequence power must be >= 1");
  if (base.degree() < 1) throw SyntaxError(n->pos, "sequence must depend on k");
  if (base.leading() <= 0) throw SyntaxError(n->pos, "sequence must have positive leading coefficient");
  return SequenceSpec(base, static_cast<unsigned>(power));
}

}  // namespace ast

inline SurdRationalFunction parse_rational_function(std::string_view text) {
  return ast::to_function(ast::Parser(text).parse());
}
inline ExactScalar parse_scalar(std::string_view text) { return ast::to_scalar(ast::Parser(text).parse()); }
inline ClosedFormExpr parse_closed_form(std::string_view text) {
  return ast::to_closed_form(ast::Parser(text).parse());
}
inline SequenceSpec parse_sequence(std::string_view text) { return ast::to_sequence(ast::Parser(text).parse()); }

using ParsedExpr = std::variant<SurdRationalFunction, ClosedFormExpr, SequenceSpec>;

/// Closed form when pi/atan appear; a sequence for a polynomial in k with positive
/// leading coefficient (optionally raised to a power); otherwise a rational function.
inline ParsedExpr parse_expr(std::string_view text) {
  ast::Ptr n = ast::Parser(text).parse();
  if (ast::mentions(n, ast::Node::Pi) || ast::mentions(n, ast::Node::Atan)) return ast::to_closed_form(n);
  SurdRationalFunction f = ast::to_function(n);
  if (ast::mentions(n, ast::Node::K) && f.radicand() == 1 && f.rational_part().is_polynomial() &&
      f.rational_part().num().leading() > 0) {
    return ast::to_sequence(n);
  }
  return f;
}

}  // namespace atansum
