// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "atansum/error.hpp"
#include "atansum/exact_scalar.hpp"
#include "atansum/lemma.hpp"
#include "atansum/polynomial.hpp"

namespace atansum {

/// num/den in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(Polynomial num, Polynomial den = Polynomial(1)) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::DenominatorZero, "rational function with zero denominator");
    reduce();
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }

  /// Throws DenominatorZero at poles.
  Rational eval(const Rational& k) const {
    Rational d = den_.eval(k);
    if (d == 0) throw Error(ErrorCode::DenominatorZero, "pole of rational function");
    return canonical(num_.eval(k) / d);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  RationalFunction operator-() const { return {-num_, den_}; }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(ErrorCode::DenominatorZero, "division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction pow(int n) const {
    if (n < 0) return RationalFunction(1) / pow(-n);
    return {num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n))};
  }

  /// r(k + shift)
  RationalFunction shifted(const Rational& shift) const { return {num_.shifted(shift), den_.shifted(shift)}; }

  std::string str() const {
    std::string n = num_.str();
    if (is_polynomial()) return n;
    auto terms = std::count_if(num_.coeffs().begin(), num_.coeffs().end(), [](const Rational& c) { return c != 0; });
    if (terms > 1) n = "(" + n + ")";
    return n + "/(" + den_.str() + ")";
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Polynomial::divmod(num_, g).first;
      den_ = Polynomial::divmod(den_, g).first;
    }
    Rational lead = den_.leading();
    if (lead != 1) {
      num_ = num_.scaled(Rational(1) / lead);
      den_ = den_.scaled(Rational(1) / lead);
    }
  }

  Polynomial num_;
  Polynomial den_;
};

/// sqrt(radicand) * r(k), radicand square-free (1 for purely rational functions).
class SurdRationalFunction {
 public:
  SurdRationalFunction() = default;
  SurdRationalFunction(RationalFunction r, mpz_class radicand = 1) : r_(std::move(r)), n_(std::move(radicand)) {
    if (r_.is_zero()) n_ = 1;
  }
  static SurdRationalFunction from_scalar(const ExactScalar& s) {
    return {RationalFunction(Polynomial(s.coefficient())), s.radicand()};
  }

  const RationalFunction& rational_part() const { return r_; }
  const mpz_class& radicand() const { return n_; }
  bool is_zero() const { return r_.is_zero(); }
  bool is_constant() const { return r_.is_constant(); }

  /// Value of a constant function as an exact scalar.
  ExactScalar constant_value() const {
    if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "not a constant");
    return ExactScalar::surd(r_.num().constant(), n_);
  }

  friend SurdRationalFunction operator+(const SurdRationalFunction& a, const SurdRationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.n_ != b.n_) throw Error(ErrorCode::SurdNotReducible, "sum of functions with different surds");
    return {a.r_ + b.r_, a.n_};
  }
  SurdRationalFunction operator-() const { return {-r_, n_}; }
  friend SurdRationalFunction operator-(const SurdRationalFunction& a, const SurdRationalFunction& b) {
    return a + (-b);
  }
  friend SurdRationalFunction operator*(const SurdRationalFunction& a, const SurdRationalFunction& b) {
    auto [out, in] = detail::square_free_split(a.n_ * b.n_);
    return {a.r_ * b.r_ * RationalFunction(Polynomial(Rational(out))), in};
  }
  friend SurdRationalFunction operator/(const SurdRationalFunction& a, const SurdRationalFunction& b) {
    // 1/(sqrt(n) r) = sqrt(n) / (n r)
    RationalFunction scale(Polynomial(Rational(b.n_)));
    return a * SurdRationalFunction(RationalFunction(1) / (scale * b.r_), b.n_);
  }
  friend bool operator==(const SurdRationalFunction& a, const SurdRationalFunction& b) {
    return a.n_ == b.n_ && a.r_ == b.r_;
  }

  SurdRationalFunction pow(int n) const {
    if (n < 0) return SurdRationalFunction(RationalFunction(1)) / pow(-n);
    SurdRationalFunction r(RationalFunction(1));
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  SurdRationalFunction shifted(const Rational& s) const { return {r_.shifted(s), n_}; }

  std::string str() const {
    if (n_ == 1) return r_.str();
    return "sqrt(" + n_.get_str() + ")*(" + r_.str() + ")";
  }

 private:
  RationalFunction r_;
  mpz_class n_ = 1;
};

/// Which arctangent of a lemma term: the main difference/sum argument, the second
/// (sum) argument of the squared variants, or the cofactor arctan(alpha/f(k + j*jstep)).
struct Slot {
  enum Kind { Main, Second, Cofactor } kind = Main;
  unsigned j = 0;

  static std::optional<Slot> parse(std::string_view s) {
    if (s == "main") return Slot{Main, 0};
    if (s == "second") return Slot{Second, 0};
    constexpr std::string_view pre = "cofactor";
    if (s.substr(0, pre.size()) == pre && s.size() > pre.size()) {
      unsigned j = 0;
      for (char c : s.substr(pre.size())) {
        if (c < '0' || c > '9') return std::nullopt;
        j = j * 10 + static_cast<unsigned>(c - '0');
      }
      if (j == 0) return std::nullopt;
      return Slot{Cofactor, j};
    }
    return std::nullopt;
  }

  std::string str() const {
    switch (kind) {
      case Main: return "main";
      case Second: return "second";
      case Cofactor: return "cofactor" + std::to_string(j);
    }
    return "?";
  }
};

/// Exact argument of one arctangent slot as a function of the lemma index k.
inline SurdRationalFunction lhs_argument(const LemmaConfig& cfg, const Slot& slot) {
  const Polynomial& p = cfg.f.expanded();
  const Rational a2 = cfg.alpha.square();
  Polynomial x = p;
  Polynomial y = p.shifted(Rational(cfg.span()));
  const Rational& c = cfg.alpha.coefficient();
  const mpz_class& n = cfg.alpha.radicand();
  bool sum_form = slot.kind == Slot::Second || (slot.kind == Slot::Main && cfg.variant == LemmaVariant::L2_ODD);
  switch (slot.kind) {
    case Slot::Main:
    case Slot::Second:
      if (slot.kind == Slot::Second && !cfg.squared())
        throw Error(ErrorCode::InvalidArgument, "second slot exists only for squared variants");
      if (sum_form) return {RationalFunction((y + x).scaled(c), x * y - Polynomial(a2)), n};
      return {RationalFunction((y - x).scaled(c), x * y + Polynomial(a2)), n};
    case Slot::Cofactor:
      if (slot.j < 1 || slot.j >= cfg.m) throw Error(ErrorCode::InvalidArgument, "cofactor index out of range");
      return {RationalFunction(Polynomial(c), p.shifted(Rational(static_cast<long>(slot.j) * cfg.jstep()))), n};
  }
  return {};
}

/// Exact identity check of a printed argument. The printed index is the lemma index minus `index_shift`.
inline bool check_printed_form(const LemmaConfig& cfg, const Slot& slot, const SurdRationalFunction& printed,
                               long index_shift = 0) {
  SurdRationalFunction derived = lhs_argument(cfg, slot).shifted(Rational(index_shift));
  return derived == printed;
}

}  // namespace atansum
