// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "atansum/exact_scalar.hpp"

namespace atansum {

/// Dense univariate polynomial in k with rational coefficients, c[i] multiplies k^i.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : c_{Rational(c)} { trim(); }
  Polynomial(const Rational& c) : c_{c} { trim(); }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial k() { return Polynomial(std::vector<Rational>{Rational(0), Rational(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational constant() const { return coeff(0); }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    acc.canonicalize();
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial pow(unsigned n) const {
    Polynomial r(1);
    Polynomial base = *this;
    while (n) {
      if (n & 1U) r = r * base;
      base = base * base;
      n >>= 1U;
    }
    return r;
  }

  Polynomial scaled(const Rational& s) const {
    Polynomial r = *this;
    for (auto& x : r.c_) x *= s;
    r.trim();
    return r;
  }

  /// p(k + shift)
  Polynomial shifted(const Rational& shift) const {
    Polynomial r;
    Polynomial lin(std::vector<Rational>{shift, Rational(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + Polynomial(*it);
    return r;
  }

  /// p(q(k))
  Polynomial compose(const Polynomial& q) const {
    Polynomial r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + Polynomial(*it);
    return r;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(r));
  }

  Polynomial monic() const { return is_zero() ? *this : scaled(Rational(1) / leading()); }

  /// Euclidean division; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> q(std::max(a.degree() - b.degree() + 1, 0), Rational(0));
    Polynomial r = a;
    Rational lb = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int shift = r.degree() - b.degree();
      Rational f = r.leading() / lb;
      q[shift] = f;
      std::vector<Rational> t(shift + 1, Rational(0));
      t[shift] = f;
      r = r - b * Polynomial(std::move(t));
    }
    return {Polynomial(std::move(q)), r};
  }

  /// Monic gcd (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Text in k, e.g. "k^2-3*k+1".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& a = c_[i];
      if (a == 0) continue;
      Rational mag = abs(a);
      bool neg = a < 0;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? "-" : "+";
      }
      if (i == 0) {
        out += to_string(mag);
        continue;
      }
      if (mag != 1) out += to_string(mag) + "*";
      out += "k";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    for (auto& x : c_) x.canonicalize();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

}  // namespace atansum
