// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "atansum/error.hpp"

namespace atansum {

using Rational = mpq_class;

inline Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

namespace detail {

// Splits n = s^2 * f with f square-free; returns {s, f}.
inline std::pair<mpz_class, mpz_class> square_free_split(mpz_class n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "square-free split of non-positive integer");
  mpz_class outside = 1;
  mpz_class inside = 1;
  for (mpz_class p = 2; p * p <= n; ++p) {
    unsigned count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    for (unsigned i = 0; i < count / 2; ++i) outside *= p;
    if (count % 2 == 1) inside *= p;
  }
  inside *= n;
  return {outside, inside};
}

}  // namespace detail

/// Exact real of the form r * sqrt(n) with n square-free. Zero is always stored as 0 * sqrt(1).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : coeff_(v) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& r) : coeff_(canonical(r)) {}  // NOLINT(google-explicit-constructor)

  /// r * sqrt(radicand); the radicand is reduced to square-free form.
  static ExactScalar surd(const Rational& r, const mpz_class& radicand) {
    ExactScalar s;
    if (r == 0) return s;
    auto [outside, inside] = detail::square_free_split(radicand);
    s.coeff_ = canonical(r * Rational(outside));
    s.radicand_ = inside;
    return s;
  }

  /// sqrt(p/q) for a positive rational, as (1/q) * sqrt(p*q).
  static ExactScalar sqrt_of(const Rational& value) {
    if (value < 0) throw Error(ErrorCode::SurdNotReducible, "square root of a negative rational");
    if (value == 0) return {};
    Rational c = canonical(value);
    return surd(Rational(1, 1) / Rational(c.get_den()), c.get_num() * c.get_den());
  }

  const Rational& coefficient() const { return coeff_; }
  const mpz_class& radicand() const { return radicand_; }
  bool is_rational() const { return radicand_ == 1; }
  bool is_zero() const { return coeff_ == 0; }
  int sign() const { return sgn(coeff_); }

  /// Exact square, always rational.
  Rational square() const { return canonical(coeff_ * coeff_ * Rational(radicand_)); }

  ExactScalar operator-() const {
    ExactScalar s = *this;
    s.coeff_ = -s.coeff_;
    return s;
  }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return surd(a.coeff_ * b.coeff_, a.radicand_ * b.radicand_);
  }

  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division of exact scalar by zero");
    if (a.is_zero()) return {};
    // (r1 sqrt n1) / (r2 sqrt n2) = (r1 / (r2 n2)) sqrt(n1 n2)
    return surd(a.coeff_ / (b.coeff_ * Rational(b.radicand_)), a.radicand_ * b.radicand_);
  }

  /// Sum is only defined when both operands share the radicand (or one is zero).
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.radicand_ != b.radicand_)
      throw Error(ErrorCode::SurdNotReducible, "sum of unlike surds " + a.str() + " and " + b.str());
    ExactScalar s;
    s.coeff_ = canonical(a.coeff_ + b.coeff_);
    s.radicand_ = s.coeff_ == 0 ? mpz_class(1) : a.radicand_;
    return s;
  }

  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

  /// Total order by numeric value.
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
    if (a == b) return std::strong_ordering::equal;
    int sa = a.sign();
    int sb = b.sign();
    if (sa != sb) return sa < sb ? std::strong_ordering::less : std::strong_ordering::greater;
    // same sign: compare squares, flipped for negatives
    Rational qa = a.square();
    Rational qb = b.square();
    bool less = sa >= 0 ? qa < qb : qa > qb;
    return less ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// Canonical text: `3/2`, `sqrt(3)`, `2*sqrt(3)`, `-1/3*sqrt(3)`.
  std::string str() const {
    if (radicand_ == 1) return coeff_.get_str();
    std::string root = "sqrt(" + radicand_.get_str() + ")";
    if (coeff_ == 1) return root;
    if (coeff_ == -1) return "-" + root;
    return coeff_.get_str() + "*" + root;
  }

 private:
  Rational coeff_{0};
  mpz_class radicand_{1};
};

}  // namespace atansum
