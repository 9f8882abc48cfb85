// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include "atansum/error.hpp"
#include "atansum/exact_scalar.hpp"

namespace atansum {

/// RAII owner of one MPFR number.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Fixed-point text with `decimals` digits after the point.
  std::string fixed(int decimals) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", decimals, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  /// Scientific text with `digits` significant digits.
  std::string sci(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", std::max(digits - 1, 0), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

/// Requested decimal digits plus guard digits; all values are computed at digits + guard.
struct PrecisionContext {
  unsigned digits = 30;
  unsigned guard = 10;

  PrecisionContext() = default;
  PrecisionContext(unsigned d, unsigned g = 10) : digits(d), guard(g) {
    if (digits < 1) throw Error(ErrorCode::InvalidArgument, "digits must be >= 1");
    if (guard < 10) throw Error(ErrorCode::InvalidArgument, "guard must be >= 10");
  }

  /// Guard sized for accumulating `terms` rounded values.
  static PrecisionContext for_terms(unsigned digits, unsigned long terms) {
    auto extra = static_cast<unsigned>(std::ceil(std::log10(static_cast<double>(terms) + 1.0)));
    return {digits, 10 + extra};
  }

  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(std::ceil((digits + guard) * 3.3219280948873623)) + 8;
  }

  /// The target error radius 10^-digits as a double exponent.
  int target_exponent() const { return -static_cast<int>(digits); }
};

inline constexpr mpfr_prec_t kErrPrec = 64;

namespace detail {

// Upper bound on one rounding error of v (one ulp), as an error-precision number.
inline Real ulp_bound(const Real& v) {
  Real e(kErrPrec);
  if (!mpfr_number_p(v.get()) || mpfr_zero_p(v.get())) return e;
  mpfr_set_ui_2exp(e.get(), 1, mpfr_get_exp(v.get()) - v.prec(), MPFR_RNDU);
  return e;
}

inline Real abs_up(const Real& v) {
  Real r(kErrPrec);
  mpfr_abs(r.get(), v.get(), MPFR_RNDU);
  return r;
}

inline Real abs_down(const Real& v) {
  Real r(kErrPrec);
  mpfr_abs(r.get(), v.get(), MPFR_RNDD);
  return r;
}

inline void add_up(Real& acc, const Real& x) { mpfr_add(acc.get(), acc.get(), x.get(), MPFR_RNDU); }

}  // namespace detail

/// A value with a rigorous absolute error radius: the true quantity lies in [value - err, value + err].
class BoundedReal {
 public:
  BoundedReal() : value_(64), err_(kErrPrec) {}
  explicit BoundedReal(mpfr_prec_t prec) : value_(prec), err_(kErrPrec) {}

  static BoundedReal exact(const Rational& r, const PrecisionContext& ctx) {
    BoundedReal b(ctx.bits());
    if (mpfr_set_q(b.value_.get(), r.get_mpq_t(), MPFR_RNDN) != 0) b.err_ = detail::ulp_bound(b.value_);
    return b;
  }

  static BoundedReal exact(long v, const PrecisionContext& ctx) { return exact(Rational(v), ctx); }

  static BoundedReal exact(const ExactScalar& s, const PrecisionContext& ctx) {
    if (s.is_rational()) return exact(s.coefficient(), ctx);
    BoundedReal b(ctx.bits());
    Real root(ctx.bits());
    mpfr_set_z(root.get(), s.radicand().get_mpz_t(), MPFR_RNDN);  // exact: radicands are small
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    Real root_err = detail::ulp_bound(root);
    mpfr_mul_q(b.value_.get(), root.get(), s.coefficient().get_mpq_t(), MPFR_RNDN);
    // |r| * err(sqrt) + rounding of the product
    Real r_abs(kErrPrec);
    mpfr_set_q(r_abs.get(), s.coefficient().get_mpq_t(), MPFR_RNDU);
    mpfr_abs(r_abs.get(), r_abs.get(), MPFR_RNDU);
    mpfr_mul(b.err_.get(), r_abs.get(), root_err.get(), MPFR_RNDU);
    detail::add_up(b.err_, detail::ulp_bound(b.value_));
    return b;
  }

  /// Takes ownership of a computed value with a known error radius.
  static BoundedReal from(Real value, Real err) {
    BoundedReal b;
    b.value_ = std::move(value);
    b.err_ = Real(kErrPrec);
    mpfr_set(b.err_.get(), err.get(), MPFR_RNDU);
    return b;
  }

  static BoundedReal pi(const PrecisionContext& ctx) {
    BoundedReal b(ctx.bits());
    mpfr_const_pi(b.value_.get(), MPFR_RNDN);
    b.err_ = detail::ulp_bound(b.value_);
    return b;
  }

  const Real& value() const { return value_; }
  const Real& err() const { return err_; }
  mpfr_prec_t prec() const { return value_.prec(); }
  double to_double() const { return value_.to_double(); }
  double err_double() const { return mpfr_get_d(err_.get(), MPFR_RNDU); }

  /// True when the error interval is a single point at zero.
  bool is_exact_zero() const { return value_.is_zero() && err_.is_zero(); }

  /// True when zero lies inside the interval.
  bool contains_zero() const {
    Real a = detail::abs_down(value_);
    return mpfr_lessequal_p(a.get(), err_.get()) != 0;
  }

  /// Sign if certain, 0 when the interval straddles zero.
  int certain_sign() const { return contains_zero() ? 0 : value_.sign(); }

  /// Upper bound on |x|.
  Real abs_upper() const {
    Real a = detail::abs_up(value_);
    detail::add_up(a, err_);
    return a;
  }

  /// Lower bound on |x| (clamped at zero).
  Real abs_lower() const {
    Real a = detail::abs_down(value_);
    mpfr_sub(a.get(), a.get(), err_.get(), MPFR_RNDD);
    if (mpfr_sgn(a.get()) < 0) mpfr_set_zero(a.get(), 1);
    return a;
  }

  BoundedReal operator-() const {
    BoundedReal b = *this;
    mpfr_neg(b.value_.get(), b.value_.get(), MPFR_RNDN);
    return b;
  }

  friend BoundedReal operator+(const BoundedReal& a, const BoundedReal& b) {
    BoundedReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_add(r.value_.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
    mpfr_add(r.err_.get(), a.err_.get(), b.err_.get(), MPFR_RNDU);
    if (t != 0) detail::add_up(r.err_, detail::ulp_bound(r.value_));
    return r;
  }

  friend BoundedReal operator-(const BoundedReal& a, const BoundedReal& b) { return a + (-b); }

  friend BoundedReal operator*(const BoundedReal& a, const BoundedReal& b) {
    BoundedReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_mul(r.value_.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
    // |a| eb + |b| ea + ea eb
    Real tmp(kErrPrec);
    Real aa = detail::abs_up(a.value_);
    Real ab = detail::abs_up(b.value_);
    mpfr_mul(r.err_.get(), aa.get(), b.err_.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), ab.get(), a.err_.get(), MPFR_RNDU);
    detail::add_up(r.err_, tmp);
    mpfr_mul(tmp.get(), a.err_.get(), b.err_.get(), MPFR_RNDU);
    detail::add_up(r.err_, tmp);
    if (t != 0) detail::add_up(r.err_, detail::ulp_bound(r.value_));
    return r;
  }

  friend BoundedReal operator/(const BoundedReal& a, const BoundedReal& b) {
    if (b.contains_zero()) throw Error(ErrorCode::Indeterminate, "division by an interval containing zero");
    BoundedReal r(std::max(a.prec(), b.prec()));
    int t = mpfr_div(r.value_.get(), a.value_.get(), b.value_.get(), MPFR_RNDN);
    // (|a| eb + |b| ea) / (|b| (|b| - eb))
    Real num(kErrPrec);
    Real tmp(kErrPrec);
    Real aa = detail::abs_up(a.value_);
    Real ab = detail::abs_up(b.value_);
    mpfr_mul(num.get(), aa.get(), b.err_.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), ab.get(), a.err_.get(), MPFR_RNDU);
    detail::add_up(num, tmp);
    Real den = detail::abs_down(b.value_);
    Real low = b.abs_lower();
    mpfr_mul(den.get(), den.get(), low.get(), MPFR_RNDD);
    mpfr_div(r.err_.get(), num.get(), den.get(), MPFR_RNDU);
    if (t != 0) detail::add_up(r.err_, detail::ulp_bound(r.value_));
    return r;
  }

  BoundedReal& operator+=(const BoundedReal& o) { return *this = *this + o; }
  BoundedReal& operator-=(const BoundedReal& o) { return *this = *this - o; }
  BoundedReal& operator*=(const BoundedReal& o) { return *this = *this * o; }

  BoundedReal pow(unsigned n) const {
    BoundedReal r(prec());
    mpfr_set_ui(r.value_.get(), 1, MPFR_RNDN);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Exact multiplication by 2^e.
  BoundedReal times_pow2(long e) const {
    BoundedReal r = *this;
    mpfr_mul_2si(r.value_.get(), value_.get(), e, MPFR_RNDN);
    mpfr_mul_2si(r.err_.get(), err_.get(), e, MPFR_RNDU);
    return r;
  }

  /// Multiplies by a small exact integer without extra error beyond one rounding.
  BoundedReal scaled(long factor) const {
    BoundedReal r = *this;
    int t = mpfr_mul_si(r.value_.get(), value_.get(), factor, MPFR_RNDN);
    mpfr_mul_ui(r.err_.get(), err_.get(), static_cast<unsigned long>(std::labs(factor)), MPFR_RNDU);
    if (t != 0) detail::add_up(r.err_, detail::ulp_bound(r.value_));
    return r;
  }

  /// Principal arctangent; the derivative is at most 1 so the input radius carries over.
  BoundedReal atan() const {
    BoundedReal r(prec());
    int t = mpfr_atan(r.value_.get(), value_.get(), MPFR_RNDN);
    r.err_ = err_;
    if (t != 0) detail::add_up(r.err_, detail::ulp_bound(r.value_));
    return r;
  }

  /// tan over the whole interval, which must lie inside (-pi/2, pi/2); tan is increasing there.
  BoundedReal tan() const {
    Real half_pi(prec());
    mpfr_const_pi(half_pi.get(), MPFR_RNDD);
    mpfr_div_2ui(half_pi.get(), half_pi.get(), 1, MPFR_RNDD);
    Real reach = abs_upper();
    if (mpfr_greaterequal_p(reach.get(), half_pi.get()))
      throw Error(ErrorCode::InvalidArgument, "tan argument interval reaches +-pi/2");
    BoundedReal r(prec());
    if (err_.is_zero()) {
      if (mpfr_tan(r.value_.get(), value_.get(), MPFR_RNDN) != 0) r.err_ = detail::ulp_bound(r.value_);
      return r;
    }
    Real lo(prec()), hi(prec());
    mpfr_sub(lo.get(), value_.get(), err_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), value_.get(), err_.get(), MPFR_RNDU);
    mpfr_tan(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_tan(hi.get(), hi.get(), MPFR_RNDU);
    mpfr_add(r.value_.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(r.value_.get(), r.value_.get(), 1, MPFR_RNDN);
    // radius = max(hi - mid, mid - lo)
    Real up(kErrPrec), down(kErrPrec);
    mpfr_sub(up.get(), hi.get(), r.value_.get(), MPFR_RNDU);
    mpfr_sub(down.get(), r.value_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(r.err_.get(), up.get(), down.get(), MPFR_RNDU);
    return r;
  }

  /// Enlarges the error radius by `extra` (used for truncation bounds).
  BoundedReal widened(const Real& extra) const {
    BoundedReal r = *this;
    Real e = detail::abs_up(extra);
    detail::add_up(r.err_, e);
    return r;
  }

  /// Decimal digits certified by the radius: floor(-log10(err)), capped for exact values.
  long certified_digits() const {
    if (err_.is_zero()) return static_cast<long>(static_cast<double>(prec()) * 0.30102999566398120);
    Real l(kErrPrec);
    mpfr_log10(l.get(), err_.get(), MPFR_RNDU);
    double d = -mpfr_get_d(l.get(), MPFR_RNDU);
    return static_cast<long>(std::floor(d));
  }

  std::string str(int decimals) const { return value_.fixed(decimals); }
  std::string err_str() const { return err_.sci(3); }

 private:
  Real value_;
  Real err_;
};

using Angle = BoundedReal;

/// |a - b| <= a.err + b.err, i.e. the two enclosures overlap.
inline bool overlaps(const BoundedReal& a, const BoundedReal& b) {
  BoundedReal d = a - b;
  return d.contains_zero();
}

/// Upper bound on |a - b| including both radii.
inline Real distance_upper(const BoundedReal& a, const BoundedReal& b) { return (a - b).abs_upper(); }

/// True when |a - b| (value difference) is at most `tol` = 10^exponent.
inline bool difference_below(const BoundedReal& a, const BoundedReal& b, int exponent) {
  BoundedReal d = a - b;
  Real tol(kErrPrec);
  mpfr_set_si(tol.get(), 10, MPFR_RNDD);
  mpfr_pow_si(tol.get(), tol.get(), exponent, MPFR_RNDD);
  Real v = detail::abs_up(d.value());
  return mpfr_lessequal_p(v.get(), tol.get()) != 0;
}

inline BoundedReal pi_const(const PrecisionContext& ctx) { return BoundedReal::pi(ctx); }

/// pi/2 with the sign of `sign` (+1 or -1).
inline Angle signed_half_pi(int sign, const PrecisionContext& ctx) {
  BoundedReal r = pi_const(ctx).times_pow2(-1);
  return sign < 0 ? -r : r;
}

/// Principal arctangent of an exact scalar.
inline Angle atan_exact(const ExactScalar& s, const PrecisionContext& ctx) {
  if (s.is_zero()) return BoundedReal(ctx.bits());
  return BoundedReal::exact(s, ctx).atan();
}

/// Principal value of arctan(lambda / x); arctan(lambda / 0) = sign(lambda) * pi/2.
inline Angle arctan_ratio(const ExactScalar& lambda, const ExactScalar& x, const PrecisionContext& ctx) {
  if (x.is_zero()) {
    if (lambda.is_zero()) throw Error(ErrorCode::BothZero, "arctan(0/0) is undefined");
    return signed_half_pi(lambda.sign(), ctx);
  }
  return atan_exact(lambda / x, ctx);
}

/// Interval version. An x interval that straddles zero (without being exactly zero)
/// is rejected unless |lambda| is certainly smaller than |x| could make the quotient blow up.
inline Angle arctan_ratio(const BoundedReal& lambda, const BoundedReal& x, const PrecisionContext& ctx) {
  if (x.is_exact_zero()) {
    if (lambda.is_exact_zero()) throw Error(ErrorCode::BothZero, "arctan(0/0) is undefined");
    int s = lambda.certain_sign();
    if (s == 0) throw Error(ErrorCode::Indeterminate, "sign of lambda uncertain with x = 0");
    return signed_half_pi(s, ctx);
  }
  if (lambda.contains_zero() && x.contains_zero())
    throw Error(ErrorCode::BothZero, "lambda and x both indistinguishable from zero");
  // pick the better-conditioned quotient
  Real la = lambda.abs_lower();
  Real xa = x.abs_lower();
  if (!x.contains_zero() && mpfr_greaterequal_p(xa.get(), la.get())) return (lambda / x).atan();
  if (!x.contains_zero() && lambda.contains_zero()) return (lambda / x).atan();
  // |lambda| > |x|: atan(l/x) = sign(l x) pi/2 - atan(x/l)
  int sl = lambda.certain_sign();
  int sx = x.certain_sign();
  if (sx == 0) throw Error(ErrorCode::Indeterminate, "sign of x uncertain in arctan_ratio");
  return signed_half_pi(sl * sx, ctx) - (x / lambda).atan();
}

/// Whether arctan(l/x) - arctan(l/y) equals the principal arctan(l(y-x)/(xy+l^2))
/// (x = 0 read as arctan(l/0) = sign(l) pi/2).
inline bool sub_branch_holds(const ExactScalar& lambda, const Rational& x, const Rational& y) {
  if (lambda.is_zero()) return true;
  if (x == 0 && y == 0) return true;
  if (x == 0) return y > 0;
  if (y == 0) return x > 0;
  Rational p = x * y;
  return p * (p + lambda.square()) > 0;
}

/// Whether arctan(l/x) + arctan(l/y) equals the principal arctan(l(x+y)/(xy-l^2)).
/// xy = l^2 is included: both sides are then sign * pi/2.
inline bool add_branch_holds(const ExactScalar& lambda, const Rational& x, const Rational& y) {
  if (lambda.is_zero()) return true;
  if (x == 0 && y == 0) return false;
  if (x == 0) return y < 0;
  if (y == 0) return x < 0;
  Rational p = x * y;
  return p * (p - lambda.square()) >= 0;
}

struct BranchResult {
  Angle angle;
  bool branch_ok;
};

/// arctan(l(y-x)/(xy+l^2)); branch_ok when it equals arctan(l/x) - arctan(l/y).
inline BranchResult arctan_sub(const ExactScalar& lambda, const Rational& x, const Rational& y,
                               const PrecisionContext& ctx) {
  ExactScalar num = lambda * ExactScalar(Rational(y - x));
  ExactScalar den(canonical(x * y + lambda.square()));
  if (num.is_zero() && den.is_zero()) return {BoundedReal(ctx.bits()), sub_branch_holds(lambda, x, y)};
  return {arctan_ratio(num, den, ctx), sub_branch_holds(lambda, x, y)};
}

/// arctan(l(y+x)/(xy-l^2)); branch_ok when it equals arctan(l/x) + arctan(l/y).
/// Throws DenominatorZero when xy = l^2 (the sum is then exactly +-pi/2).
inline BranchResult arctan_add(const ExactScalar& lambda, const Rational& x, const Rational& y,
                               const PrecisionContext& ctx) {
  ExactScalar num = lambda * ExactScalar(Rational(y + x));
  Rational den = canonical(x * y - lambda.square());
  if (den == 0 && !lambda.is_zero())
    throw Error(ErrorCode::DenominatorZero, "xy = lambda^2 in arctan_add");
  if (lambda.is_zero()) return {BoundedReal(ctx.bits()), true};
  return {arctan_ratio(num, ExactScalar(den), ctx), add_branch_holds(lambda, x, y)};
}

}  // namespace atansum
