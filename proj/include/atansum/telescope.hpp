// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "atansum/closedform.hpp"
#include "atansum/error.hpp"
#include "atansum/lemma.hpp"
#include "atansum/numerics.hpp"
#include "atansum/sequences.hpp"

namespace atansum {

struct TermValue {
  long k;
  Angle term;
  bool branch_ok;
};

/// Upper limit on the number of directly summed terms. The remainder is exact, so this
/// only caps work for slowly decaying configurations (linear f with m = 1).
inline constexpr long kMaxDirectTerms = 2000;

/// First index from which every term combination satisfies its branch condition:
/// f positive and non-decreasing, and f >= |alpha| when a sum formula is involved.
inline long regime_start(const LemmaConfig& cfg) {
  const Polynomial& p = cfg.f.expanded();
  Polynomial diff = p.shifted(Rational(1)) - p;
  long bound = std::max(detail::ceil_long(detail::cauchy_bound(p)), detail::ceil_long(detail::cauchy_bound(diff)));
  long k = hypothesis_report(cfg.f, std::max(2L, bound + 1)).k_positive;
  if (cfg.uses_add()) {
    Rational a2 = cfg.alpha.square();
    while (cfg.f(k) * cfg.f(k) < a2) ++k;
  }
  return k;
}

/// Evaluates terms and boundary products of one configuration at one precision.
/// Caches the atoms arctan(alpha/f(k)); not safe for concurrent use of one instance.
class Telescope {
 public:
  Telescope(LemmaConfig cfg, const PrecisionContext& ctx) : cfg_(std::move(cfg)), ctx_(ctx) {}

  const LemmaConfig& config() const { return cfg_; }
  const PrecisionContext& context() const { return ctx_; }

  /// A(k) = arctan(alpha / f(k))
  const Angle& atom(long k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "index must be >= 1");
    if (static_cast<std::size_t>(k) >= cache_.size()) cache_.resize(static_cast<std::size_t>(k) * 2 + 8);
    auto& slot = cache_[static_cast<std::size_t>(k)];
    if (!slot) slot = arctan_ratio(cfg_.alpha, ExactScalar(cfg_.f(k)), ctx_);
    return *slot;
  }

  int sign(long k) const { return (cfg_.alternating() && k % 2 == 0) ? -1 : 1; }

  /// B(k): product of A(k + j*jstep) for j < m, each factor squared for LP/LPALT.
  BoundedReal boundary(long k) {
    BoundedReal b = BoundedReal::exact(1L, ctx_);
    for (unsigned j = 0; j < cfg_.m; ++j) b *= factor(k + static_cast<long>(j) * cfg_.jstep());
    return b;
  }

  /// S(k) = (-1)^(k-1) B(k) for alternating variants, B(k) otherwise.
  BoundedReal signed_boundary(long k) {
    BoundedReal b = boundary(k);
    return sign(k) < 0 ? -b : b;
  }

  /// The k-th summand as written in the lemma, with its branch flag.
  TermValue term(long k) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "index must be >= 1");
    if (cfg_.alpha.is_zero()) return {k, BoundedReal(ctx_.bits()), true};
    Rational x = cfg_.f(k);
    Rational y = cfg_.f(k + cfg_.span());
    bool ok = true;
    BoundedReal t(ctx_.bits());
    if (cfg_.variant == LemmaVariant::L2_ODD) {
      t = sum_form(x, y);
      ok = add_branch_holds(cfg_.alpha, x, y);
    } else {
      t = difference_form(x, y);
      ok = sub_branch_holds(cfg_.alpha, x, y);
    }
    if (cfg_.squared()) {
      t *= sum_form(x, y);
      ok = ok && add_branch_holds(cfg_.alpha, x, y);
    }
    for (unsigned j = 1; j < cfg_.m; ++j) t *= factor(k + static_cast<long>(j) * cfg_.jstep());
    if (sign(k) < 0) t = -t;
    return {k, std::move(t), ok};
  }

  /// term_k - (S(k) - S(k + stride)); zero within err whenever the telescoping holds at k.
  Angle residual(long k) { return term(k).term - (signed_boundary(k) - signed_boundary(k + cfg_.stride())); }

  /// Sum of terms from `from` to N, ascending.
  BoundedReal direct(long N, long from = 1) {
    BoundedReal s(ctx_.bits());
    for (long k = from; k <= N; ++k) s += term(k).term;
    return s;
  }

  /// Sum over the first stride signed boundaries minus the stride boundaries after N.
  BoundedReal boundary_sum(long N) {
    BoundedReal s(ctx_.bits());
    for (long k = 1; k <= cfg_.stride(); ++k) s += signed_boundary(k);
    return s - remainder_unchecked(N);
  }

  /// Exact value of the tail sum over k > N (valid from the monotone regime on).
  BoundedReal remainder(long N) {
    if (N < regime_start(cfg_)) throw Error(ErrorCode::NotInMonotoneRegime, "N is below the monotone regime");
    return remainder_unchecked(N);
  }

  /// stride * |B(N+1)|, an upper bound on the magnitude of the remainder after N.
  Real remainder_bound(long N) {
    Real r = boundary(N + 1).abs_upper();
    mpfr_mul_si(r.get(), r.get(), cfg_.stride(), MPFR_RNDU);
    return r;
  }

 private:
  BoundedReal factor(long k) {
    const Angle& a = atom(k);
    return cfg_.squared() ? a * a : a;
  }

  BoundedReal remainder_unchecked(long N) {
    BoundedReal s(ctx_.bits());
    for (long k = N + 1; k <= N + cfg_.stride(); ++k) s += signed_boundary(k);
    return s;
  }

  // arctan(alpha (y - x) / (xy + alpha^2))
  Angle difference_form(const Rational& x, const Rational& y) {
    ExactScalar num = cfg_.alpha * ExactScalar(canonical(y - x));
    Rational den = canonical(x * y + cfg_.alpha.square());
    if (num.is_zero()) return BoundedReal(ctx_.bits());
    return arctan_ratio(num, ExactScalar(den), ctx_);
  }

  // arctan(alpha (y + x) / (xy - alpha^2)); xy = alpha^2 gives sign(num) pi/2
  Angle sum_form(const Rational& x, const Rational& y) {
    ExactScalar num = cfg_.alpha * ExactScalar(canonical(y + x));
    Rational den = canonical(x * y - cfg_.alpha.square());
    if (num.is_zero()) return BoundedReal(ctx_.bits());
    return arctan_ratio(num, ExactScalar(den), ctx_);
  }

  LemmaConfig cfg_;
  PrecisionContext ctx_;
  std::vector<std::optional<Angle>> cache_;
};

inline Angle atom(const LemmaConfig& cfg, long k, const PrecisionContext& ctx) { return Telescope(cfg, ctx).atom(k); }
inline BoundedReal boundary(const LemmaConfig& cfg, long k, const PrecisionContext& ctx) {
  return Telescope(cfg, ctx).boundary(k);
}
inline TermValue lhs_term(const LemmaConfig& cfg, long k, const PrecisionContext& ctx) {
  return Telescope(cfg, ctx).term(k);
}
inline BoundedReal partial_sum_direct(const LemmaConfig& cfg, long N, const PrecisionContext& ctx) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  return Telescope(cfg, PrecisionContext::for_terms(ctx.digits, static_cast<unsigned long>(N))).direct(N);
}
inline BoundedReal partial_sum_boundary(const LemmaConfig& cfg, long N, const PrecisionContext& ctx) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be >= 1");
  return Telescope(cfg, ctx).boundary_sum(N);
}
inline BoundedReal tail_remainder(const LemmaConfig& cfg, long N, const PrecisionContext& ctx) {
  return Telescope(cfg, ctx).remainder(N);
}
inline Angle telescoping_residual(const LemmaConfig& cfg, long k, const PrecisionContext& ctx) {
  return Telescope(cfg, ctx).residual(k);
}

/// Sum over k = 1..stride of the signed boundary products, symbolically.
inline ClosedFormExpr rhs_exact(const LemmaConfig& cfg) {
  auto atom_expr = [&](long n) {
    Rational fn = cfg.f(n);
    if (fn == 0) {
      if (cfg.alpha.is_zero()) throw Error(ErrorCode::BothZero, "alpha = 0 with f(k) = 0");
      return ClosedFormExpr::half_pi().scaled(Rational(cfg.alpha.sign()));
    }
    return ClosedFormExpr::atan(cfg.alpha / ExactScalar(fn));
  };
  ClosedFormExpr total;
  for (long k = 1; k <= cfg.stride(); ++k) {
    ClosedFormExpr prod = ClosedFormExpr::constant(1);
    for (unsigned j = 0; j < cfg.m; ++j) {
      ClosedFormExpr a = atom_expr(k + static_cast<long>(j) * cfg.jstep());
      prod = prod * (cfg.squared() ? a * a : a);
    }
    bool negative = cfg.alternating() && k % 2 == 0;
    total = total + (negative ? -prod : prod);
  }
  return simplify(total);
}

/// Smallest N >= regime start with stride*|B(N+1)| < 10^-(digits+2), capped at kMaxDirectTerms.
inline long choose_terms(const LemmaConfig& cfg, unsigned digits) {
  PrecisionContext probe(std::max(20U, std::min(digits, 60U)));
  Telescope t(cfg, probe);
  Real tol(kErrPrec);
  mpfr_set_si(tol.get(), 10, MPFR_RNDD);
  mpfr_pow_si(tol.get(), tol.get(), -static_cast<long>(digits) - 2, MPFR_RNDD);
  auto small_enough = [&](long N) { return mpfr_less_p(t.remainder_bound(N).get(), tol.get()) != 0; };
  long lo = regime_start(cfg);
  if (small_enough(lo)) return lo;
  long hi = lo;
  while (!small_enough(hi)) {
    if (hi >= kMaxDirectTerms) return std::max(kMaxDirectTerms, lo);
    lo = hi;
    hi = std::min(hi * 2, kMaxDirectTerms);
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    (small_enough(mid) ? hi : lo) = mid;
  }
  return hi;
}

struct EvalResult {
  BoundedReal lhs;
  ClosedFormExpr rhs;
  BoundedReal rhs_value;
  bool match = false;
  long N = 0;
  BoundedReal remainder;
  Real remainder_bound;
  std::vector<long> branch_violations;  // k <= N with branch_ok = false
};

/// lhs = direct sum of N terms + exact remainder, compared with the boundary closed form.
inline EvalResult evaluate(const LemmaConfig& cfg, const PrecisionContext& ctx) {
  EvalResult r;
  r.N = choose_terms(cfg, ctx.digits);
  PrecisionContext work = PrecisionContext::for_terms(ctx.digits, static_cast<unsigned long>(r.N));
  work.guard = std::max(work.guard, ctx.guard);
  Telescope t(cfg, work);
  BoundedReal sum(work.bits());
  for (long k = 1; k <= r.N; ++k) {
    TermValue tv = t.term(k);
    if (!tv.branch_ok) r.branch_violations.push_back(k);
    sum += tv.term;
  }
  r.remainder = t.remainder(r.N);
  r.remainder_bound = t.remainder_bound(r.N);
  r.lhs = sum + r.remainder;
  r.rhs = rhs_exact(cfg);
  r.rhs_value = eval_expr(r.rhs, work);
  r.match = overlaps(r.lhs, r.rhs_value);
  return r;
}

inline EvalResult evaluate(const LemmaConfig& cfg, unsigned digits) { return evaluate(cfg, PrecisionContext(digits)); }

}  // namespace atansum
