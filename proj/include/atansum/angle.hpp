// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "atansum/error.hpp"
#include "atansum/numerics.hpp"
#include "atansum/polynomial.hpp"

namespace atansum {

// Expansions of an arbitrary angle |theta| < pi/2 as an arctangent series:
//   linear:  theta = sum atan(t / (k^2 + k + t^2)),           t = tan(theta)
//   quartic: theta = sum atan(4 k t / (4 k^4 + sec^2 theta))
// Both are the one-factor telescoping sums with f(k) = k (alpha = t) and
// f(k) = k^2 - k + 1/2 (alpha = t/2); the tail after N terms is atan(alpha / f(N+1)).

enum class AngleFamily { Linear, Quartic };

inline AngleFamily parse_angle_family(std::string_view s) {
  if (s == "linear") return AngleFamily::Linear;
  if (s == "quartic") return AngleFamily::Quartic;
  throw Error(ErrorCode::InvalidArgument, "unknown angle family '" + std::string(s) + "'");
}

struct AngleExpansion {
  AngleFamily family;
  BoundedReal theta;
  BoundedReal alpha;
  long terms = 0;
  std::vector<BoundedReal> leading_terms;
  BoundedReal partial;  // sum of the first `terms` summands
  BoundedReal tail;     // exact remainder
  BoundedReal value;    // partial + tail
  bool reconstructed = false;
  long certified_digits = 0;
};

inline AngleExpansion expand_angle(const BoundedReal& theta, AngleFamily family, const PrecisionContext& ctx,
                                   long terms = 64, int show = 5) {
  Real limit(ctx.bits());
  mpfr_const_pi(limit.get(), MPFR_RNDD);
  mpfr_div_2ui(limit.get(), limit.get(), 1, MPFR_RNDD);
  if (mpfr_greaterequal_p(theta.abs_upper().get(), limit.get()))
    throw Error(ErrorCode::InvalidArgument, "|theta| must be below pi/2");

  AngleExpansion out;
  out.family = family;
  out.theta = theta;
  out.alpha = theta.tan();
  Polynomial f = Polynomial::k();
  if (family == AngleFamily::Quartic) {
    out.alpha = out.alpha.times_pow2(-1);
    f = Polynomial(std::vector<Rational>{Rational(1, 2), Rational(-1), Rational(1)});
  }
  out.terms = terms;
  PrecisionContext work = PrecisionContext::for_terms(ctx.digits, static_cast<unsigned long>(terms));
  const BoundedReal& a = out.alpha;
  BoundedReal a2 = a * a;
  out.partial = BoundedReal(work.bits());
  if (!a.is_exact_zero()) {
    for (long k = 1; k <= terms; ++k) {
      Rational x = f.eval(Rational(k));
      Rational y = f.eval(Rational(k + 1));
      BoundedReal num = a * BoundedReal::exact(canonical(y - x), work);
      BoundedReal den = BoundedReal::exact(canonical(x * y), work) + a2;
      BoundedReal t = arctan_ratio(num, den, work);
      if (k <= show) out.leading_terms.push_back(t);
      out.partial += t;
    }
    out.tail = arctan_ratio(a, BoundedReal::exact(f.eval(Rational(terms + 1)), work), work);
  } else {
    out.tail = BoundedReal(work.bits());
    for (long k = 1; k <= std::min<long>(show, terms); ++k) out.leading_terms.emplace_back(work.bits());
  }
  out.value = out.partial + out.tail;
  out.certified_digits = out.value.certified_digits();
  out.reconstructed = overlaps(out.value, theta) && out.certified_digits >= static_cast<long>(ctx.digits);
  return out;
}

/// The general term with tan(theta) shown to `digits` significant digits.
inline std::string angle_term_formula(const AngleExpansion& e, int digits = 12) {
  BoundedReal t = e.family == AngleFamily::Linear ? e.alpha : e.alpha.times_pow2(1);
  std::string ts = t.value().sci(digits);
  if (e.family == AngleFamily::Linear) return "atan(" + ts + "/(k^2+k+(" + ts + ")^2))";
  return "atan(4*k*" + ts + "/(4*k^4+1+(" + ts + ")^2))";
}

}  // namespace atansum
