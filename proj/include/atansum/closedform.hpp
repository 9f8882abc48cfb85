// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "atansum/exact_scalar.hpp"
#include "atansum/numerics.hpp"

namespace atansum {

/// arctan(arg), or the symbol pi/2 produced by arctan(lambda/0).
struct ArctanAtom {
  bool half_pi = false;
  ExactScalar arg;

  static ArctanAtom atan(ExactScalar a) { return {false, std::move(a)}; }
  static ArctanAtom halfpi() { return {true, ExactScalar(0)}; }

  friend bool operator==(const ArctanAtom& a, const ArctanAtom& b) {
    return a.half_pi == b.half_pi && a.arg == b.arg;
  }
  friend bool operator<(const ArctanAtom& a, const ArctanAtom& b) {
    if (a.half_pi != b.half_pi) return a.half_pi;
    auto c = a.arg <=> b.arg;
    if (c != 0) return c < 0;
    return a.arg.radicand() < b.arg.radicand();
  }

  std::string str() const { return half_pi ? "(pi/2)" : "atan(" + arg.str() + ")"; }
};

/// coeff * pi^pi_power * prod(atoms)
struct CfTerm {
  Rational coeff = 1;
  unsigned pi_power = 0;
  std::vector<ArctanAtom> atoms;  // sorted

  bool same_shape(const CfTerm& o) const { return pi_power == o.pi_power && atoms == o.atoms; }
};

namespace detail {

inline bool shape_less(const CfTerm& a, const CfTerm& b) {
  if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
  if (a.pi_power != b.pi_power) return a.pi_power > b.pi_power;
  return std::lexicographical_compare(a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end());
}

}  // namespace detail

/// Sum of CfTerms. Arithmetic keeps terms unmerged; call simplify() for the canonical form.
class ClosedFormExpr {
 public:
  ClosedFormExpr() = default;
  explicit ClosedFormExpr(std::vector<CfTerm> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_) std::sort(t.atoms.begin(), t.atoms.end());
  }

  static ClosedFormExpr constant(const Rational& c) {
    if (c == 0) return {};
    return ClosedFormExpr({CfTerm{canonical(c), 0, {}}});
  }
  static ClosedFormExpr pi() { return ClosedFormExpr({CfTerm{1, 1, {}}}); }
  static ClosedFormExpr half_pi() { return ClosedFormExpr({CfTerm{1, 0, {ArctanAtom::halfpi()}}}); }
  static ClosedFormExpr atan(const ExactScalar& a) { return ClosedFormExpr({CfTerm{1, 0, {ArctanAtom::atan(a)}}}); }

  const std::vector<CfTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend ClosedFormExpr operator+(ClosedFormExpr a, const ClosedFormExpr& b) {
    a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
    return a;
  }
  ClosedFormExpr operator-() const {
    ClosedFormExpr r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  friend ClosedFormExpr operator-(const ClosedFormExpr& a, const ClosedFormExpr& b) { return a + (-b); }

  friend ClosedFormExpr operator*(const ClosedFormExpr& a, const ClosedFormExpr& b) {
    std::vector<CfTerm> out;
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        CfTerm t{canonical(x.coeff * y.coeff), x.pi_power + y.pi_power, x.atoms};
        t.atoms.insert(t.atoms.end(), y.atoms.begin(), y.atoms.end());
        out.push_back(std::move(t));
      }
    }
    return ClosedFormExpr(std::move(out));
  }

  ClosedFormExpr scaled(const Rational& s) const {
    ClosedFormExpr r = *this;
    for (auto& t : r.terms_) t.coeff = canonical(t.coeff * s);
    return r;
  }

  ClosedFormExpr pow(unsigned n) const {
    ClosedFormExpr r = constant(1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  /// Single term with no atoms and no pi: its rational value.
  bool is_rational_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].pi_power == 0 && terms_[0].atoms.empty());
  }
  Rational rational_value() const { return terms_.empty() ? Rational(0) : terms_[0].coeff; }

 private:
  std::vector<CfTerm> terms_;
};

/// Whitelisted exact rewrites only: atan(0), atan(+-1), atan(+-sqrt 3), atan(+-1/sqrt 3),
/// the pi/2 atom, oddness atan(-x) = -atan(x), then merging of like terms.
inline ClosedFormExpr simplify(const ClosedFormExpr& e) {
  const ExactScalar root3 = ExactScalar::sqrt_of(Rational(3));
  const ExactScalar inv_root3 = ExactScalar(1) / root3;
  std::vector<CfTerm> rewritten;
  for (const auto& t : e.terms()) {
    CfTerm out{t.coeff, t.pi_power, {}};
    bool zero = t.coeff == 0;
    for (const auto& a : t.atoms) {
      if (zero) break;
      if (a.half_pi) {
        out.coeff /= 2;
        ++out.pi_power;
        continue;
      }
      ExactScalar x = a.arg;
      if (x.is_zero()) {
        zero = true;
        continue;
      }
      if (x.sign() < 0) {
        out.coeff = -out.coeff;
        x = -x;
      }
      if (x == ExactScalar(1)) {
        out.coeff /= 4;
        ++out.pi_power;
      } else if (x == root3) {
        out.coeff /= 3;
        ++out.pi_power;
      } else if (x == inv_root3) {
        out.coeff /= 6;
        ++out.pi_power;
      } else {
        out.atoms.push_back(ArctanAtom::atan(x));
      }
    }
    if (zero) continue;
    out.coeff.canonicalize();
    std::sort(out.atoms.begin(), out.atoms.end());
    rewritten.push_back(std::move(out));
  }
  std::sort(rewritten.begin(), rewritten.end(), detail::shape_less);
  std::vector<CfTerm> merged;
  for (auto& t : rewritten) {
    if (!merged.empty() && merged.back().same_shape(t)) {
      merged.back().coeff += t.coeff;
      merged.back().coeff.canonicalize();
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const CfTerm& t) { return t.coeff == 0; });
  return ClosedFormExpr(std::move(merged));
}

inline BoundedReal eval_expr(const ClosedFormExpr& e, const PrecisionContext& ctx) {
  BoundedReal total(ctx.bits());
  BoundedReal pi = pi_const(ctx);
  for (const auto& t : e.terms()) {
    BoundedReal v = BoundedReal::exact(t.coeff, ctx);
    if (t.pi_power > 0) v = v * pi.pow(t.pi_power);
    for (const auto& a : t.atoms) v = v * (a.half_pi ? pi.times_pow2(-1) : atan_exact(a.arg, ctx));
    total += v;
  }
  return total;
}

inline bool expr_equal(const ClosedFormExpr& a, const ClosedFormExpr& b, const PrecisionContext& ctx) {
  return overlaps(eval_expr(a, ctx), eval_expr(b, ctx));
}

/// Canonical text, e.g. "1/64*pi^3", "1/2*pi*atan(2)", "atan(sqrt(3))^2*atan(1/2)".
inline std::string to_string(const ClosedFormExpr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& t : e.terms()) {
    std::vector<std::string> factors;
    if (t.pi_power == 1) factors.emplace_back("pi");
    if (t.pi_power > 1) factors.push_back("pi^" + std::to_string(t.pi_power));
    for (size_t i = 0; i < t.atoms.size();) {
      size_t j = i;
      while (j < t.atoms.size() && t.atoms[j] == t.atoms[i]) ++j;
      std::string f = t.atoms[i].str();
      if (j - i > 1) f += "^" + std::to_string(j - i);
      factors.push_back(std::move(f));
      i = j;
    }
    Rational mag = abs(t.coeff);
    std::string body;
    if (factors.empty()) {
      body = to_string(mag);
    } else {
      if (mag != 1) body = to_string(mag) + "*";
      for (size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
    }
    if (out.empty()) {
      out = (t.coeff < 0 ? "-" : "") + body;
    } else {
      out += (t.coeff < 0 ? "-" : "+") + body;
    }
  }
  return out;
}

}  // namespace atansum
