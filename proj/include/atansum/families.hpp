// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "atansum/algebra.hpp"
#include "atansum/catalog.hpp"
#include "atansum/parser.hpp"
#include "atansum/telescope.hpp"

namespace atansum {

/// Parameter bindings by name: alpha, beta, m, q, theta. Values are exact expressions.
using FamilyParams = std::map<std::string, std::string>;

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"sveqk2u", "pori4ri",      "slsjsoq",      "ivbxym1",
                                                 "lqwviov", "hy3p7rx",      "stcc51n",      "theta-linear",
                                                 "theta-quartic", "theta-sincos", "theta-square"};
  return names;
}

namespace detail {

struct ExactAngle {
  ClosedFormExpr theta;
  ExactScalar sin, cos, tan;
};

[[noreturn]] inline void violated(const std::string& what) { throw Error(ErrorCode::ConstraintViolation, what); }

/// theta must be a rational multiple of pi with |theta| < pi/2 and exact sine and cosine.
inline ExactAngle exact_angle(const std::string& text) {
  ClosedFormExpr th = simplify(parse_closed_form(text));
  Rational r = 0;
  if (!th.empty()) {
    if (th.terms().size() != 1 || th.terms()[0].pi_power != 1 || !th.terms()[0].atoms.empty())
      violated("theta must be a rational multiple of pi with exact sine and cosine; use expand-angle for other values");
    r = th.terms()[0].coeff;
  }
  if (abs(r) >= Rational(1, 2)) violated("theta must satisfy -pi/2 < theta < pi/2");
  int s = r < 0 ? -1 : 1;
  Rational a = abs(r);
  ExactScalar half(Rational(1, 2));
  ExactScalar r2 = ExactScalar::sqrt_of(Rational(2)) * half;
  ExactScalar r3 = ExactScalar::sqrt_of(Rational(3));
  ExactAngle out{th, 0, 1, 0};
  if (a == 0) {
  } else if (a == Rational(1, 6)) {
    out = {th, half, r3 * half, ExactScalar(1) / r3};
  } else if (a == Rational(1, 4)) {
    out = {th, r2, r2, ExactScalar(1)};
  } else if (a == Rational(1, 3)) {
    out = {th, r3 * half, half, r3};
  } else {
    violated("theta = " + to_string(th) + " has no exact sine and cosine; use expand-angle instead");
  }
  if (s < 0) {
    out.sin = -out.sin;
    out.tan = -out.tan;
  }
  return out;
}

class Bindings {
 public:
  Bindings(const std::string& family, const FamilyParams& p) : family_(family), p_(p) {}

  void allow(std::initializer_list<const char*> names) const {
    for (const auto& [k, _] : p_) {
      bool ok = false;
      for (const char* n : names) ok = ok || k == n;
      if (!ok) throw Error(ErrorCode::InvalidArgument, family_ + ": unexpected parameter '" + k + "'");
    }
  }
  bool has(const std::string& name) const { return p_.count(name) != 0; }
  const std::string& text(const std::string& name) const {
    auto it = p_.find(name);
    if (it == p_.end()) throw Error(ErrorCode::InvalidArgument, family_ + ": missing parameter '" + name + "'");
    return it->second;
  }
  ExactScalar scalar(const std::string& name, const char* fallback = nullptr) const {
    if (!has(name) && fallback) return parse_scalar(fallback);
    return parse_scalar(text(name));
  }
  Rational rational(const std::string& name, const char* fallback) const {
    ExactScalar s = scalar(name, fallback);
    if (!s.is_rational()) violated(family_ + ": " + name + " must be rational");
    return s.coefficient();
  }
  unsigned positive(const std::string& name) const {
    if (!has(name)) return 1;
    ExactScalar s = scalar(name);
    if (!s.is_rational() || s.coefficient().get_den() != 1 || s.coefficient() < 1 || s.coefficient() > 10000)
      violated(family_ + ": " + name + " must be a positive integer");
    return static_cast<unsigned>(s.coefficient().get_num().get_ui());
  }

 private:
  std::string family_;
  const FamilyParams& p_;
};

inline SequenceSpec linear_f(const Rational& beta) {
  return SequenceSpec(Polynomial(std::vector<Rational>{beta, Rational(1)}));
}
inline SequenceSpec quadratic_f(long b, const Rational& c) {
  return SequenceSpec(Polynomial(std::vector<Rational>{c, Rational(b), Rational(1)}));
}

inline std::string describe(const FamilyParams& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v;
  return s;
}

}  // namespace detail

/// Binds a theorem family (or an angle family) to concrete parameters.
/// The record's rhs is the family's finite boundary sum (or the angle) and its printed
/// arguments are derived from the configuration.
inline IdentityRecord family_instantiate(const std::string& family, const FamilyParams& params) {
  using detail::violated;
  detail::Bindings b(family, params);
  IdentityRecord rec;
  rec.id = family + "(" + detail::describe(params) + ")";
  rec.family = family;
  bool theta_family = family.rfind("theta-", 0) == 0;

  if (theta_family) {
    b.allow({"theta"});
    detail::ExactAngle a = detail::exact_angle(b.text("theta"));
    if (family == "theta-linear") {
      rec.cfg = LemmaConfig(LemmaVariant::L1, SequenceSpec(Polynomial::k()), a.tan, 1, 1);
      rec.rhs = a.theta;
    } else if (family == "theta-quartic") {
      rec.cfg = LemmaConfig(LemmaVariant::L1, detail::quadratic_f(-1, Rational(1, 2)), a.tan * ExactScalar(Rational(1, 2)),
                            1, 1);
      rec.rhs = a.theta;
    } else if (family == "theta-sincos" || family == "theta-square") {
      if (!a.cos.is_rational()) violated(family + ": cos(theta) must be rational; use expand-angle instead");
      if (family == "theta-sincos") {
        rec.cfg = LemmaConfig(LemmaVariant::L1, detail::linear_f(a.cos.coefficient()), a.sin, 1, 1);
        rec.rhs = a.theta.scaled(Rational(1, 2));
      } else {
        rec.cfg = LemmaConfig(LemmaVariant::L1, detail::quadratic_f(-2, canonical(1 + a.cos.coefficient())), a.sin, 2, 1);
        rec.rhs = (a.theta * a.theta).scaled(Rational(1, 2));
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
    }
  } else {
    b.allow({"alpha", "beta", "m", "q"});
    unsigned m = b.positive("m");
    unsigned q = b.positive("q");
    Rational beta = b.rational("beta", "0");
    ExactScalar alpha = 1;
    if (family == "pori4ri") {
      if (b.has("alpha")) violated("pori4ri: alpha is fixed to m*q/2");
      alpha = ExactScalar(Rational(static_cast<long>(m * q), 2));
    } else {
      alpha = b.scalar("alpha");
    }
    if ((family == "sveqk2u" || family == "pori4ri") && beta < -1) violated(family + ": beta >= -1 is required");
    if ((family == "hy3p7rx" || family == "stcc51n") && q % 2 == 0) violated(family + ": q must be odd");
    long mq = static_cast<long>(m) * static_cast<long>(q);
    if (family == "sveqk2u" || family == "pori4ri") {
      rec.cfg = LemmaConfig(LemmaVariant::L1, detail::linear_f(beta), alpha, m, q);
    } else if (family == "slsjsoq") {
      rec.cfg = LemmaConfig(LemmaVariant::L1, detail::quadratic_f(-mq, beta), alpha, m, q);
    } else if (family == "ivbxym1") {
      rec.cfg = LemmaConfig(LemmaVariant::LP, detail::linear_f(beta), alpha, m, q);
    } else if (family == "lqwviov") {
      rec.cfg = LemmaConfig(LemmaVariant::LP, detail::quadratic_f(-mq, beta), alpha, m, q);
    } else if (family == "hy3p7rx") {
      rec.cfg = LemmaConfig(LemmaVariant::L2_ODD, detail::linear_f(beta), alpha, m, q);
    } else if (family == "stcc51n") {
      rec.cfg = LemmaConfig(LemmaVariant::L2_ODD, detail::quadratic_f(-mq, beta), alpha, m, q);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
    }
    rec.rhs = rhs_exact(rec.cfg);
  }

  rec.f_text = rec.cfg.f.str();
  rec.alpha_text = rec.cfg.alpha.str();
  rec.rhs = simplify(rec.rhs);
  rec.rhs_text = to_string(rec.rhs);
  std::vector<Slot> slots{{Slot::Main, 0}};
  if (rec.cfg.squared()) slots.push_back({Slot::Second, 0});
  for (unsigned j = 1; j < rec.cfg.m; ++j) slots.push_back({Slot::Cofactor, j});
  for (const Slot& s : slots) {
    SurdRationalFunction e = lhs_argument(rec.cfg, s);
    rec.printed_args.push_back({s, e.str(), e});
  }
  rec.notes = "instantiated from " + family;
  return rec;
}

}  // namespace atansum
