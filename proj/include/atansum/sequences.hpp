// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "atansum/error.hpp"
#include "atansum/exact_scalar.hpp"
#include "atansum/polynomial.hpp"

namespace atansum {

/// f(k) = base(k)^power with base of degree >= 1 and positive leading coefficient.
class SequenceSpec {
 public:
  SequenceSpec() : SequenceSpec(Polynomial::k()) {}
  explicit SequenceSpec(Polynomial base, unsigned power = 1) : base_(std::move(base)), power_(power) {
    if (base_.degree() < 1) throw Error(ErrorCode::InvalidArgument, "sequence base must have degree >= 1");
    if (base_.leading() <= 0)
      throw Error(ErrorCode::InvalidArgument, "sequence base must have positive leading coefficient");
    if (power_ < 1) throw Error(ErrorCode::InvalidArgument, "sequence power must be >= 1");
    expanded_ = base_.pow(power_);
  }

  const Polynomial& base() const { return base_; }
  unsigned power() const { return power_; }
  /// base^power as a single polynomial.
  const Polynomial& expanded() const { return expanded_; }

  Rational operator()(const Rational& k) const { return expanded_.eval(k); }
  Rational operator()(long k) const { return expanded_.eval(Rational(k)); }

  std::string str() const {
    if (power_ == 1) return base_.str();
    return "(" + base_.str() + ")^" + std::to_string(power_);
  }

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b) { return a.expanded_ == b.expanded_; }

 private:
  Polynomial base_;
  unsigned power_;
  Polynomial expanded_;
};

inline Rational eval_seq(const SequenceSpec& f, long k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "sequence index must be >= 1");
  return f(k);
}

struct SequenceViolation {
  long k;
  Rational value;
  bool nonpositive;  // f(k) <= 0
  bool decreasing;   // f(k+1) < f(k)
};

/// k0: first index from which f is strictly increasing on the integers.
/// k_positive: first index from which f is also positive (the lemma hypothesis regime).
struct HypothesisReport {
  long k0 = 1;
  long k_positive = 1;
  long scanned_to = 0;
  std::vector<SequenceViolation> violations;  // indices in [1, k_positive)

  bool clean() const { return violations.empty(); }
};

namespace detail {

// 1 + max |a_i / a_n|: every real root lies below this.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational best = 0;
  if (p.degree() < 1) return Rational(0);
  Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) best = std::max(best, Rational(abs(p.coeff(i)) / lead));
  return best + 1;
}

inline long ceil_long(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

}  // namespace detail

/// Scans f exactly on [1, max(k_max, root bound)]; beyond the root bounds of f and of the
/// forward difference f(k+1) - f(k) both stay positive because the leading coefficient is.
inline HypothesisReport hypothesis_report(const SequenceSpec& f, long k_max) {
  if (k_max < 2) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 2");
  const Polynomial& p = f.expanded();
  Polynomial diff = p.shifted(Rational(1)) - p;
  long bound = std::max(detail::ceil_long(detail::cauchy_bound(p)), detail::ceil_long(detail::cauchy_bound(diff)));
  long limit = std::max(k_max, bound + 1);

  HypothesisReport rep;
  rep.scanned_to = limit;
  long last_nonincreasing = 0;
  long last_bad = 0;
  std::vector<SequenceViolation> all;
  Rational prev = p.eval(Rational(1));
  for (long k = 1; k <= limit; ++k) {
    Rational next = p.eval(Rational(k + 1));
    bool nonpos = prev <= 0;
    bool dec = next < prev;
    if (next <= prev) last_nonincreasing = k;
    if (nonpos || dec) {
      last_bad = k;
      all.push_back({k, prev, nonpos, dec});
    }
    prev = std::move(next);
  }
  rep.k0 = last_nonincreasing + 1;
  rep.k_positive = std::max(last_bad + 1, rep.k0);
  if (rep.k0 > k_max) throw Error(ErrorCode::NeverMonotone, "f is not monotone from any k0 <= k_max");
  for (auto& v : all)
    if (v.k < rep.k_positive) rep.violations.push_back(std::move(v));
  return rep;
}

}  // namespace atansum
