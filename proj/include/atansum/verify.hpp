// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "atansum/algebra.hpp"
#include "atansum/catalog.hpp"
#include "atansum/telescope.hpp"

namespace atansum {

/// Indices scanned for branch flags and telescoping residuals.
inline constexpr long kResidualScan = 500;

struct PrintedCheck {
  std::string slot;
  std::string printed;
  std::string derived;
  bool ok = false;
};

struct ProbeResult {
  std::string alpha;
  BoundedReal lhs;
  BoundedReal rhs;
  bool rejected = false;  // the probe value differs from its closed form, as expected
  std::string error;
};

struct AltResult {
  std::string family;
  std::string config;
  BoundedReal lhs;
  bool match = false;
};

struct VerificationReport {
  std::string id;
  std::string family;
  std::string config;
  unsigned digits = 0;
  BoundedReal lhs;
  BoundedReal rhs;
  Real diff;  // upper bound on |lhs - rhs|
  bool match = false;
  long N = 0;
  Real remainder_bound;
  std::string rhs_exact;
  bool rhs_exact_agrees = false;
  bool constraints_ok = true;
  HypothesisReport hypothesis;
  long regime = 1;
  std::vector<long> branch_violations;
  std::vector<long> residual_jumps;
  Real residual_max;
  bool residual_ok = false;
  std::vector<PrintedCheck> printed;
  std::optional<ProbeResult> probe;
  std::vector<AltResult> alts;
  double seconds = 0;
  std::string error;

  bool printed_ok() const {
    return std::all_of(printed.begin(), printed.end(), [](const PrintedCheck& p) { return p.ok; });
  }
  bool probe_ok() const { return !probe || probe->rejected; }
  bool alts_ok() const {
    return std::all_of(alts.begin(), alts.end(), [](const AltResult& a) { return a.match; });
  }
  /// Value match, printed forms, constraints, probe and alternative configurations.
  /// Residual jumps are reported separately and do not change the verdict.
  bool passed() const {
    return error.empty() && match && constraints_ok && printed_ok() && probe_ok() && alts_ok();
  }
};

namespace detail {

inline Real pow10_down(long e) {
  Real r(kErrPrec);
  mpfr_set_si(r.get(), 10, MPFR_RNDD);
  mpfr_pow_si(r.get(), r.get(), e, MPFR_RNDD);
  return r;
}

inline Real diff_upper(const BoundedReal& a, const BoundedReal& b) { return distance_upper(a, b); }

}  // namespace detail

/// Value of the printed sum: lhs_sign * (lemma sum - first index_shift lemma terms).
inline BoundedReal record_lhs(const LemmaConfig& cfg, long index_shift, int lhs_sign, const PrecisionContext& ctx,
                              EvalResult* detail_out = nullptr) {
  EvalResult r = evaluate(cfg, ctx);
  BoundedReal v = r.lhs;
  if (index_shift > 0) {
    Telescope t(cfg, PrecisionContext(ctx.digits, ctx.guard + 4));
    v -= t.direct(index_shift);
  }
  if (lhs_sign < 0) v = -v;
  if (detail_out) *detail_out = std::move(r);
  return v;
}

inline VerificationReport verify_identity(const IdentityRecord& rec, unsigned digits) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.id = rec.id;
  rep.family = rec.family;
  rep.config = rec.cfg.str();
  rep.digits = digits;
  try {
    PrecisionContext ctx(digits);
    for (const auto& c : rec.constraints) rep.constraints_ok = rep.constraints_ok && constraint_holds(c, rec.cfg);

    EvalResult ev;
    rep.lhs = record_lhs(rec.cfg, rec.index_shift, rec.lhs_sign, ctx, &ev);
    rep.N = ev.N;
    rep.remainder_bound = ev.remainder_bound;
    rep.rhs = eval_expr(rec.rhs, PrecisionContext(digits, ctx.guard + 4));
    rep.diff = detail::diff_upper(rep.lhs, rep.rhs);
    rep.match = overlaps(rep.lhs, rep.rhs) && difference_below(rep.lhs, rep.rhs, -static_cast<int>(digits) + 2);

    // Symbolic boundary sum against the stated closed form; only meaningful without shift/sign.
    rep.rhs_exact = to_string(ev.rhs);
    if (rec.index_shift == 0) {
      ClosedFormExpr stated = simplify(rec.lhs_sign < 0 ? -rec.rhs : rec.rhs);
      rep.rhs_exact_agrees = to_string(stated) == rep.rhs_exact || overlaps(ev.rhs_value, eval_expr(stated, ctx));
    } else {
      rep.rhs_exact_agrees = overlaps(ev.rhs_value, ev.lhs);
    }

    rep.hypothesis = hypothesis_report(rec.cfg.f, kResidualScan);
    rep.regime = regime_start(rec.cfg);

    Telescope t(rec.cfg, ctx);
    Real tol = detail::pow10_down(-static_cast<int>(digits) + 2);
    rep.residual_max = Real(kErrPrec);
    for (long k = 1; k <= kResidualScan; ++k) {
      TermValue tv = t.term(k);
      if (!tv.branch_ok) rep.branch_violations.push_back(k);
      Real r = (tv.term - (t.signed_boundary(k) - t.signed_boundary(k + rec.cfg.stride()))).abs_upper();
      if (mpfr_greater_p(r.get(), rep.residual_max.get())) mpfr_set(rep.residual_max.get(), r.get(), MPFR_RNDU);
      if (mpfr_greater_p(r.get(), tol.get())) rep.residual_jumps.push_back(k);
    }
    rep.residual_ok = rep.residual_jumps.empty();

    for (const auto& pa : rec.printed_args) {
      SurdRationalFunction derived = lhs_argument(rec.cfg, pa.slot).shifted(Rational(rec.index_shift));
      rep.printed.push_back({pa.slot.str(), pa.text, derived.str(), derived == pa.expr});
    }

    if (rec.probe) {
      ProbeResult pr;
      pr.alpha = rec.probe->alpha_text;
      try {
        LemmaConfig pc(rec.cfg.variant, rec.cfg.f, rec.probe->alpha, rec.cfg.m, rec.cfg.q);
        pr.lhs = record_lhs(pc, rec.index_shift, rec.lhs_sign, ctx);
        pr.rhs = eval_expr(rec.probe->rhs, ctx);
        pr.rejected = !overlaps(pr.lhs, pr.rhs);
      } catch (const Error& e) {
        pr.error = e.what();
      }
      rep.probe = std::move(pr);
    }

    for (const auto& alt : rec.alt_configs) {
      AltResult ar{alt.family, alt.cfg.str(), record_lhs(alt.cfg, 0, 1, ctx), false};
      ar.match = overlaps(ar.lhs, rep.rhs) && difference_below(ar.lhs, rep.rhs, -static_cast<int>(digits) + 2);
      rep.alts.push_back(std::move(ar));
    }
  } catch (const Error& e) {
    rep.error = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Verifies every record on a pool of worker threads; results are ordered by id.
inline std::vector<VerificationReport> verify_all(const std::vector<IdentityRecord>& records, unsigned digits,
                                                  unsigned threads = 0) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, records.size())));
  std::vector<VerificationReport> out(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) out[i] = verify_identity(records[i], digits);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

}  // namespace atansum
