// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "atansum/verify.hpp"

namespace atansum {

struct Summary {
  std::size_t records = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t residual_clean = 0;
  Real max_residual;
};

inline Summary summarize(const std::vector<VerificationReport>& reps) {
  Summary s;
  s.records = reps.size();
  for (const auto& r : reps) {
    (r.passed() ? s.passed : s.failed)++;
    if (r.residual_ok && r.error.empty()) s.residual_clean++;
    if (mpfr_greater_p(r.residual_max.get(), s.max_residual.get()))
      mpfr_set(s.max_residual.get(), r.residual_max.get(), MPFR_RNDU);
  }
  return s;
}

namespace detail {

inline std::string join(const std::vector<long>& v, const char* sep = " ") {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : sep) + std::to_string(x);
  return s;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

/// One JSON object per report; `seconds` only when timing is requested so output is reproducible.
inline nlohmann::ordered_json report_json(const VerificationReport& r, bool timing = false) {
  using J = nlohmann::ordered_json;
  const int d = static_cast<int>(r.digits);
  J j;
  j["id"] = r.id;
  j["family"] = r.family;
  j["config"] = r.config;
  j["digits"] = r.digits;
  j["passed"] = r.passed();
  j["match"] = r.match;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  j["lhs"] = r.lhs.str(d);
  j["lhs_err"] = r.lhs.err_str();
  j["rhs"] = r.rhs.str(d);
  j["rhs_err"] = r.rhs.err_str();
  j["diff_bound"] = r.diff.sci(3);
  j["terms"] = r.N;
  j["remainder_bound"] = r.remainder_bound.sci(3);
  j["rhs_exact"] = r.rhs_exact;
  j["rhs_exact_agrees"] = r.rhs_exact_agrees;
  j["constraints_ok"] = r.constraints_ok;
  J viol = J::array();
  for (const auto& v : r.hypothesis.violations)
    viol.push_back({{"k", v.k}, {"f", to_string(v.value)}, {"nonpositive", v.nonpositive}, {"decreasing", v.decreasing}});
  j["hypothesis"] = {{"k0", r.hypothesis.k0}, {"k_positive", r.hypothesis.k_positive}, {"violations", viol}};
  j["regime_start"] = r.regime;
  j["branch_violations"] = r.branch_violations;
  j["residual_max"] = r.residual_max.sci(3);
  j["residual_jumps"] = r.residual_jumps;
  J printed = J::array();
  for (const auto& p : r.printed)
    printed.push_back({{"slot", p.slot}, {"printed", p.printed}, {"derived", p.derived}, {"ok", p.ok}});
  j["printed"] = printed;
  if (r.probe) {
    J p{{"alpha", r.probe->alpha}, {"rejected", r.probe->rejected}};
    if (r.probe->error.empty()) {
      p["lhs"] = r.probe->lhs.str(d);
      p["rhs"] = r.probe->rhs.str(d);
    } else {
      p["error"] = r.probe->error;
    }
    j["probe"] = p;
  }
  if (!r.alts.empty()) {
    J alts = J::array();
    for (const auto& a : r.alts)
      alts.push_back({{"family", a.family}, {"config", a.config}, {"lhs", a.lhs.str(d)}, {"match", a.match}});
    j["alt_configs"] = alts;
  }
  if (timing) j["seconds"] = r.seconds;
  return j;
}

inline std::string reports_json(const std::vector<VerificationReport>& reps, bool timing = false) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reps) arr.push_back(report_json(r, timing));
  return arr.dump(2) + "\n";
}

inline std::string reports_csv(const std::vector<VerificationReport>& reps, bool timing = false) {
  std::ostringstream os;
  os << "id,family,digits,passed,match,printed_ok,probe_ok,alts_ok,terms,lhs,rhs,diff_bound,residual_max,"
        "residual_jumps,branch_violations,error";
  if (timing) os << ",seconds";
  os << "\n";
  for (const auto& r : reps) {
    const int d = static_cast<int>(r.digits);
    bool ok = r.error.empty();
    os << detail::csv_quote(r.id) << ',' << detail::csv_quote(r.family) << ',' << r.digits << ',' << r.passed() << ','
       << r.match << ',' << r.printed_ok() << ',' << r.probe_ok() << ',' << r.alts_ok() << ',' << r.N << ','
       << (ok ? r.lhs.str(d) : "") << ',' << (ok ? r.rhs.str(d) : "") << ',' << (ok ? r.diff.sci(3) : "") << ','
       << (ok ? r.residual_max.sci(3) : "") << ',' << detail::join(r.residual_jumps) << ','
       << detail::join(r.branch_violations) << ',' << detail::csv_quote(r.error);
    if (timing) os << ',' << r.seconds;
    os << "\n";
  }
  return os.str();
}

inline std::string reports_text(const std::vector<VerificationReport>& reps, bool timing = false) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-28s %-6s %-5s %-10s %-10s %s\n", "id", "result", "terms", "diff", "residual",
                "notes");
  os << line;
  for (const auto& r : reps) {
    std::string notes;
    if (!r.error.empty()) notes = "error: " + r.error;
    if (!r.printed_ok()) notes += " printed-form mismatch;";
    if (!r.probe_ok()) notes += " probe not rejected;";
    if (!r.alts_ok()) notes += " alternative config mismatch;";
    if (!r.constraints_ok) notes += " constraint violated;";
    if (!r.residual_jumps.empty()) notes += " residual jumps at k=" + detail::join(r.residual_jumps, ",") + ";";
    if (timing) notes += " " + std::to_string(r.seconds) + "s";
    bool ok = r.error.empty();
    std::snprintf(line, sizeof line, "%-28s %-6s %-5ld %-10s %-10s %s\n", r.id.c_str(), r.passed() ? "PASS" : "FAIL",
                  r.N, ok ? r.diff.sci(2).c_str() : "-", ok ? r.residual_max.sci(2).c_str() : "-", notes.c_str());
    os << line;
  }
  Summary s = summarize(reps);
  os << "\n"
     << s.passed << " of " << s.records << " identities verified, " << s.failed << " failed; " << s.residual_clean
     << " residual-clean; max residual " << s.max_residual.sci(3) << "\n";
  return os.str();
}

}  // namespace atansum
