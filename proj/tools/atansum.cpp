// SPDX-License-Identifier: Apache-2.0
// atansum: verify, evaluate and explore telescoping arctangent sums.
#include <CLI11.hpp>
#include <json.hpp>

#include <atansum/catalog_data.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "atansum/angle.hpp"
#include "atansum/families.hpp"
#include "atansum/report.hpp"
#include "atansum/verify.hpp"

using namespace atansum;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfigError = 2;

std::vector<IdentityRecord> open_catalog(const std::string& path) {
  if (!path.empty()) return load_catalog_file(path);
  if (const char* env = std::getenv("ATANSUM_CATALOG"); env && *env) return load_catalog_file(env);
  return load_catalog(embedded::kCatalogJson);
}

const IdentityRecord& lookup(const std::vector<IdentityRecord>& recs, const std::string& id) {
  const IdentityRecord* r = find_record(recs, id);
  if (!r) throw Error(ErrorCode::InvalidArgument, "unknown id '" + id + "'");
  return *r;
}

void print_value(std::ostream& os, const char* label, const BoundedReal& v, int digits) {
  os << label << v.str(digits) << "  +/- " << v.err_str() << "  (" << v.certified_digits() << " certified digits)\n";
}

int cmd_verify(const std::string& id, bool all, unsigned digits, const std::string& format, bool timing,
               unsigned threads, const std::string& catalog) {
  auto recs = open_catalog(catalog);
  std::vector<VerificationReport> reps;
  if (all) {
    reps = verify_all(recs, digits, threads);
  } else {
    if (id.empty()) throw Error(ErrorCode::InvalidArgument, "give a record id or --all");
    reps.push_back(verify_identity(lookup(recs, id), digits));
  }
  if (format == "json") {
    std::cout << reports_json(reps, timing);
  } else if (format == "csv") {
    std::cout << reports_csv(reps, timing);
  } else {
    std::cout << reports_text(reps, timing);
  }
  Summary s = summarize(reps);
  return s.failed == 0 ? kOk : kMismatch;
}

int cmd_eval(const std::string& f, const std::string& alpha, unsigned m, unsigned q, const std::string& variant,
             unsigned digits, const std::string& format) {
  auto v = parse_variant(variant);
  if (!v) throw Error(ErrorCode::InvalidArgument, "unknown variant '" + variant + "'");
  LemmaConfig cfg(*v, parse_sequence(f), parse_scalar(alpha), m, q);
  EvalResult r = evaluate(cfg, digits);
  const int d = static_cast<int>(digits);
  if (format == "json") {
    ojson j{{"config", cfg.str()},
            {"lhs", r.lhs.str(d)},
            {"lhs_err", r.lhs.err_str()},
            {"certified_digits", r.lhs.certified_digits()},
            {"terms", r.N},
            {"remainder", r.remainder.str(d)},
            {"remainder_bound", r.remainder_bound.sci(3)},
            {"rhs_exact", to_string(r.rhs)},
            {"rhs", r.rhs_value.str(d)},
            {"match", r.match},
            {"branch_violations", r.branch_violations}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "config      " << cfg.str() << "\n";
    print_value(std::cout, "lhs         ", r.lhs, d);
    std::cout << "terms       " << r.N << " direct + exact remainder (bound " << r.remainder_bound.sci(3) << ")\n";
    std::cout << "closed form " << to_string(r.rhs) << "\n";
    print_value(std::cout, "rhs         ", r.rhs_value, d);
    std::cout << "match       " << (r.match ? "yes" : "no") << "\n";
    if (!r.branch_violations.empty())
      std::cout << "branch      condition fails at k = " << detail::join(r.branch_violations, ",") << "\n";
  }
  return r.match ? kOk : kMismatch;
}

int cmd_expand(const std::string& theta_text, const std::string& family, unsigned digits, long terms, int show,
               const std::string& format) {
  PrecisionContext ctx(digits);
  AngleExpansion e = expand_angle(eval_expr(parse_closed_form(theta_text), PrecisionContext(digits, ctx.guard + 10)),
                                  parse_angle_family(family), ctx, terms, show);
  const int d = static_cast<int>(digits);
  if (format == "json") {
    ojson lead = ojson::array();
    for (const auto& t : e.leading_terms) lead.push_back(t.str(d));
    ojson j{{"theta", e.theta.str(d)},       {"family", family},
            {"term", angle_term_formula(e)}, {"leading_terms", lead},
            {"terms", e.terms},              {"partial", e.partial.str(d)},
            {"tail", e.tail.str(d)},         {"value", e.value.str(d)},
            {"value_err", e.value.err_str()}, {"certified_digits", e.certified_digits},
            {"reconstructed", e.reconstructed}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "theta = " << e.theta.str(d) << " = sum over k >= 1 of " << angle_term_formula(e) << "\n";
    for (std::size_t i = 0; i < e.leading_terms.size(); ++i)
      std::cout << "  k=" << i + 1 << "  " << e.leading_terms[i].str(d) << "\n";
    std::cout << "partial sum of " << e.terms << " terms  " << e.partial.str(d) << "\n";
    std::cout << "exact tail            " << e.tail.str(d) << "\n";
    print_value(std::cout, "value                 ", e.value, d);
    std::cout << "reconstructed         " << (e.reconstructed ? "yes" : "no") << "\n";
  }
  return e.reconstructed ? kOk : kMismatch;
}

int cmd_convergence(const std::string& id, const std::vector<long>& points, unsigned digits, const std::string& format,
                    const std::string& catalog) {
  auto recs = open_catalog(catalog);
  const IdentityRecord& rec = lookup(recs, id);
  const LemmaConfig& cfg = rec.cfg;
  long max_n = *std::max_element(points.begin(), points.end());
  PrecisionContext ctx = PrecisionContext::for_terms(digits, static_cast<unsigned long>(max_n));
  BoundedReal limit = eval_expr(rhs_exact(cfg), ctx);
  Telescope t(cfg, ctx);
  std::vector<long> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  BoundedReal partial(ctx.bits());
  long done = 0;
  std::vector<std::pair<Real, Real>> rows;
  for (long n : sorted) {
    partial += t.direct(n, done + 1);
    done = n;
    rows.emplace_back((limit - partial).abs_upper(), t.remainder_bound(n));
  }
  // Least-squares slope of log error against log N.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double x = std::log(static_cast<double>(sorted[i]));
    double y = std::log(mpfr_get_d(rows[i].first.get(), MPFR_RNDN));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  double n = static_cast<double>(sorted.size());
  double slope = sorted.size() > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  long predicted = -(cfg.squared() ? 2L : 1L) * static_cast<long>(cfg.m) * cfg.f.expanded().degree();

  if (format == "json") {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < sorted.size(); ++i)
      arr.push_back({{"N", sorted[i]}, {"error", rows[i].first.sci(12)}, {"bound", rows[i].second.sci(12)}});
    ojson j{{"id", id}, {"points", arr}, {"slope", slope}, {"predicted_slope", predicted}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "N,error,bound\n";
    for (std::size_t i = 0; i < sorted.size(); ++i)
      std::cout << sorted[i] << ',' << rows[i].first.sci(12) << ',' << rows[i].second.sci(12) << "\n";
    std::cout << "# slope " << slope << " predicted " << predicted << "\n";
  }
  return kOk;
}

int cmd_instantiate(const std::string& family, const std::vector<std::string>& params, unsigned digits,
                    const std::string& format) {
  FamilyParams p;
  for (const auto& kv : params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "parameter '" + kv + "' is not name=value");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  IdentityRecord rec = family_instantiate(family, p);
  if (format == "text") {
    std::cout << "config  " << rec.cfg.str() << "\n";
    for (const auto& a : rec.printed_args) std::cout << a.slot.str() << "  atan(" << a.text << ")\n";
    std::cout << "rhs     " << rec.rhs_text << "\n";
  }
  VerificationReport rep = verify_identity(rec, digits);
  std::vector<VerificationReport> reps{rep};
  if (format == "json") {
    std::cout << reports_json(reps);
  } else if (format == "csv") {
    std::cout << reports_csv(reps);
  } else {
    std::cout << reports_text(reps);
  }
  return rep.passed() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified evaluation of telescoping arctangent sums"};
  app.require_subcommand(1);
  unsigned digits = 30;
  std::string format = "text";
  std::string catalog;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--digits", digits, "decimal digits")->check(CLI::Range(1U, 10000U));
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  };

  auto* verify = app.add_subcommand("verify", "verify catalog identities");
  std::string id;
  bool all = false, timing = false;
  unsigned threads = 0;
  verify->add_option("id", id, "record id");
  verify->add_flag("--all", all, "verify every record");
  verify->add_flag("--timing", timing, "include wall time per record");
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");
  verify->add_option("--catalog", catalog, "catalog JSON (default: $ATANSUM_CATALOG, then the bundled catalog)");
  add_common(verify);

  auto* eval = app.add_subcommand("eval", "evaluate one lemma configuration");
  std::string f, alpha = "1", variant = "L1";
  unsigned m = 1, q = 1;
  eval->add_option("--f", f, "sequence f(k)")->required();
  eval->add_option("--alpha", alpha, "alpha");
  eval->add_option("--m", m, "number of factors")->check(CLI::PositiveNumber);
  eval->add_option("--q", q, "shift")->check(CLI::PositiveNumber);
  eval->add_option("--variant", variant, "L1, LP, L2_EVEN, L2_ODD or LPALT");
  add_common(eval);

  auto* expand = app.add_subcommand("expand-angle", "expand an angle as an arctangent series");
  std::string theta, family = "linear";
  long terms = 64;
  int show = 5;
  expand->add_option("--theta", theta, "angle, e.g. pi/6 or 0.7")->required();
  expand->add_option("--family", family, "linear or quartic")->check(CLI::IsMember({"linear", "quartic"}));
  expand->add_option("--terms", terms, "directly summed terms")->check(CLI::Range(1L, 100000L));
  expand->add_option("--show", show, "terms to list")->check(CLI::Range(0, 1000));
  add_common(expand);

  auto* conv = app.add_subcommand("convergence", "measured truncation error against the boundary bound");
  std::string conv_id;
  std::vector<long> points{10, 100, 1000};
  conv->add_option("id", conv_id, "record id")->required();
  conv->add_option("--points", points, "N values")->delimiter(',')->check(CLI::Range(1L, 1000000L));
  conv->add_option("--catalog", catalog, "catalog JSON");
  add_common(conv);

  auto* inst = app.add_subcommand("instantiate", "bind a theorem or angle family and verify it");
  std::string fam;
  std::vector<std::string> params;
  inst->add_option("family", fam, "family name")->required();
  inst->add_option("params", params, "name=value bindings");
  add_common(inst);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*verify) return cmd_verify(id, all, digits, format, timing, threads, catalog);
    if (*eval) return cmd_eval(f, alpha, m, q, variant, digits, format);
    if (*expand) return cmd_expand(theta, family, digits, terms, show, format);
    if (*conv) return cmd_convergence(conv_id, points, digits, format, catalog);
    if (*inst) return cmd_instantiate(fam, params, digits, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
