// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <atansum/catalog_data.hpp>

#include "atansum/families.hpp"
#include "atansum/verify.hpp"

using namespace atansum;

namespace {

const std::vector<IdentityRecord>& bundled() {
  static const auto records = load_catalog(embedded::kCatalogJson);
  return records;
}

ErrorCode load_error(const std::string& json, std::string* message = nullptr) {
  try {
    load_catalog(json);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "no error for " << json;
  return ErrorCode::InvalidArgument;
}

const char* kMinimal =
    R"j({"id":"x","family":"t","variant":"L1","f":"k","alpha":"1","m":1,"q":1,)j"
    R"j("printed_args":[{"slot":"main","expr":"1/(k^2+k+1)"}],"rhs":"pi/4","constraints":[],"notes":""})j";

}  // namespace

TEST(Catalog, BundledLoads) {
  const auto& recs = bundled();
  EXPECT_EQ(recs.size(), 104U);
  const IdentityRecord* r = find_record(recs, "equ.nekey4x");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->cfg.q, 3U);
  EXPECT_EQ(r->printed_args.size(), 1U);
  EXPECT_EQ(find_record(recs, "no.such.id"), nullptr);
}

TEST(Catalog, MinimalRecord) {
  auto recs = load_catalog(std::string("[") + kMinimal + "]");
  ASSERT_EQ(recs.size(), 1U);
  EXPECT_EQ(recs[0].rhs_text, "pi/4");
  EXPECT_EQ(recs[0].index_shift, 0);
  EXPECT_EQ(recs[0].lhs_sign, 1);
}

TEST(Catalog, SchemaErrorsNameFieldAndRecord) {
  std::string msg;
  std::string rec = kMinimal;
  EXPECT_EQ(load_error("[" + rec.substr(0, rec.find(",\"notes\"")) + "}]", &msg), ErrorCode::SchemaError);
  EXPECT_NE(msg.find("'x'"), std::string::npos);
  EXPECT_NE(msg.find("notes"), std::string::npos);

  std::string bad_m = rec;
  bad_m.replace(bad_m.find("\"m\":1"), 5, "\"m\":0");
  EXPECT_EQ(load_error("[" + bad_m + "]", &msg), ErrorCode::SchemaError);
  EXPECT_NE(msg.find("'m'"), std::string::npos);

  std::string bad_variant = rec;
  bad_variant.replace(bad_variant.find("L1"), 2, "L7");
  EXPECT_EQ(load_error("[" + bad_variant + "]"), ErrorCode::SchemaError);

  std::string odd = rec;
  odd.replace(odd.find("L1"), 2, "L2_ODD");
  odd.replace(odd.find("\"q\":1"), 5, "\"q\":2");
  EXPECT_EQ(load_error("[" + odd + "]", &msg), ErrorCode::SchemaError);
  EXPECT_NE(msg.find("q"), std::string::npos);

  EXPECT_EQ(load_error("[" + rec + "," + rec + "]", &msg), ErrorCode::SchemaError);
  EXPECT_NE(msg.find("duplicated"), std::string::npos);

  std::string extra = rec;
  extra.insert(1, "\"colour\":\"red\",");
  EXPECT_EQ(load_error("[" + extra + "]"), ErrorCode::SchemaError);
  EXPECT_EQ(load_error("{}"), ErrorCode::SchemaError);
}

TEST(Catalog, ParseErrorsNameRecord) {
  std::string msg;
  EXPECT_EQ(load_error("[{", &msg), ErrorCode::ParseError);
  std::string rec = kMinimal;
  rec.replace(rec.find("pi/4"), 4, "pi/+");
  EXPECT_EQ(load_error("[" + rec + "]", &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("'x'"), std::string::npos);
  EXPECT_NE(msg.find("rhs"), std::string::npos);
}

TEST(Catalog, VerifyHeadlineRecords) {
  for (const char* id : {"equ.nekey4x", "sec3.3-pi6-4096", "sec3.3-LP-k2-5k+5@q1", "equ.q0xt5i4"}) {
    const IdentityRecord* r = find_record(bundled(), id);
    ASSERT_NE(r, nullptr) << id;
    VerificationReport rep = verify_identity(*r, 30);
    EXPECT_TRUE(rep.passed()) << id << " " << rep.error;
    EXPECT_TRUE(rep.printed_ok()) << id;
    EXPECT_TRUE(rep.residual_ok) << id;
  }
}

TEST(Catalog, AltConfigVerified) {
  VerificationReport rep = verify_identity(*find_record(bundled(), "equ.q0xt5i4"), 25);
  ASSERT_EQ(rep.alts.size(), 1U);
  EXPECT_TRUE(rep.alts[0].match);
}

TEST(Catalog, ProbeRejectsOutOfRangeAlpha) {
  VerificationReport rep = verify_identity(*find_record(bundled(), "equ.kgx4gck@a2"), 30);
  ASSERT_TRUE(rep.probe.has_value());
  EXPECT_TRUE(rep.probe->rejected);
  EXPECT_TRUE(rep.passed());
}

TEST(Catalog, WrongRhsFailsOnlyThatRecord) {
  std::vector<IdentityRecord> recs;
  for (const char* id : {"equ.mvf2qbz", "equ.nekey4x", "equ.s24gqww@a2"}) recs.push_back(*find_record(bundled(), id));
  recs[0].rhs = parse_closed_form("pi^2/9");
  auto reps = verify_all(recs, 30, 2);
  ASSERT_EQ(reps.size(), 3U);
  for (const auto& rep : reps) EXPECT_EQ(rep.passed(), rep.id != "equ.mvf2qbz") << rep.id;
}

TEST(Catalog, WrongPrintedFormFails) {
  IdentityRecord r = *find_record(bundled(), "equ.nekey4x");
  r.printed_args[0].expr = parse_rational_function("3/(k^2+3*k+2)");
  VerificationReport rep = verify_identity(r, 20);
  EXPECT_TRUE(rep.match);
  EXPECT_FALSE(rep.printed_ok());
  EXPECT_FALSE(rep.passed());
}

TEST(Families, Sveqk2uQ5) {
  IdentityRecord r = family_instantiate("sveqk2u", {{"alpha", "1"}, {"beta", "0"}, {"q", "5"}});
  EXPECT_EQ(r.printed_args[0].expr.str(), "5/(k^2+5*k+1)");
  EXPECT_EQ(r.rhs_text, to_string(simplify(parse_closed_form("atan(1)+atan(1/2)+atan(1/3)+atan(1/4)+atan(1/5)"))));
  EXPECT_TRUE(verify_identity(r, 30).passed());
}

TEST(Families, ReproducesQ1Specialisations) {
  struct Case {
    const char* id;
    FamilyParams p;
  };
  for (const Case& c : {Case{"equ.kgx4gck@a2", {{"alpha", "2"}, {"beta", "-1"}, {"q", "1"}}},
                        Case{"equ.s24gqww@a2", {{"alpha", "2"}, {"beta", "0"}, {"q", "1"}}},
                        Case{"equ.jjrqfmc@a3", {{"alpha", "3"}, {"beta", "-1"}, {"q", "2"}}}}) {
    const IdentityRecord& cat = *find_record(bundled(), c.id);
    IdentityRecord r = family_instantiate("sveqk2u", c.p);
    EXPECT_EQ(r.cfg, cat.cfg) << c.id;
    EXPECT_EQ(r.rhs_text, to_string(simplify(cat.rhs))) << c.id;
    ASSERT_EQ(r.printed_args.size(), cat.printed_args.size());
    for (std::size_t i = 0; i < r.printed_args.size(); ++i) EXPECT_EQ(r.printed_args[i].expr, cat.printed_args[i].expr);
  }
}

TEST(Families, ThetaSincosPi3) {
  IdentityRecord r = family_instantiate("theta-sincos", {{"theta", "pi/3"}});
  EXPECT_EQ(r.printed_args[0].expr, parse_rational_function("sqrt(3)/(2*k^2+4*k+3)"));
  EXPECT_EQ(r.rhs_text, "1/6*pi");
  EXPECT_TRUE(verify_identity(r, 30).passed());
}

TEST(Families, ThetaFamiliesVerify) {
  for (const char* fam : {"theta-linear", "theta-quartic"})
    for (const char* th : {"pi/6", "-pi/4", "pi/3", "0"}) {
      IdentityRecord r = family_instantiate(fam, {{"theta", th}});
      EXPECT_TRUE(verify_identity(r, 25).passed()) << fam << " " << th;
    }
  IdentityRecord sq = family_instantiate("theta-square", {{"theta", "pi/3"}});
  EXPECT_EQ(sq.cfg, find_record(bundled(), "sec3.2.3-theta-sq-pi3")->cfg);
  EXPECT_TRUE(verify_identity(sq, 25).passed());
}

TEST(Families, ConstraintViolations) {
  auto code = [](const std::string& fam, const FamilyParams& p) {
    try {
      family_instantiate(fam, p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code("hy3p7rx", {{"alpha", "1"}, {"q", "2"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("sveqk2u", {{"alpha", "1"}, {"beta", "-2"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("pori4ri", {{"alpha", "1"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("theta-linear", {{"theta", "pi/5"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("theta-linear", {{"theta", "pi/2"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("theta-sincos", {{"theta", "pi/6"}}), ErrorCode::ConstraintViolation);
  EXPECT_EQ(code("theta-linear", {{"theta", "7/10"}}), ErrorCode::ConstraintViolation);
  EXPECT_THROW(family_instantiate("nope", {}), Error);
}

TEST(Families, TheoremFamiliesVerify) {
  const std::vector<std::pair<std::string, FamilyParams>> cases = {
      {"pori4ri", {{"beta", "0"}, {"m", "2"}, {"q", "1"}}},
      {"slsjsoq", {{"alpha", "1"}, {"beta", "3"}, {"q", "2"}}},
      {"ivbxym1", {{"alpha", "1"}, {"beta", "0"}, {"q", "2"}}},
      {"lqwviov", {{"alpha", "1"}, {"beta", "5"}, {"q", "1"}}},
      {"hy3p7rx", {{"alpha", "1/2"}, {"beta", "1"}, {"m", "2"}, {"q", "3"}}},
      {"stcc51n", {{"alpha", "1"}, {"beta", "2"}, {"q", "1"}}},
  };
  for (const auto& [fam, p] : cases) {
    IdentityRecord r = family_instantiate(fam, p);
    VerificationReport rep = verify_identity(r, 25);
    EXPECT_TRUE(rep.passed()) << fam << " " << rep.error;
    EXPECT_TRUE(rep.printed_ok()) << fam;
  }
}
