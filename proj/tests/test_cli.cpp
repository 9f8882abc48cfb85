// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <atansum/catalog_data.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " \"" ATANSUM_CLI "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path write_catalog(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, VerifySingleRecord) {
  CliRun r = run("verify equ.nekey4x --digits 50");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, UnknownIdIsConfigError) {
  CliRun r = run("verify no.such.id");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("unknown id"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("verify equ.nekey4x --digits 0").status, 2);
  EXPECT_EQ(run("verify equ.nekey4x --digits 10001").status, 2);
  EXPECT_EQ(run("verify equ.nekey4x --format xml").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("verify").status, 2);
}

TEST(Cli, JsonIsByteStable) {
  CliRun a = run("verify equ.q0xt5i4 --digits 30 --format json");
  CliRun b = run("verify equ.q0xt5i4 --digits 30 --format json");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["id"], "equ.q0xt5i4");
  EXPECT_TRUE(j[0]["passed"].get<bool>());
  EXPECT_FALSE(j[0].contains("seconds"));
  EXPECT_EQ(j[0]["alt_configs"].size(), 1U);
}

TEST(Cli, CsvHeader) {
  CliRun r = run("verify equ.nekey4x --digits 20 --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "id,family,digits,passed,match,printed_ok,probe_ok,alts_ok,terms,lhs,rhs,diff_bound,residual_max,"
            "residual_jumps,branch_violations,error");
}

TEST(Cli, EvalExamples) {
  CliRun a = run("eval --f k --alpha 1 --m 1 --q 2 --variant L1 --digits 20 --format json");
  ASSERT_EQ(a.status, 0) << a.out;
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["lhs"].get<std::string>().substr(0, 12), "1.2490457723");
  CliRun b = run("eval --f \"k^2-k\" --alpha 1/2 --digits 20 --format json");
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(nlohmann::json::parse(b.out)["rhs_exact"], "1/2*pi");
  EXPECT_EQ(run("eval --f k --variant L2_ODD --q 2").status, 2);
  EXPECT_EQ(run("eval --f \"k^\"").status, 2);
}

TEST(Cli, ExpandAngle) {
  CliRun r = run("expand-angle --theta pi/6 --family linear --digits 20 --format json");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(nlohmann::json::parse(r.out)["reconstructed"].get<bool>());
  CliRun zero = run("expand-angle --theta 0 --digits 20 --format json");
  EXPECT_EQ(nlohmann::json::parse(zero.out)["value"], "0.00000000000000000000");
  EXPECT_EQ(run("expand-angle --theta 1.6").status, 2);
  EXPECT_EQ(run("expand-angle --theta -pi/2").status, 2);
}

TEST(Cli, Convergence) {
  CliRun r = run("convergence equ.macv3oy --points 10,100 --format json");
  ASSERT_EQ(r.status, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["points"].size(), 2U);
  EXPECT_EQ(run("convergence no.such.id").status, 2);
}

TEST(Cli, Instantiate) {
  CliRun r = run("instantiate sveqk2u alpha=1 beta=0 q=5 --digits 20");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("5/(k^2+5*k+1)"), std::string::npos);
  CliRun bad = run("instantiate hy3p7rx alpha=1 q=2");
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.out.find("q must be odd"), std::string::npos);
}

TEST(Cli, CatalogFromFlagAndEnvironment) {
  auto good = write_catalog("atansum-cli-good.json", atansum::embedded::kCatalogJson);
  EXPECT_EQ(run("verify equ.nekey4x --digits 20 --catalog \"" + good.string() + "\"").status, 0);
  EXPECT_EQ(run("verify equ.nekey4x --digits 20", "ATANSUM_CATALOG=\"" + good.string() + "\"").status, 0);

  auto doc = nlohmann::json::parse(atansum::embedded::kCatalogJson);
  for (auto& rec : doc)
    if (rec["id"] == "equ.mvf2qbz") rec["rhs"] = "pi^2/9";
  auto bad = write_catalog("atansum-cli-bad.json", doc.dump());
  CliRun r = run("verify equ.mvf2qbz --digits 20 --catalog \"" + bad.string() + "\"");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);

  auto broken = write_catalog("atansum-cli-broken.json", "[{\"id\": 1}]");
  EXPECT_EQ(run("verify --all --catalog \"" + broken.string() + "\"").status, 2);
  EXPECT_EQ(run("verify --all --catalog /nonexistent/catalog.json").status, 2);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  std::filesystem::remove(broken);
}
