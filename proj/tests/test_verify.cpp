#include "xiforge/errors.hpp"
#include "xiforge/verify.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace {

using namespace xiforge;
namespace mp = boost::multiprecision;

const PrecisionConfig cfg = default_precision();

bool registered(const std::string& id) {
  const auto& reg = identity_registry();
  return std::any_of(reg.begin(), reg.end(), [&](const IdentityInfo& i) { return i.id == id; });
}

TEST(RunIdentity, LambdaCrossRouteAlias) {
  const IdentityReport r = run_identity("eq_1_3", {{"x", "1"}}, cfg);
  EXPECT_EQ(r.identity_id, "lambda_transform.cross_route");
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.abs_diff, Real("1e-8"));
}

TEST(RunIdentity, UpsilonAntisymmetry) {
  const IdentityReport r = run_identity("thm1.antisymmetry", {{"s", "2"}}, cfg);
  EXPECT_TRUE(r.passed);
}

TEST(RunIdentity, KernelEvenReportsSignFinding) {
  const IdentityReport r = run_identity("thm3.kernel_even", {{"x", "1"}}, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_NE(r.notes.find("kddot(0)"), std::string::npos);
  EXPECT_NE(r.notes.find("negative"), std::string::npos);
}

TEST(RunIdentity, GlobalSignIsReported) {
  const IdentityReport r = run_identity("thm3.sign", {}, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_NE(r.notes.find("kappa = -1"), std::string::npos);
}

TEST(RunIdentity, GammaArgumentAdjudicationNote) {
  const IdentityReport r = run_identity(
      "muntz.integrated", {{"a", "2"}, {"z", "0.5"}, {"v", "3+1i"}, {"sigma", "0.4"}}, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_NE(r.notes.find("matching reading: a z^2 n^2"), std::string::npos);
}

TEST(RunIdentity, UnknownIdListsRegistry) {
  try {
    run_identity("nonsense", {}, cfg);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("upsilon.cross_route"), std::string::npos);
  }
}

TEST(RunIdentity, BadParametersAreUsageErrors) {
  EXPECT_THROW(run_identity("upsilon.cross_route", {{"q", "2"}}, cfg), UsageError);
  EXPECT_THROW(run_identity("upsilon.cross_route", {{"s", "two"}}, cfg), UsageError);
}

TEST(RunIdentity, MathematicalFailureIsData) {
  const IdentityReport r = run_identity("upsilon.cross_route", {{"s", "1"}}, cfg);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(mp::isnan(r.abs_diff));
  EXPECT_NE(r.notes.find("pole"), std::string::npos);
}

TEST(Registry, ManifestOfCheckedIdentities) {
  // every mathematical statement the lab checks, by registry id
  const std::vector<std::string> manifest{
      "gamma.recurrence",          "inc_gamma.split",          "zeta.special_value",
      "theta.modular",             "xi.functional_equation",   "xi.inc_gamma_expansion",
      "lambda_transform.cross_route", "upsilon.cross_route",   "upsilon.laplace_bridge",
      "upsilon.antisymmetry",      "muntz.instance",           "muntz.contour_shift",
      "muntz.integrated",          "muntz.upsilon_bridge",     "quad_field.coefficients",
      "omega.series_agreement",    "omega.route_agreement",    "omega.functional_equation",
      "hecke.cosine_transform",    "frak_upsilon.cross_route", "frak_upsilon.antisymmetry",
      "idot.contour_shift",        "idot.cosine_reconstruction", "iddot.companion",
      "iddot.global_sign",         "iddot.from_idot",          "kddot.even",
      "kddot.lambda_relation"};
  std::set<std::string> planned;
  for (const auto& [id, params] : suite_plan("all")) planned.insert(id);
  for (const auto& id : manifest) {
    EXPECT_TRUE(registered(id)) << id;
    EXPECT_TRUE(planned.count(id)) << id << " is not exercised by the full suite";
  }
  EXPECT_EQ(identity_registry().size(), manifest.size());
  for (const auto& [alias, target] : identity_aliases()) {
    EXPECT_TRUE(registered(target)) << alias;
    EXPECT_EQ(canonical_identity(alias), target);
  }
}

TEST(Registry, EveryPlannedParameterIsDeclared) {
  for (const auto& [id, params] : suite_plan("all")) {
    const auto& reg = identity_registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const IdentityInfo& i) { return i.id == id; });
    ASSERT_NE(it, reg.end());
    for (const auto& [key, value] : params) EXPECT_TRUE(it->defaults.count(key)) << id << " " << key;
  }
}

TEST(Suites, RiemannCoverage) {
  const auto plan = suite_plan("riemann");
  EXPECT_GE(plan.size(), 20u);
  std::set<std::string> ids;
  for (const auto& [id, p] : plan) ids.insert(id);
  for (const char* id : {"xi.functional_equation", "lambda_transform.cross_route", "muntz.instance",
                         "muntz.integrated", "upsilon.cross_route", "xi.inc_gamma_expansion"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
}

TEST(Suites, HeckeCoverage) {
  std::set<std::string> ids;
  std::set<std::string> discriminants;
  for (const auto& [id, p] : suite_plan("hecke")) {
    ids.insert(id);
    if (p.count("D")) discriminants.insert(p.at("D"));
  }
  for (const char* id : {"omega.functional_equation", "omega.route_agreement", "hecke.cosine_transform",
                         "frak_upsilon.cross_route"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  for (const char* D : {"-3", "-4", "-20"}) EXPECT_TRUE(discriminants.count(D)) << D;
  EXPECT_THROW(suite_plan("bogus"), UsageError);
}

TEST(Reports, InvariantsAndDeterminism) {
  const auto first = run_suite("riemann", cfg, 1);
  const auto second = run_suite("riemann", cfg, 4);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    const IdentityReport& r = first[i];
    EXPECT_EQ(r.passed, r.abs_diff <= r.tolerance || r.rel_diff <= r.tolerance) << r.identity_id;
    EXPECT_EQ(r.abs_diff, std::abs(r.lhs - r.rhs));
    EXPECT_EQ(report_json_line(r), report_json_line(second[i]));
  }
}

TEST(Reports, JsonLineSchema) {
  const IdentityReport r = run_identity("zeta.special_value", {{"s", "2"}}, cfg);
  const std::string line = report_json_line(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const auto j = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "identity_id", "parameters", "lhs", "rhs", "abs_diff",
                                             "rel_diff", "tolerance", "passed", "notes"}));
  EXPECT_EQ(j["schema"], kReportSchemaVersion);
  EXPECT_EQ(j["parameters"]["s"], "2");
  EXPECT_TRUE(nlohmann::ordered_json::parse(report_json_line(r, true)).contains("wall_time"));
}

TEST(Reports, CsvSummary) {
  std::ostringstream out;
  write_csv_summary(out, {run_identity("zeta.special_value", {{"s", "0"}}, cfg)});
  std::istringstream in(out.str());
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "identity_id,parameters,abs_diff,rel_diff,tolerance,passed");
  EXPECT_EQ(row.rfind("zeta.special_value,", 0), 0u);
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("2"), Complex(2));
  EXPECT_EQ(parse_complex("-1.5"), Complex(Real("-1.5")));
  EXPECT_EQ(parse_complex("3+1i"), Complex(3, 1));
  EXPECT_EQ(parse_complex("0.5-14.13i"), Complex(Real("0.5"), Real("-14.13")));
  EXPECT_EQ(parse_complex("2i"), Complex(0, 2));
  EXPECT_THROW(parse_complex("abc"), UsageError);
}

}  // namespace
