#include <gtest/gtest.h>

#include <set>

#include "pencilcount/dump.hpp"
#include "pencilcount/verify.hpp"

using namespace pencilcount;

TEST(Fixtures, IntegrityAndShape) {
  const auto& fx = load_fixtures();
  EXPECT_EQ(fixture_checksum(fx), kFixtureChecksum);
  EXPECT_EQ(table_degrees(), (std::vector<int>{1, 3, 5, 7, 9, 11, 13, 15, 17}));
  for (int d : table_degrees()) {
    for (int l = 0; l <= d; ++l) EXPECT_TRUE(table_value(d, l).has_value()) << d << ' ' << l;
    EXPECT_FALSE(table_value(d, d + 1).has_value());
  }
  EXPECT_EQ(*table_value(5, 0), 45);
  EXPECT_EQ(*table_value(7, 3), -1269);
  EXPECT_EQ(*table_value(9, 0), 17756793);
  EXPECT_EQ(*table_value(9, 9), 1993);
}

TEST(Fixtures, TamperingIsDetected) {
  auto fx = load_fixtures();
  fx[3].value = "46";
  EXPECT_THROW(check_fixture_integrity(fx, kFixtureChecksum), IntegrityError);
  auto moved = load_fixtures();
  std::swap(moved[1].l, moved[2].l);  // same values in other cells
  EXPECT_THROW(check_fixture_integrity(moved, kFixtureChecksum), IntegrityError);
  EXPECT_NO_THROW(check_fixture_integrity(load_fixtures(), kFixtureChecksum));
}

TEST(TableReproduction, SmallColumns) {
  const auto rep = table_reproduction({1, 3, 5, 7}, kDefaultConvention, {});
  EXPECT_EQ(rep.checks().size(), 16u);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
}

// Columns kept as fixtures beyond the acceptance range.
TEST(TableReproduction, LargeColumns) {
  VerifyOptions vo;
  vo.jobs = default_jobs();
  const auto rep = table_reproduction({11, 13, 15, 17}, kDefaultConvention, vo);
  EXPECT_EQ(rep.checks().size(), 11u + 13u + 15u + 17u);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
}

// Published degree-19 values outside the tables.
TEST(TableReproduction, DegreeNineteen) {
  const Engine eng({kDefaultConvention, EngineKind::scan, default_jobs()});
  EXPECT_EQ(eng.w_rp3(19, 17), from_decimal("-74131154312945"));
  EXPECT_EQ(eng.w_rp3(19, 18), from_decimal("-106335656443537"));
}

TEST(ConventionFit, SelectsTheDefault) {
  const auto fit = fit_sign_convention(7);
  EXPECT_EQ(fit.selected, kDefaultConvention);
  EXPECT_EQ(fit.consistent, std::vector<Convention>{kDefaultConvention});
  EXPECT_EQ(fit.rejections.size(), kAllConventions.size() - 1);
  EXPECT_TRUE(fit.warnings.empty());
}

TEST(ConventionFit, NoCandidateFitsRaises) {
  try {
    fit_sign_convention(7, {Convention::alt_incident, Convention::binom_origin});
    FAIL() << "expected VerificationError";
  } catch (const VerificationError& e) {
    EXPECT_EQ(e.code(), ExitCode::verification_failure);
    EXPECT_NE(std::string(e.what()).find("alt-incident"), std::string::npos);
  }
  EXPECT_THROW(fit_sign_convention(8), InputError);
  EXPECT_THROW(fit_sign_convention(5), InputError);
}

TEST(CrossEngine, AllConventionsAgree) {
  const auto rep = cross_engine_check(4, std::vector<Convention>(kAllConventions.begin(), kAllConventions.end()));
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  EXPECT_GT(rep.checks().size(), 50u);
}

TEST(Placement, ThreeDistinctPlacementsPerPairCount) {
  for (auto [a, b, l] : {std::tuple{2, 3, 1}, {2, 3, 2}, {2, 3, 3}, {2, 3, 4}, {3, 4, 6}}) {
    const auto ps = default_placements(Bidegree(a, b), l);
    std::set<std::vector<int>> distinct;
    for (const auto& p : ps) distinct.insert(p.pair_starts());
    EXPECT_EQ(distinct.size(), ps.size());
    EXPECT_GE(ps.size(), 3u) << l;
    const auto rep = pair_placement_invariance(a, b, l, ps, kDefaultConvention);
    EXPECT_TRUE(rep.passed()) << rep.to_text();
  }
  EXPECT_THROW(pair_placement_invariance(2, 3, 2, {LabelLayout::standard(9, 1)}, kDefaultConvention), InputError);
}

TEST(MicroOracles, Pass) {
  const auto rep = micro_oracles();
  EXPECT_EQ(rep.checks().size(), 7u);
  EXPECT_TRUE(rep.passed()) << rep.to_text();
}

TEST(VerifyReport, JsonAndText) {
  VerifyReport rep("demo");
  rep.add("one", {{"d", 3}}, "1", "1");
  rep.add("two", {{"d", 5}}, "45", "44", "off by one");
  rep.warn("note");
  const auto j = rep.to_json();
  EXPECT_EQ(j["suite"], "demo");
  EXPECT_EQ(j["pass"], false);
  EXPECT_EQ(j["failures"], 1);
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][1]["detail"], "off by one");
  EXPECT_FALSE(j["checks"][0].contains("detail"));
  const auto text = rep.to_text();
  EXPECT_NE(text.find("FAIL two"), std::string::npos);
  EXPECT_NE(text.find("WARNING note"), std::string::npos);
  EXPECT_NE(text.find("1/2 checks passed"), std::string::npos);
}

TEST(Suites, PropertiesNameTheKnownExceptions) {
  const auto rep = run_suite("properties");
  EXPECT_TRUE(rep.passed()) << rep.to_text();
  int exceptions = 0;
  for (const auto& c : rep.checks()) exceptions += c.check == "congruence.quadric.exception";
  EXPECT_EQ(exceptions, 2);
  EXPECT_FALSE(rep.warnings().empty());
}

TEST(Suites, UnknownNameIsRejected) { EXPECT_THROW(run_suite("nope"), InputError); }

TEST(Suites, OracleSuitePasses) {
  const auto rep = run_suite("oracle");
  EXPECT_TRUE(rep.passed()) << rep.to_text();
}

TEST(Dump, DiagramFields) {
  const auto j = dump_diagrams(Bidegree(2, 3), kDefaultConvention);
  ASSERT_EQ(j.size(), 8u);
  const auto& d = j[0];
  for (const char* f : {"floors", "elevators", "bottom", "top", "aut", "mu_complex", "markings", "contrib_s0"}) {
    EXPECT_TRUE(d.contains(f)) << f;
  }
}
