#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <tuple>

#include <unistd.h>

#include "oracles.hpp"
#include "pencilcount/invariants.hpp"

using namespace pencilcount;

namespace {

// Temporary cache file removed on scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& stem) {
    path = std::filesystem::temp_directory_path() / (stem + "-" + std::to_string(::getpid()) + ".jsonl");
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string s; std::getline(in, s);) out.push_back(s);
  return out;
}

}  // namespace

TEST(SpaceInvariants, SmallDegrees) {
  const Engine eng;
  EXPECT_EQ(eng.w_rp3(1, 0), 1);
  EXPECT_EQ(eng.w_rp3(3, 0), -1);
  EXPECT_EQ(eng.w_rp3(5, 0), 45);
  EXPECT_EQ(eng.w_rp3(5, 2), 17);
  EXPECT_EQ(eng.w_rp3(7, 3), -1269);
}

TEST(SpaceInvariants, ComplexCountsMatchAssociativity) {
  // the space count as a sum over bidegrees, each checked by recursion
  oracle::QuadricWdvv wdvv;
  const Engine eng;
  for (int d = 1; d <= 9; ++d) {
    oracle::Int want = 0;
    for (int a = 0; 2 * a < d; ++a) want += oracle::Int((d - 2 * a) * (d - 2 * a)) * wdvv(a, d - a);
    EXPECT_EQ(eng.gw_cp3(d), want) << d;
  }
  const long classical[] = {1, 0, 1, 4, 105};
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(eng.gw_cp3(d), classical[d - 1]) << d;
}

TEST(QuadricInvariants, Examples) {
  const Engine eng;
  for (int b = 1; b <= 7; ++b) EXPECT_EQ(eng.gw_quadric(1, b), 1);
  EXPECT_EQ(eng.gw_quadric(2, 2), 12);
  EXPECT_EQ(eng.gw_quadric(2, 3), 96);
  EXPECT_EQ(eng.gw_quadric(3, 2), 96);
  EXPECT_EQ(eng.w_quadric(2, 3, 3), 12);
  EXPECT_EQ(eng.w_quadric(3, 2, 3), 12);
}

TEST(QuadricInvariants, EnginesAgree) {
  const Engine scan;
  const Engine brute({kDefaultConvention, EngineKind::explicit_pipeline});
  for (int total = 1; total <= 6; ++total) {
    for (int a = 0; a <= total; ++a) {
      EXPECT_EQ(scan.gw_quadric(a, total - a), brute.gw_quadric(a, total - a));
      for (int l = 0; l < total; ++l) EXPECT_EQ(scan.w_quadric(a, total - a, l), brute.w_quadric(a, total - a, l));
    }
  }
}

TEST(Errors, RejectsBadArguments) {
  const Engine eng;
  EXPECT_THROW(eng.w_rp3(0, 0), InputError);
  EXPECT_THROW(eng.w_rp3(5, -1), InputError);
  EXPECT_THROW(eng.w_rp3(5, 6), InputError);
  EXPECT_THROW(eng.gw_cp3(0), InputError);
  EXPECT_THROW(eng.gw_quadric(0, 0), InputError);
  EXPECT_THROW(eng.w_quadric(2, 3, 5), InputError);
  EXPECT_THROW(eng.w_quadric(2, 3, -1), InputError);
  EXPECT_THROW(eng.sign_pattern_report(4), InputError);
  EXPECT_THROW(eng.conjecture_report(4), InputError);
  EXPECT_THROW(Engine({kDefaultConvention, EngineKind::scan, 0}), InputError);
}

TEST(Errors, AllConjugateCaseIsNamed) {
  const Engine eng;
  try {
    eng.w_rp3(5, 5);
    FAIL() << "expected AllConjugateError";
  } catch (const AllConjugateError& e) {
    EXPECT_EQ(e.code(), ExitCode::usage);
    EXPECT_NE(std::string(e.what()).find("l <= d-1"), std::string::npos);
  }
}

TEST(EvenDegrees, Vanish) {
  const Engine eng;
  for (int d : {2, 4, 6, 8}) {
    for (int l = 0; l < d; ++l) EXPECT_EQ(eng.w_rp3(d, l), 0);
  }
}

// The formula itself is not meant for even degrees: at d=4 only the (1,3)
// term survives, and W((1,3),l) is odd because it agrees with GW=1 mod 2.
TEST(EvenDegrees, ForcedFormula) {
  EngineOptions forced_opt;
  forced_opt.force_compute = true;
  const Engine forced(forced_opt);
  for (int l = 0; l < 2; ++l) EXPECT_EQ(forced.w_rp3(2, l), 0);
  for (int l = 0; l < 4; ++l) {
    EXPECT_EQ(forced.w_quadric(1, 3, l), 1);
    EXPECT_EQ(forced.w_rp3(4, l), -2);
  }
  for (Convention c : kAllConventions) {
    EngineOptions o = forced_opt;
    o.convention = c;
    EXPECT_EQ(Engine(o).w_rp3(4, 0), -2) << convention_name(c);
  }
}

// (2,2) curves through a point become plane cubics through two fixed real
// points, so W((2,2),l) = 8-2l; with GW=12 the congruence fails for odd l.
TEST(Congruences, QuadricHoldsExceptAtPlaneCubics) {
  const Engine eng;
  for (int l = 0; l < 4; ++l) EXPECT_EQ(eng.w_quadric(2, 2, l), 8 - 2 * l);
  std::vector<std::tuple<int, int, int>> failing;
  for (int total = 1; total <= 8; ++total) {
    for (int a = 0; a <= total; ++a) {
      for (int l = 0; l < total; ++l) {
        const auto w = eng.congruence_check(a, total - a, l);
        EXPECT_EQ(w.lhs_mod4, mod_floor(w.lhs, 4));
        if (!w.holds) failing.emplace_back(a, total - a, l);
      }
    }
  }
  EXPECT_EQ(failing, (std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {2, 2, 3}}));
}

TEST(Congruences, Space) {
  const Engine eng;
  for (int d = 1; d <= 9; ++d) {
    for (int l = 0; l < d; ++l) EXPECT_TRUE(eng.cp3_congruence_check(d, l).holds) << d << ' ' << l;
  }
}

TEST(Reports, SignPattern) {
  const Engine eng;
  const auto r = eng.sign_pattern_report(9);
  ASSERT_EQ(r.values.size(), 9u);
  EXPECT_TRUE(r.positive_then_alternating);
  EXPECT_EQ(r.signs[0], 1);
  const auto r1 = eng.sign_pattern_report(1);
  EXPECT_TRUE(r1.positive_then_alternating);
  EXPECT_FALSE(r1.alternation_start.has_value());
}

TEST(Reports, Conjecture) {
  const Engine eng;
  const std::pair<int, long> want[] = {{3, -1}, {5, 5}, {7, -85}, {9, 1993}};
  for (auto [d, v] : want) {
    const auto r = eng.conjecture_report(d);
    ASSERT_TRUE(r.testable());
    EXPECT_EQ(r.computed, v);
    EXPECT_TRUE(r.equal());
  }
}

TEST(ResultCache, RoundTripAndReuse) {
  TempFile tmp("pencilcount-cache-test");
  Integer first;
  {
    ResultCache cache(tmp.path.string());
    EngineOptions eo;
    eo.cache = &cache;
    const Engine eng(eo);
    first = eng.w_rp3(7, 2);
    EXPECT_GE(cache.size(), 5u);  // four quadric values and the sum
  }
  const auto lines = lines_of(tmp.path);
  ASSERT_FALSE(lines.empty());
  const auto rec = InvariantRecord::from_line(lines.back());
  EXPECT_EQ(rec.to_line(), lines.back());
  EXPECT_EQ(rec.kind, "w3");
  EXPECT_EQ(rec.value, first);

  // a tampered value in the file is what a reloaded cache returns
  {
    std::ofstream out(tmp.path, std::ios::app);
    InvariantRecord fake{"gw3", std::nullopt, std::nullopt, 30, std::nullopt, 42, "complex"};
    out << fake.to_line() << "\n{not json\n";
  }
  ResultCache reloaded(tmp.path.string());
  EngineOptions eo;
  eo.cache = &reloaded;
  const Engine eng(eo);
  EXPECT_EQ(eng.w_rp3(7, 2), first);
  EXPECT_EQ(eng.gw_cp3(30), 42);
  const auto before = lines_of(tmp.path).size();
  eng.w_rp3(7, 2);
  EXPECT_EQ(lines_of(tmp.path).size(), before);
}

TEST(ResultCache, FieldOrderAndNulls) {
  InvariantRecord r{"w2", 2, 3, std::nullopt, 1, 32, "conjugation"};
  EXPECT_EQ(r.to_line(),
            R"({"kind":"w2","a":2,"b":3,"d":null,"l":1,"value":"32","convention":"conjugation","version":")" +
                std::string(kEngineVersion) + R"("})");
}

TEST(ResultCache, KeysUseNormalizedBidegree) {
  ResultCache cache;
  EngineOptions eo;
  eo.cache = &cache;
  const Engine eng(eo);
  eng.gw_quadric(3, 2);
  const auto n = cache.size();
  eng.gw_quadric(2, 3);
  EXPECT_EQ(cache.size(), n);
}

TEST(ResultCache, ConventionsDoNotShareEntries) {
  ResultCache cache;
  EngineOptions a;
  a.cache = &cache;
  EngineOptions b = a;
  b.convention = Convention::alt_incident;
  const Integer x = Engine(a).w_quadric(2, 3, 2);
  const Integer y = Engine(b).w_quadric(2, 3, 2);
  EXPECT_EQ(x, Engine().w_quadric(2, 3, 2));
  EXPECT_EQ(y, Engine({Convention::alt_incident}).w_quadric(2, 3, 2));
}
