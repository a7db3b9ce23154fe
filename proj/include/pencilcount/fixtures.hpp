#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pencilcount/error.hpp"
#include "pencilcount/integer.hpp"

namespace pencilcount {

enum class FixtureSource { table1, table2, derived };

inline std::string_view fixture_source_name(FixtureSource s) {
  switch (s) {
    case FixtureSource::table1: return "table1";
    case FixtureSource::table2: return "table2";
    case FixtureSource::derived: return "derived";
  }
  return "?";
}

/// One reference value. Table rows carry the space degree d and the number l
/// of conjugate pairs; derived quadric rows also carry (a,b).
struct OracleFixture {
  FixtureSource source = FixtureSource::table1;
  std::string kind;  // w3, gw3, w2 or gw2
  int d = 0;
  std::optional<int> l;
  int a = -1;
  int b = -1;
  std::string value;
  std::string derivation;

  Integer integer() const { return from_decimal(value); }
};

namespace detail {

struct TableColumn {
  int d;
  std::vector<const char*> values;  // l = 0..d
};

// Transcribed column by column; index in `values` is l.
inline const std::vector<TableColumn>& table1_columns() {
  static const std::vector<TableColumn> cols = {
      {1, {"1", "1"}},
      {3, {"-1", "-1", "-1", "-1"}},
      {5, {"45", "29", "17", "9", "5", "5"}},
      {7, {"-14589", "-6957", "-3093", "-1269", "-477", "-173", "-85", "-85"}},
      {9, {"17756793", "6717465", "2407365", "812157", "256065", "75281", "21165", "6165", "1993", "1993"}},
      {11,
       {"-58445425017", "-18318948633", "-5495423913", "-1571343273", "-426170217", "-109136649",
        "-26389305", "-6109369", "-1401241", "-336441", "-136457", "-136457"}},
      {13,
       {"426876362998821", "114201657733941", "29447853240537", "7298043143697", "1732456594269",
        "392521356477", "84651531633", "17390628729", "3432362709", "663105669", "129344841", "27607073",
        "3991693", "3991693"}},
  };
  return cols;
}

inline const std::vector<TableColumn>& table2_columns() {
  static const std::vector<TableColumn> cols = {
      {15,
       {"-6061743911446054965", "-1414422922125979269", "-319737783634469757", "-69876860779936989",
        "-14727767907263157", "-2985647746084965", "-580664589588189", "-108170761670685", "-19320554509557",
        "-3327374698245", "-558961586685", "-93320976413", "-16000904949", "-2937725541", "-1580831965",
        "-1580831965"}},
      {17,
       {"152244625648721441783409", "31497207519483035166897", "6337510847893018140813",
        "1238195460245786397189", "234469282186353521817", "42946188374781866313", "7592707791183642453",
        "1293343577697132477", "212071309052944257", "33506171960522913", "5121214631258589",
        "763120829396277", "112222758491433", "16596074817721", "2542297019941", "447392666733",
        "-129358296175", "-129358296175"}},
  };
  return cols;
}

inline std::vector<OracleFixture> build_fixtures() {
  std::vector<OracleFixture> out;
  auto add_table = [&](FixtureSource src, const std::vector<TableColumn>& cols) {
    for (const auto& c : cols) {
      for (std::size_t l = 0; l < c.values.size(); ++l) {
        out.push_back({src, "w3", c.d, static_cast<int>(l), -1, -1, c.values[l], ""});
      }
    }
  };
  add_table(FixtureSource::table1, table1_columns());
  add_table(FixtureSource::table2, table2_columns());

  const char* w23[] = {"48", "32", "20", "12", "8"};
  for (int l = 0; l < 5; ++l) {
    out.push_back({FixtureSource::derived, "w2", 5, l, 2, 3, w23[l],
                   "W((2,3),l) = W(5,l) + 3*W((1,4),l) with W((1,4),l) = 1"});
  }
  out.push_back({FixtureSource::derived, "gw2", 4, std::nullopt, 2, 2, "12", "complex count of the three (2,2) diagrams"});
  out.push_back({FixtureSource::derived, "gw2", 5, std::nullopt, 2, 3, "96", "GW3(5) - 9*GW(1,4) = 105 - 9"});
  const char* gw3[] = {"1", "0", "1", "4", "105"};
  for (int d = 1; d <= 5; ++d) {
    out.push_back({FixtureSource::derived, "gw3", d, std::nullopt, -1, -1, gw3[d - 1],
                   "classical count of rational space curves through 2d points"});
  }
  return out;
}

inline std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

/// FNV-1a over every field that identifies a fixture and its value.
inline std::uint64_t fixture_checksum(const std::vector<OracleFixture>& fx) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& f : fx) {
    std::string row;
    row += fixture_source_name(f.source);
    row += '|' + f.kind + '|' + std::to_string(f.d) + '|' + (f.l ? std::to_string(*f.l) : "-") + '|' +
           std::to_string(f.a) + '|' + std::to_string(f.b) + '|' + f.value + '\n';
    h = detail::fnv1a(h, row);
  }
  return h;
}

inline constexpr std::uint64_t kFixtureChecksum = 0xac92ca10040816e3ULL;

/// Throws IntegrityError when the list does not hash to `expected`.
inline void check_fixture_integrity(const std::vector<OracleFixture>& fx, std::uint64_t expected) {
  const auto got = fixture_checksum(fx);
  if (got != expected) {
    throw IntegrityError("fixture checksum mismatch: expected " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

inline const std::vector<OracleFixture>& load_fixtures() {
  static const std::vector<OracleFixture> fx = [] {
    auto v = detail::build_fixtures();
    check_fixture_integrity(v, kFixtureChecksum);
    return v;
  }();
  return fx;
}

/// Table value W(d,l), if transcribed.
inline std::optional<Integer> table_value(int d, int l) {
  for (const auto& f : load_fixtures()) {
    if (f.kind == "w3" && f.d == d && f.l == l && f.source != FixtureSource::derived) return f.integer();
  }
  return std::nullopt;
}

/// Odd degrees with a transcribed column.
inline std::vector<int> table_degrees() {
  std::vector<int> out;
  for (const auto& f : load_fixtures()) {
    if (f.kind == "w3" && f.source != FixtureSource::derived && (out.empty() || out.back() != f.d)) {
      out.push_back(f.d);
    }
  }
  return out;
}

}  // namespace pencilcount
