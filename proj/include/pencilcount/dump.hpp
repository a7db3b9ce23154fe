#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pencilcount/convention.hpp"
#include "pencilcount/diagram.hpp"
#include "pencilcount/marking.hpp"

namespace pencilcount {

/// One diagram with its complex weight and its real contributions for every
/// admissible number of pairs s under the convention (contrib_s0, ...).
inline nlohmann::ordered_json dump_diagram(const FloorDiagram& d, Convention c) {
  nlohmann::ordered_json j;
  j["floors"] = d.floor_count();
  auto elevators = nlohmann::ordered_json::array();
  for (const auto& e : d.elevators()) elevators.push_back({e.source, e.target, e.weight});
  j["elevators"] = elevators;
  j["bottom"] = std::vector<int>(d.bottom_edges().begin(), d.bottom_edges().end());
  j["top"] = std::vector<int>(d.top_edges().begin(), d.top_edges().end());
  j["aut"] = automorphism_count(d);
  j["mu_complex"] = to_decimal(complex_multiplicity(d));
  j["markings"] = to_decimal(count_complex_markings(d));
  const int n = d.element_count();
  for (int s = 0; 2 * s < n; ++s) {
    j["contrib_s" + std::to_string(s)] = to_decimal(real_contribution(d, s, c));
  }
  return j;
}

inline nlohmann::ordered_json dump_diagrams(Bidegree bd, Convention c) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& d : enumerate_diagrams(bd)) out.push_back(dump_diagram(d, c));
  return out;
}

}  // namespace pencilcount
