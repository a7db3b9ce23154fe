// Size of the left-to-right scan for one bidegree: distinct states after
// each label and the peak.

#include <cstdlib>
#include <iostream>

#include "pencilcount/scan.hpp"

int main(int argc, char** argv) {
  using namespace pencilcount;
  const Bidegree bd(argc > 2 ? std::atoi(argv[1]) : 4, argc > 2 ? std::atoi(argv[2]) : 5);
  const auto r = state_space_report(bd);
  for (const auto& p : r.positions) std::cout << p.label << '\t' << p.distinct_states << '\t' << p.transitions << '\n';
  std::cout << "peak " << r.peak_states << " states, about " << r.peak_bytes << " bytes\n";
}
