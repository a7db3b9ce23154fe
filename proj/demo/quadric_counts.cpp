// Complex and real counts of rational curves in the quadric, by bidegree.
//
//   quadric_counts [max_total]

#include <cstdlib>
#include <iostream>

#include "pencilcount/invariants.hpp"

int main(int argc, char** argv) {
  using namespace pencilcount;
  const int max_total = argc > 1 ? std::atoi(argv[1]) : 7;
  const Engine eng;
  for (int total = 2; total <= max_total; ++total) {
    for (int a = 1; a <= total / 2; ++a) {
      const int b = total - a;
      std::cout << '(' << a << ',' << b << ")  GW=" << to_decimal(eng.gw_quadric(a, b)) << "  W:";
      for (int l = 0; l < total; ++l) std::cout << ' ' << to_decimal(eng.w_quadric(a, b, l));
      std::cout << '\n';
    }
  }
}
