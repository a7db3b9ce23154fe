// Rational space curves through 2d points: the complex count, the real
// count for every number of conjugate pairs, and the mod 4 check between them.

#include <iostream>

#include "pencilcount/invariants.hpp"

int main() {
  using namespace pencilcount;
  EngineOptions opt;
  opt.jobs = default_jobs();
  const Engine eng(opt);
  for (int d = 1; d <= 9; d += 2) {
    std::cout << "d=" << d << "  GW=" << to_decimal(eng.gw_cp3(d)) << '\n';
    for (int l = 0; l < d; ++l) {
      const auto w = eng.cp3_congruence_check(d, l);
      std::cout << "  l=" << l << "  W=" << to_decimal(eng.w_rp3(d, l)) << (w.holds ? "" : "  (mod 4 mismatch)")
                << '\n';
    }
  }
}
