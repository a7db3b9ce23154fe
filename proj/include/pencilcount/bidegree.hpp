#pragma once

#include <algorithm>
#include <string>

#include "pencilcount/error.hpp"

namespace pencilcount {

/// Homology class (a, b) of a curve in the quadric: a is the width and b the
/// height of the rectangular Newton polygon.
class Bidegree {
 public:
  Bidegree(int a, int b) : a_(a), b_(b) {
    if (a < 0 || b < 0 || a + b < 1) {
      throw InputError("invalid bidegree (" + std::to_string(a) + "," + std::to_string(b) +
                       "): need a >= 0, b >= 0, a + b >= 1");
    }
  }

  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }

  /// Number of point constraints, 2(a+b) - 1.
  int point_count() const noexcept { return 2 * (a_ + b_) - 1; }

  /// Representative with a <= b; the invariants are symmetric in (a, b).
  Bidegree normalized() const { return {std::min(a_, b_), std::max(a_, b_)}; }

  std::string str() const { return "(" + std::to_string(a_) + "," + std::to_string(b_) + ")"; }

  friend bool operator==(const Bidegree&, const Bidegree&) = default;

 private:
  int a_;
  int b_;
};

}  // namespace pencilcount
