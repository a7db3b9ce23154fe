#pragma once

#include <gmpxx.h>

#include <string>

namespace pencilcount {

/// Exact signed integer used for every count in the library.
using Integer = mpz_class;

inline std::string to_decimal(const Integer& v) { return v.get_str(10); }

inline Integer from_decimal(const std::string& s) { return Integer(s, 10); }

/// Residue in [0, m) for m > 0, independent of the sign of v.
inline long mod_floor(const Integer& v, long m) {
  Integer r = v % m;
  if (r < 0) r += m;
  return r.get_si();
}

}  // namespace pencilcount
