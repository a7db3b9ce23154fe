#pragma once

// Public computation API: invariants of the quadric and of projective
// 3-space, congruences and descriptive reports.

#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pencilcount/bidegree.hpp"
#include "pencilcount/cache.hpp"
#include "pencilcount/convention.hpp"
#include "pencilcount/error.hpp"
#include "pencilcount/fixtures.hpp"
#include "pencilcount/integer.hpp"
#include "pencilcount/marking.hpp"
#include "pencilcount/scan.hpp"

namespace pencilcount {

/// Raised for l = d: the invariant with only conjugate pairs is not covered
/// by the pencil formula and is known here only as a table value.
class AllConjugateError : public InputError {
 public:
  explicit AllConjugateError(int d)
      : InputError("W(" + std::to_string(d) + "," + std::to_string(d) +
                   ") has no real point; the pencil formula needs l <= d-1 and this value is only "
                   "available as a table fixture (see `verify --suite properties`)") {}
};

enum class EngineKind { scan, explicit_pipeline };

struct EngineOptions {
  Convention convention = kDefaultConvention;
  EngineKind engine = EngineKind::scan;
  unsigned jobs = 1;
  std::size_t state_cap = ScanOptions{}.state_cap;
  bool force_compute = false;
  ResultCache* cache = nullptr;
};

struct CongruenceWitness {
  bool holds = false;
  Integer lhs;
  Integer rhs;
  long lhs_mod4 = 0;
  long rhs_mod4 = 0;
};

struct SignPatternReport {
  int d = 0;
  std::vector<Integer> values;  // (-1)^((d-1)/2) W(d,l), l = 0..d-1
  std::vector<int> signs;       // -1, 0 or 1
  /// First l from which the signs alternate to the end, when the prefix
  /// before it is positive and at least one sign change follows.
  std::optional<int> alternation_start;
  bool positive_then_alternating = true;
};

struct ConjectureReport {
  int d = 0;
  Integer computed;  // W(d,d-1)
  std::optional<Integer> fixture;  // W(d,d) from the tables
  bool testable() const { return fixture.has_value(); }
  bool equal() const { return fixture && *fixture == computed; }
};

inline unsigned default_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

class Engine {
 public:
  explicit Engine(EngineOptions opt = {}) : opt_(opt) {
    if (opt_.jobs == 0) throw InputError("jobs must be at least 1");
  }

  const EngineOptions& options() const { return opt_; }

  Integer gw_quadric(int a, int b) const {
    const Bidegree bd(a, b);
    InvariantRecord rec{"gw2", bd.normalized().a(), bd.normalized().b(), std::nullopt, std::nullopt, 0, "complex"};
    return cached(rec, [&] {
      if (opt_.engine == EngineKind::explicit_pipeline) return explicit_gw_quadric(bd);
      return scan_count(bd, ScanMode::complex_count(), scan_options());
    });
  }

  Integer w_quadric(int a, int b, int l) const {
    const Bidegree bd(a, b);
    if (l < 0 || l > a + b - 1) {
      throw InputError("l=" + std::to_string(l) + " out of range for bidegree " + bd.str() +
                       ": need 0 <= l <= a+b-1 = " + std::to_string(a + b - 1));
    }
    return w_quadric(bd, LabelLayout::standard(bd.point_count(), l));
  }

  /// Welschinger count for an explicit pair layout; cached only for the
  /// standard layout.
  Integer w_quadric(Bidegree bd, const LabelLayout& layout) const {
    auto compute = [&] {
      if (opt_.engine == EngineKind::explicit_pipeline) return explicit_w_quadric(bd, layout, opt_.convention);
      return scan_count(bd, ScanMode::real(layout, opt_.convention), scan_options());
    };
    const int l = layout.pair_count();
    if (!(layout.pair_starts() == LabelLayout::standard(bd.point_count(), l).pair_starts())) return compute();
    InvariantRecord rec{"w2", bd.normalized().a(), bd.normalized().b(), std::nullopt, l, 0,
                        std::string(convention_name(opt_.convention))};
    return cached(rec, compute);
  }

  /// Signed count of real rational space curves of degree d through 2d
  /// points, 2l of them forming conjugate pairs.
  Integer w_rp3(int d, int l) const {
    check_space_args(d, l);
    if (d % 2 == 0 && !opt_.force_compute) return 0;
    InvariantRecord rec{"w3", std::nullopt, std::nullopt, d, l, 0, std::string(convention_name(opt_.convention))};
    auto compute = [&] {
      Integer total = 0;
      for (int a = 0; 2 * a < d; ++a) {
        const Integer w = w_quadric(a, d - a, l);
        total += (a % 2 == 0 ? 1 : -1) * (d - 2 * a) * w;
      }
      return total;
    };
    // the exploratory even-degree sum never enters the cache
    if (d % 2 == 0) return compute();
    return cached(rec, compute);
  }

  /// Number of rational space curves of degree d through 2d points.
  Integer gw_cp3(int d) const {
    if (d < 1) throw InputError("degree must be positive, got " + std::to_string(d));
    InvariantRecord rec{"gw3", std::nullopt, std::nullopt, d, std::nullopt, 0, "complex"};
    return cached(rec, [&] {
      Integer total = 0;
      for (int a = 0; 2 * a < d; ++a) {
        const long c = d - 2 * a;
        total += c * c * gw_quadric(a, d - a);
      }
      return total;
    });
  }

  CongruenceWitness congruence_check(int a, int b, int l) const {
    return witness(gw_quadric(a, b), w_quadric(a, b, l));
  }

  /// GW(d) against (-1)^((d-1)(d-2)/2) W(d,l) modulo 4.
  CongruenceWitness cp3_congruence_check(int d, int l) const {
    const Integer w = w_rp3(d, l);
    const bool flip = ((d - 1) * (d - 2) / 2) % 2 != 0;
    return witness(gw_cp3(d), flip ? Integer(-w) : w);
  }

  SignPatternReport sign_pattern_report(int d) const {
    if (d < 1 || d % 2 == 0) throw InputError("sign pattern needs an odd positive degree, got " + std::to_string(d));
    SignPatternReport r;
    r.d = d;
    const bool flip = ((d - 1) / 2) % 2 != 0;
    for (int l = 0; l < d; ++l) {
      Integer v = w_rp3(d, l);
      if (flip) v = -v;
      r.signs.push_back(sgn(v));
      r.values.push_back(std::move(v));
    }
    int first_change = -1;
    for (int l = 0; l + 1 < d; ++l) {
      if (r.signs[static_cast<std::size_t>(l)] != r.signs[static_cast<std::size_t>(l + 1)]) {
        first_change = l;
        break;
      }
    }
    for (int l = 0; l <= (first_change < 0 ? d - 1 : first_change); ++l) {
      if (r.signs[static_cast<std::size_t>(l)] <= 0) r.positive_then_alternating = false;
    }
    if (first_change >= 0) {
      for (int l = first_change; l + 1 < d; ++l) {
        const int s = r.signs[static_cast<std::size_t>(l)];
        if (s == 0 || s == r.signs[static_cast<std::size_t>(l + 1)]) r.positive_then_alternating = false;
      }
      if (r.positive_then_alternating) r.alternation_start = first_change;
    }
    return r;
  }

  /// Computed W(d,d-1) next to the table value W(d,d).
  ConjectureReport conjecture_report(int d) const {
    if (d < 1 || d % 2 == 0) throw InputError("conjecture report needs an odd positive degree, got " + std::to_string(d));
    ConjectureReport r;
    r.d = d;
    r.computed = w_rp3(d, d - 1);
    r.fixture = table_value(d, d);
    return r;
  }

 private:
  static void check_space_args(int d, int l) {
    if (d < 1) throw InputError("degree must be positive, got " + std::to_string(d));
    if (l == d) throw AllConjugateError(d);
    if (l < 0 || l > d) {
      throw InputError("l=" + std::to_string(l) + " out of range for d=" + std::to_string(d) +
                       ": need 0 <= l <= d-1");
    }
  }

  static CongruenceWitness witness(Integer lhs, Integer rhs) {
    CongruenceWitness w;
    w.lhs_mod4 = mod_floor(lhs, 4);
    w.rhs_mod4 = mod_floor(rhs, 4);
    w.holds = w.lhs_mod4 == w.rhs_mod4;
    w.lhs = std::move(lhs);
    w.rhs = std::move(rhs);
    return w;
  }

  ScanOptions scan_options() const {
    ScanOptions s;
    s.jobs = opt_.jobs;
    s.state_cap = opt_.state_cap;
    return s;
  }

  template <class F>
  Integer cached(InvariantRecord rec, F&& compute) const {
    // explicit-pipeline results are not mixed into the scan cache
    if (!opt_.cache || opt_.engine != EngineKind::scan) return compute();
    if (auto hit = opt_.cache->find(rec.key())) return *hit;
    rec.value = compute();
    opt_.cache->store(rec);
    return rec.value;
  }

  EngineOptions opt_;
};

}  // namespace pencilcount
