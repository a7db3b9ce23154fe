#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "pencilcount/convention.hpp"
#include "pencilcount/diagram.hpp"
#include "pencilcount/error.hpp"
#include "pencilcount/integer.hpp"

namespace pencilcount {

/// Which labels 1..n are real points and which form conjugate pair blocks.
/// A pair block is two consecutive labels {k, k+1}; `pair_starts` holds k.
class LabelLayout {
 public:
  LabelLayout(int n, std::vector<int> pair_starts) : n_(n), starts_(std::move(pair_starts)) {
    std::sort(starts_.begin(), starts_.end());
    int last = 0;
    for (int k : starts_) {
      if (k < 1 || k + 1 > n_ || k <= last) {
        throw InputError("invalid pair layout: block at label " + std::to_string(k) + " for n=" +
                         std::to_string(n_));
      }
      last = k + 1;
    }
    if (single_count() < 1) throw InputError("layout needs at least one real point");
  }

  /// Singles on labels 1..r, pairs on {r+1,r+2}, ..., {n-1,n}.
  static LabelLayout standard(int n, int pairs) {
    check_pairs(n, pairs);
    std::vector<int> starts;
    for (int i = 0; i < pairs; ++i) starts.push_back(n - 2 * pairs + 1 + 2 * i);
    return {n, std::move(starts)};
  }

  /// Pairs on {1,2}, ..., {2s-1,2s}, singles after.
  static LabelLayout pairs_first(int n, int pairs) {
    check_pairs(n, pairs);
    std::vector<int> starts;
    for (int i = 0; i < pairs; ++i) starts.push_back(1 + 2 * i);
    return {n, std::move(starts)};
  }

  /// Pairs alternate with single labels starting at label 2 while singles last.
  static LabelLayout interleaved(int n, int pairs) {
    check_pairs(n, pairs);
    std::vector<int> starts;
    int label = 1;
    int singles = n - 2 * pairs;
    for (int i = 0; i < pairs; ++i) {
      if (singles > 0) {
        ++label;
        --singles;
      }
      starts.push_back(label);
      label += 2;
    }
    return {n, std::move(starts)};
  }

  int size() const noexcept { return n_; }
  int pair_count() const noexcept { return static_cast<int>(starts_.size()); }
  int single_count() const noexcept { return n_ - 2 * pair_count(); }
  const std::vector<int>& pair_starts() const noexcept { return starts_; }
  bool starts_pair(int label) const {
    return std::binary_search(starts_.begin(), starts_.end(), label);
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < starts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(starts_[i]) + "-" + std::to_string(starts_[i] + 1);
    }
    return s + "}";
  }

  friend bool operator==(const LabelLayout&, const LabelLayout&) = default;

 private:
  static void check_pairs(int n, int pairs) {
    if (pairs < 0 || n - 2 * pairs < 1) {
      throw InputError("pair count " + std::to_string(pairs) + " leaves no real point among " +
                       std::to_string(n) + " labels");
    }
  }

  int n_;
  std::vector<int> starts_;
};

/// Bijection from labels to diagram elements: `element_at[label-1]` indexes
/// `FloorDiagram::elements()`.
struct Marking {
  std::vector<int> element_at;
};

namespace detail {

/// For each element, the elements that must carry smaller labels.
inline std::vector<std::vector<int>> predecessors(const FloorDiagram& d,
                                                  const std::vector<DiagramElement>& els) {
  std::vector<std::vector<int>> pred(els.size());
  for (std::size_t i = 0; i < els.size(); ++i) {
    const auto& e = els[i];
    if (e.is_floor()) continue;
    if (e.source >= 0) pred[i].push_back(e.source);
    if (e.target >= 0) pred[static_cast<std::size_t>(e.target)].push_back(static_cast<int>(i));
  }
  (void)d;
  return pred;
}

}  // namespace detail

/// Calls `fn` on every order-compatible labelled bijection. Depth-first over
/// labels 1..n, smallest available element first.
inline void for_each_marking(const FloorDiagram& d, const std::function<void(const Marking&)>& fn) {
  const auto els = d.elements();
  const auto pred = detail::predecessors(d, els);
  const std::size_t n = els.size();
  std::vector<char> used(n, 0);
  Marking m;
  m.element_at.reserve(n);
  std::function<void()> rec = [&] {
    if (m.element_at.size() == n) {
      fn(m);
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      bool ready = std::all_of(pred[x].begin(), pred[x].end(),
                               [&](int p) { return used[static_cast<std::size_t>(p)] != 0; });
      if (!ready) continue;
      used[x] = 1;
      m.element_at.push_back(static_cast<int>(x));
      rec();
      m.element_at.pop_back();
      used[x] = 0;
    }
  };
  rec();
}

inline bool is_order_compatible(const FloorDiagram& d, const Marking& m) {
  const auto els = d.elements();
  if (m.element_at.size() != els.size()) return false;
  std::vector<int> label(els.size(), -1);
  for (std::size_t k = 0; k < m.element_at.size(); ++k) {
    int x = m.element_at[k];
    if (x < 0 || x >= static_cast<int>(els.size()) || label[static_cast<std::size_t>(x)] >= 0) return false;
    label[static_cast<std::size_t>(x)] = static_cast<int>(k);
  }
  const auto pred = detail::predecessors(d, els);
  for (std::size_t x = 0; x < els.size(); ++x) {
    for (int p : pred[x]) {
      if (label[static_cast<std::size_t>(p)] > label[x]) return false;
    }
  }
  return true;
}

/// Number of labelled order-compatible bijections.
inline Integer count_labeled_markings(const FloorDiagram& d) {
  Integer count = 0;
  for_each_marking(d, [&](const Marking&) { ++count; });
  return count;
}

/// Automorphism orbits of markings. The action is free, so this is the
/// labelled count divided by the automorphism count.
inline Integer count_complex_markings(const FloorDiagram& d) {
  Integer labeled = count_labeled_markings(d);
  const Integer aut = static_cast<unsigned long>(automorphism_count(d));
  if (labeled % aut != 0) throw ContractError("automorphism group does not act freely on markings");
  return labeled / aut;
}

namespace detail {

/// Returns the real multiplicity, or nullopt-like `valid=false` when the
/// marking is not admissible for the layout under the convention.
struct RealEvaluation {
  bool valid = false;
  Integer value = 0;
};

inline bool edge_local_pair_ok(const DiagramElement& x, const DiagramElement& y, PairScope scope) {
  if (x.is_floor() && y.is_floor()) return false;
  if (x.is_floor()) return y.touches(x.id);
  if (y.is_floor()) return x.touches(y.id);
  if (scope == PairScope::origin_only) return x.source >= 0 && x.source == y.source;
  auto shares = [&](int f) { return f >= 0 && (f == y.source || f == y.target); };
  return shares(x.source) || shares(x.target);
}

inline RealEvaluation evaluate_edge_local(const std::vector<DiagramElement>& els, const Marking& m,
                                          const LabelLayout& layout, Convention c) {
  std::vector<char> covered(els.size(), 0);
  for (int k : layout.pair_starts()) {
    int x = m.element_at[static_cast<std::size_t>(k - 1)];
    int y = m.element_at[static_cast<std::size_t>(k)];
    if (!edge_local_pair_ok(els[static_cast<std::size_t>(x)], els[static_cast<std::size_t>(y)], pair_scope(c))) {
      return {};
    }
    covered[static_cast<std::size_t>(x)] = covered[static_cast<std::size_t>(y)] = 1;
  }
  Integer v = 1;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (els[i].kind != ElementKind::bounded_elevator) continue;
    v *= covered[i] ? covered_factor(c, els[i].weight) : uncovered_factor(c, els[i].weight);
  }
  return {true, v};
}

inline RealEvaluation evaluate_conjugation(const std::vector<DiagramElement>& els, const Marking& m,
                                           const LabelLayout& layout) {
  const std::size_t n = els.size();
  std::vector<int> phi(n);
  std::iota(phi.begin(), phi.end(), 0);
  std::vector<char> vertex_pair(n, 0);
  std::vector<char> swapped(n, 0);
  for (int k : layout.pair_starts()) {
    const int x = m.element_at[static_cast<std::size_t>(k - 1)];
    const int y = m.element_at[static_cast<std::size_t>(k)];
    const auto& ex = els[static_cast<std::size_t>(x)];
    const auto& ey = els[static_cast<std::size_t>(y)];
    if (ex.kind == ey.kind) {
      phi[static_cast<std::size_t>(x)] = y;
      phi[static_cast<std::size_t>(y)] = x;
      swapped[static_cast<std::size_t>(x)] = swapped[static_cast<std::size_t>(y)] = 1;
    } else if ((ex.is_floor() && ey.touches(ex.id)) || (ey.is_floor() && ex.touches(ey.id))) {
      vertex_pair[static_cast<std::size_t>(x)] = vertex_pair[static_cast<std::size_t>(y)] = 1;
    } else {
      return {};
    }
  }
  // phi must be an automorphism; floors are elements 0..b-1
  auto img = [&](int floor) { return floor < 0 ? -1 : phi[static_cast<std::size_t>(floor)]; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = els[i];
    const auto& f = els[static_cast<std::size_t>(phi[i])];
    if (e.kind != f.kind || e.weight != f.weight) return {};
    if (e.is_edge() && (img(e.source) != f.source || img(e.target) != f.target)) return {};
  }
  Integer v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (els[i].kind != ElementKind::bounded_elevator) continue;
    const int w = els[i].weight;
    if (swapped[i]) {
      if (static_cast<int>(i) < phi[i]) v *= w * w;
    } else if (vertex_pair[i]) {
      v *= covered_factor(Convention::conjugation, w);
    } else {
      v *= uncovered_factor(Convention::conjugation, w);
    }
  }
  return {true, v};
}

inline RealEvaluation evaluate(const std::vector<DiagramElement>& els, const Marking& m,
                               const LabelLayout& layout, Convention c) {
  return c == Convention::conjugation ? evaluate_conjugation(els, m, layout)
                                      : evaluate_edge_local(els, m, layout, c);
}

}  // namespace detail

/// Whether the pair blocks of the layout are admissible for the marking.
inline bool is_real_marking(const FloorDiagram& d, const Marking& m, const LabelLayout& layout,
                            Convention c) {
  if (layout.size() != d.element_count() || !is_order_compatible(d, m)) return false;
  return detail::evaluate(d.elements(), m, layout, c).valid;
}

/// Signed contribution of one marking. Throws ContractError when the marking
/// is not order compatible or a pair block is inadmissible.
inline Integer real_multiplicity(const FloorDiagram& d, const Marking& m, const LabelLayout& layout,
                                 Convention c) {
  if (layout.size() != d.element_count()) throw ContractError("layout size differs from element count");
  if (!is_order_compatible(d, m)) throw ContractError("marking is not order compatible");
  auto r = detail::evaluate(d.elements(), m, layout, c);
  if (!r.valid) throw ContractError("marking violates the pair blocks of layout " + layout.str());
  return r.value;
}

/// Sum of real multiplicities over automorphism orbits of admissible markings.
inline Integer real_contribution(const FloorDiagram& d, const LabelLayout& layout, Convention c) {
  if (layout.size() != d.element_count()) throw ContractError("layout size differs from element count");
  const auto els = d.elements();
  Integer sum = 0;
  for_each_marking(d, [&](const Marking& m) {
    auto r = detail::evaluate(els, m, layout, c);
    if (r.valid) sum += r.value;
  });
  const Integer aut = static_cast<unsigned long>(automorphism_count(d));
  if (sum % aut != 0) throw ContractError("real contribution not divisible by automorphism count");
  return sum / aut;
}

/// Standard layout with `pairs` conjugate pairs at the top of the order.
inline Integer real_contribution(const FloorDiagram& d, int pairs, Convention c) {
  return real_contribution(d, LabelLayout::standard(d.element_count(), pairs), c);
}

/// Gromov-Witten count of the quadric through the explicit diagram enumeration.
inline Integer explicit_gw_quadric(Bidegree bd) {
  Integer total = 0;
  for (const auto& d : enumerate_diagrams(bd)) total += complex_multiplicity(d) * count_complex_markings(d);
  return total;
}

/// Welschinger count of the quadric through the explicit diagram enumeration.
inline Integer explicit_w_quadric(Bidegree bd, const LabelLayout& layout, Convention c) {
  if (layout.size() != bd.point_count()) throw ContractError("layout size differs from point count");
  Integer total = 0;
  for (const auto& d : enumerate_diagrams(bd)) total += real_contribution(d, layout, c);
  return total;
}

}  // namespace pencilcount
