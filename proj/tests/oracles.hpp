#pragma once

// Test-side reference implementations. None of them shares code with the
// library beyond the FloorDiagram container: diagrams come from labelled
// trees, automorphisms and markings from exhaustive permutation search, and
// the complex counts from the associativity recursion of quantum cohomology.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include <gmpxx.h>

#include "pencilcount/diagram.hpp"

namespace oracle {

using Int = mpz_class;

// --- Gromov-Witten numbers of the quadric ------------------------------------

inline Int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// N(a,b) through 2(a+b)-1 points from the associativity equation
/// 2ab N(a,b) = sum C(n-1, n1) N1 N2 (a1^3 b2^3 - a1^2 b1 a2 b2^2)
/// over splittings into nonzero classes, n = 2(a+b)-1, n1 = 2(a1+b1)-1.
class QuadricWdvv {
 public:
  Int operator()(int a, int b) {
    if (a < 0 || b < 0 || a + b == 0) return 0;
    if (a == 0 || b == 0) return (a + b == 1) ? 1 : 0;
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int n = 2 * (a + b) - 1;
    Int sum = 0;
    for (int a1 = 0; a1 <= a; ++a1) {
      for (int b1 = 0; b1 <= b; ++b1) {
        const int a2 = a - a1, b2 = b - b1;
        if (a1 + b1 == 0 || a2 + b2 == 0) continue;
        const Int n1v = (*this)(a1, b1), n2v = (*this)(a2, b2);
        if (n1v == 0 || n2v == 0) continue;
        const int n1 = 2 * (a1 + b1) - 1;
        const Int term = Int(a1 * a1 * a1) * (b2 * b2 * b2) - Int(a1 * a1 * b1) * (a2 * b2 * b2);
        sum += binom(n - 1, n1) * n1v * n2v * term;
      }
    }
    Int r = sum / (2 * a * b);
    memo_[key] = r;
    return r;
  }

 private:
  std::map<std::pair<int, int>, Int> memo_;
};

// --- floor diagrams from labelled trees --------------------------------------

/// A diagram given by floors 0..b-1, directed weighted edges and per-floor
/// counts of bottom and top ends.
struct RawDiagram {
  int b = 0;
  std::vector<std::tuple<int, int, int>> edges;
  std::vector<int> bottoms;
  std::vector<int> tops;
};

inline RawDiagram from_library(const pencilcount::FloorDiagram& d) {
  RawDiagram r;
  r.b = d.floor_count();
  for (const auto& e : d.elevators()) r.edges.emplace_back(e.source, e.target, e.weight);
  r.bottoms.assign(static_cast<std::size_t>(r.b), 0);
  r.tops.assign(static_cast<std::size_t>(r.b), 0);
  for (int f : d.bottom_edges()) ++r.bottoms[static_cast<std::size_t>(f)];
  for (int f : d.top_edges()) ++r.tops[static_cast<std::size_t>(f)];
  return r;
}

using Form = std::tuple<std::vector<std::tuple<int, int, int>>, std::vector<int>, std::vector<int>>;

inline Form image(const RawDiagram& r, const std::vector<int>& p) {
  std::vector<std::tuple<int, int, int>> e;
  for (auto [u, v, w] : r.edges) e.emplace_back(p[static_cast<std::size_t>(u)], p[static_cast<std::size_t>(v)], w);
  std::sort(e.begin(), e.end());
  std::vector<int> bo(static_cast<std::size_t>(r.b)), to(static_cast<std::size_t>(r.b));
  for (int f = 0; f < r.b; ++f) {
    bo[static_cast<std::size_t>(p[static_cast<std::size_t>(f)])] = r.bottoms[static_cast<std::size_t>(f)];
    to[static_cast<std::size_t>(p[static_cast<std::size_t>(f)])] = r.tops[static_cast<std::size_t>(f)];
  }
  return {e, bo, to};
}

/// Smallest image over all floor relabellings.
inline Form canonical_form(const RawDiagram& r) {
  std::vector<int> p(static_cast<std::size_t>(r.b));
  std::iota(p.begin(), p.end(), 0);
  Form best = image(r, p);
  while (std::next_permutation(p.begin(), p.end())) best = std::min(best, image(r, p));
  return best;
}

/// Number of floor relabellings fixing the diagram, times the permutations
/// of parallel unbounded ends.
inline Int automorphisms(const RawDiagram& r) {
  std::vector<int> p(static_cast<std::size_t>(r.b));
  std::iota(p.begin(), p.end(), 0);
  const Form self = image(r, p);
  Int fixing = 0;
  do {
    if (image(r, p) == self) ++fixing;
  } while (std::next_permutation(p.begin(), p.end()));
  Int ends = 1;
  for (int f = 0; f < r.b; ++f) {
    for (int k = 2; k <= r.bottoms[static_cast<std::size_t>(f)]; ++k) ends *= k;
    for (int k = 2; k <= r.tops[static_cast<std::size_t>(f)]; ++k) ends *= k;
  }
  return fixing * ends;
}

/// All divergence-0 diagrams of bidegree (a,b): every labelled tree on b
/// floors (Pruefer codes) oriented from smaller to larger label, every weight
/// assignment in 1..a, every placement of the a bottom and a top ends.
/// Returned as the set of canonical forms.
inline std::set<Form> brute_force_diagrams(int a, int b) {
  std::set<Form> out;
  if (b == 0) return a == 1 ? brute_force_diagrams(0, 1) : out;
  if (a == 0) {
    if (b == 1) out.insert(canonical_form({1, {}, {0}, {0}}));
    return out;
  }
  std::vector<std::vector<std::pair<int, int>>> trees;
  if (b == 1) {
    trees.push_back({});
  } else {
    std::vector<int> code(static_cast<std::size_t>(b - 2), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == code.size()) {
        std::vector<int> degree(static_cast<std::size_t>(b), 1);
        for (int c : code) ++degree[static_cast<std::size_t>(c)];
        std::vector<std::pair<int, int>> edges;
        for (int c : code) {
          int leaf = 0;
          while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
          edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
          --degree[static_cast<std::size_t>(leaf)];
          --degree[static_cast<std::size_t>(c)];
        }
        int u = -1, v = -1;
        for (int f = 0; f < b; ++f) {
          if (degree[static_cast<std::size_t>(f)] == 1) (u < 0 ? u : v) = f;
        }
        edges.emplace_back(u, v);
        trees.push_back(edges);
        return;
      }
      for (int c = 0; c < b; ++c) {
        code[i] = c;
        rec(i + 1);
      }
    };
    rec(0);
  }
  // multisets of floors of size a, as count vectors
  std::vector<std::vector<int>> placements;
  std::vector<int> cnt(static_cast<std::size_t>(b), 0);
  std::function<void(int, int)> place = [&](int f, int left) {
    if (f == b - 1) {
      cnt[static_cast<std::size_t>(f)] = left;
      placements.push_back(cnt);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cnt[static_cast<std::size_t>(f)] = k;
      place(f + 1, left - k);
    }
  };
  place(0, a);
  for (const auto& tree : trees) {
    std::vector<int> w(tree.size(), 1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == tree.size()) {
        for (const auto& bo : placements) {
          for (const auto& to : placements) {
            RawDiagram r{b, {}, bo, to};
            std::vector<int> div(static_cast<std::size_t>(b), 0);
            for (std::size_t k = 0; k < tree.size(); ++k) {
              r.edges.emplace_back(tree[k].first, tree[k].second, w[k]);
              div[static_cast<std::size_t>(tree[k].first)] += w[k];
              div[static_cast<std::size_t>(tree[k].second)] -= w[k];
            }
            bool ok = true;
            for (int f = 0; f < b; ++f) {
              ok = ok && div[static_cast<std::size_t>(f)] + to[static_cast<std::size_t>(f)] -
                                 bo[static_cast<std::size_t>(f)] == 0;
            }
            if (ok) out.insert(canonical_form(r));
          }
        }
        return;
      }
      for (int x = 1; x <= a; ++x) {
        w[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return out;
}

// --- markings by permutation search --------------------------------------------

/// Elements in a fixed order: floors, elevators, bottom ends, top ends.
/// kind 0 floor, 1 elevator, 2 bottom, 3 top; src/dst are floors or -1.
struct Elem {
  int kind;
  int src;
  int dst;
  int w;
};

inline std::vector<Elem> elements(const RawDiagram& r) {
  std::vector<Elem> out;
  for (int f = 0; f < r.b; ++f) out.push_back({0, -1, -1, 1});
  for (auto [u, v, w] : r.edges) out.push_back({1, u, v, w});
  for (int f = 0; f < r.b; ++f) {
    for (int k = 0; k < r.bottoms[static_cast<std::size_t>(f)]; ++k) out.push_back({2, -1, f, 1});
  }
  for (int f = 0; f < r.b; ++f) {
    for (int k = 0; k < r.tops[static_cast<std::size_t>(f)]; ++k) out.push_back({3, f, -1, 1});
  }
  return out;
}

/// Calls fn(pos) for every bijection pos: element -> label (0-based) such
/// that each edge sits strictly between its endpoints.
inline void for_each_labelling(const std::vector<Elem>& els, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pos(els.size());
  std::iota(pos.begin(), pos.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < els.size() && ok; ++i) {
      const auto& e = els[i];
      if (e.src >= 0) ok = pos[static_cast<std::size_t>(e.src)] < pos[i];
      if (ok && e.dst >= 0) ok = pos[i] < pos[static_cast<std::size_t>(e.dst)];
    }
    if (ok) fn(pos);
  } while (std::next_permutation(pos.begin(), pos.end()));
}

inline Int labelled_markings(const RawDiagram& r) {
  Int n = 0;
  for_each_labelling(elements(r), [&](const std::vector<int>&) { ++n; });
  return n;
}

/// Real weight of one labelling when labels {k, k+1} for k in `starts`
/// (0-based) are conjugate. Conjugate elements of the same kind must be
/// exchanged by an automorphism; a floor may instead pair with an edge at
/// it. Returns nullopt-like {false, 0} when inadmissible.
inline std::pair<bool, Int> conjugation_weight(const std::vector<Elem>& els, const std::vector<int>& pos,
                                               const std::vector<int>& starts) {
  const std::size_t n = els.size();
  std::vector<int> at(n);
  for (std::size_t i = 0; i < n; ++i) at[static_cast<std::size_t>(pos[i])] = static_cast<int>(i);
  std::vector<int> inv(n);
  std::iota(inv.begin(), inv.end(), 0);
  std::vector<int> role(n, 0);  // 1 swapped, 2 real vertex
  for (int k : starts) {
    const int x = at[static_cast<std::size_t>(k)], y = at[static_cast<std::size_t>(k + 1)];
    const auto &ex = els[static_cast<std::size_t>(x)], &ey = els[static_cast<std::size_t>(y)];
    if (ex.kind == ey.kind) {
      inv[static_cast<std::size_t>(x)] = y;
      inv[static_cast<std::size_t>(y)] = x;
      role[static_cast<std::size_t>(x)] = role[static_cast<std::size_t>(y)] = 1;
      continue;
    }
    auto at_floor = [](const Elem& edge, int f) { return edge.src == f || edge.dst == f; };
    if ((ex.kind == 0 && at_floor(ey, x)) || (ey.kind == 0 && at_floor(ex, y))) {
      role[static_cast<std::size_t>(x)] = role[static_cast<std::size_t>(y)] = 2;
      continue;
    }
    return {false, 0};
  }
  auto map_floor = [&](int f) { return f < 0 ? -1 : inv[static_cast<std::size_t>(f)]; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto &e = els[i], &g = els[static_cast<std::size_t>(inv[i])];
    if (e.kind != g.kind || e.w != g.w || map_floor(e.src) != g.src || map_floor(e.dst) != g.dst) return {false, 0};
  }
  Int v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = els[i];
    if (e.kind != 1) continue;
    if (role[i] == 1) {
      if (static_cast<int>(i) < inv[i]) v *= e.w * e.w;
    } else if (e.w % 2 == 0) {
      return {true, 0};
    } else if (role[i] == 2) {
      v *= e.w;
    }
  }
  return {true, v};
}

/// Sum over labellings of the conjugation weight, divided by automorphisms.
inline Int real_count(const RawDiagram& r, const std::vector<int>& starts) {
  const auto els = elements(r);
  Int sum = 0;
  for_each_labelling(els, [&](const std::vector<int>& pos) {
    auto [ok, v] = conjugation_weight(els, pos, starts);
    if (ok) sum += v;
  });
  return sum / automorphisms(r);
}

/// Pair starts (0-based) of the layout with `pairs` blocks at the top.
inline std::vector<int> top_pairs(int n, int pairs) {
  std::vector<int> s;
  for (int i = 0; i < pairs; ++i) s.push_back(n - 2 * pairs + 2 * i);
  return s;
}

}  // namespace oracle
