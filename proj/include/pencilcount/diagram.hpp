#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pencilcount/bidegree.hpp"
#include "pencilcount/error.hpp"
#include "pencilcount/integer.hpp"

namespace pencilcount {

enum class ElementKind : std::uint8_t { floor, bounded_elevator, bottom_edge, top_edge };

/// Bounded elevator between two floors; source comes first in the floor order.
struct Elevator {
  int source = 0;
  int target = 0;
  int weight = 1;

  friend bool operator==(const Elevator&, const Elevator&) = default;
};

/// One element of a floor diagram. Floors carry no source/target; bottom
/// edges only a target; top edges only a source. `id` indexes the element
/// within its own kind.
struct DiagramElement {
  ElementKind kind = ElementKind::floor;
  int id = 0;
  int weight = 1;
  int source = -1;
  int target = -1;

  bool is_floor() const { return kind == ElementKind::floor; }
  bool is_edge() const { return kind != ElementKind::floor; }

  /// Whether the element touches floor f (a floor touches itself).
  bool touches(int f) const {
    if (is_floor()) return id == f;
    return source == f || target == f;
  }
};

/// Genus-0 floor diagram over the rectangle [0,a] x [0,b]: b floors in a
/// topological order, b-1 bounded elevators forming a spanning tree, a bottom
/// and a top edges of weight 1, every floor of divergence 0.
class FloorDiagram {
 public:
  FloorDiagram(int floors, std::vector<Elevator> elevators, std::vector<int> bottom,
               std::vector<int> top)
      : floors_(floors),
        elevators_(std::move(elevators)),
        bottom_(std::move(bottom)),
        top_(std::move(top)) {
    validate();
  }

  int floor_count() const noexcept { return floors_; }
  int width() const noexcept { return static_cast<int>(bottom_.size()); }
  Bidegree bidegree() const { return {width(), floors_}; }
  int element_count() const noexcept {
    return floors_ + static_cast<int>(elevators_.size() + bottom_.size() + top_.size());
  }

  std::span<const Elevator> elevators() const noexcept { return elevators_; }
  std::span<const int> bottom_edges() const noexcept { return bottom_; }
  std::span<const int> top_edges() const noexcept { return top_; }

  /// Outgoing minus incoming weight at floor f.
  int divergence(int f) const {
    int d = 0;
    for (const auto& e : elevators_) {
      if (e.source == f) d += e.weight;
      if (e.target == f) d -= e.weight;
    }
    d += static_cast<int>(std::count(top_.begin(), top_.end(), f));
    d -= static_cast<int>(std::count(bottom_.begin(), bottom_.end(), f));
    return d;
  }

  /// Total weight crossing the horizontal cut between floors k-1 and k
  /// (bounded elevators spanning it plus top edges below it) plus the bottom
  /// edges entering above it. Equals the width for every 0 <= k <= b.
  int cut_flow(int k) const {
    int flow = 0;
    for (const auto& e : elevators_) {
      if (e.source < k && e.target >= k) flow += e.weight;
    }
    for (int f : top_) flow += (f < k) ? 1 : 0;
    for (int f : bottom_) flow += (f >= k) ? 1 : 0;
    return flow;
  }

  /// Floors, then bounded elevators, then bottom edges, then top edges.
  std::vector<DiagramElement> elements() const {
    std::vector<DiagramElement> out;
    out.reserve(static_cast<std::size_t>(element_count()));
    for (int f = 0; f < floors_; ++f) out.push_back({ElementKind::floor, f, 1, -1, -1});
    for (int i = 0; i < static_cast<int>(elevators_.size()); ++i) {
      const auto& e = elevators_[static_cast<std::size_t>(i)];
      out.push_back({ElementKind::bounded_elevator, i, e.weight, e.source, e.target});
    }
    for (int i = 0; i < static_cast<int>(bottom_.size()); ++i) {
      out.push_back({ElementKind::bottom_edge, i, 1, -1, bottom_[static_cast<std::size_t>(i)]});
    }
    for (int i = 0; i < static_cast<int>(top_.size()); ++i) {
      out.push_back({ElementKind::top_edge, i, 1, top_[static_cast<std::size_t>(i)], -1});
    }
    return out;
  }

  int bottoms_at(int f) const { return static_cast<int>(std::count(bottom_.begin(), bottom_.end(), f)); }
  int tops_at(int f) const { return static_cast<int>(std::count(top_.begin(), top_.end(), f)); }

 private:
  void validate() const {
    auto fail = [](const std::string& why) { throw ContractError("invalid floor diagram: " + why); };
    if (floors_ < 1) fail("needs at least one floor");
    if (bottom_.size() != top_.size()) fail("bottom and top edge counts differ");
    if (static_cast<int>(elevators_.size()) != floors_ - 1) fail("needs b-1 bounded elevators");
    std::vector<int> parent(static_cast<std::size_t>(floors_));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    for (const auto& e : elevators_) {
      if (e.source < 0 || e.target >= floors_ || e.source >= e.target) fail("elevator out of order");
      if (e.weight < 1) fail("elevator weight must be positive");
      int rs = find(e.source), rt = find(e.target);
      if (rs == rt) fail("elevators contain a cycle");
      parent[static_cast<std::size_t>(rs)] = rt;
    }
    for (int f : bottom_) {
      if (f < 0 || f >= floors_) fail("bottom edge floor out of range");
    }
    for (int f : top_) {
      if (f < 0 || f >= floors_) fail("top edge floor out of range");
    }
    for (int f = 0; f < floors_; ++f) {
      if (divergence(f) != 0) fail("floor " + std::to_string(f) + " has nonzero divergence");
    }
  }

  int floors_;
  std::vector<Elevator> elevators_;
  std::vector<int> bottom_;
  std::vector<int> top_;
};

namespace detail {

struct TreeView {
  struct Arc {
    int to;
    int weight;
    bool upward;  // arc follows the elevator orientation
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> beta;
  std::vector<int> tau;

  explicit TreeView(const FloorDiagram& d)
      : adj(static_cast<std::size_t>(d.floor_count())),
        beta(static_cast<std::size_t>(d.floor_count())),
        tau(static_cast<std::size_t>(d.floor_count())) {
    for (const auto& e : d.elevators()) {
      adj[static_cast<std::size_t>(e.source)].push_back({e.target, e.weight, true});
      adj[static_cast<std::size_t>(e.target)].push_back({e.source, e.weight, false});
    }
    for (int f = 0; f < d.floor_count(); ++f) {
      beta[static_cast<std::size_t>(f)] = d.bottoms_at(f);
      tau[static_cast<std::size_t>(f)] = d.tops_at(f);
    }
  }

  /// One or two central floors of the elevator tree.
  std::vector<int> centers() const {
    const int n = static_cast<int>(adj.size());
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
      degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
      if (degree[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
    }
    int remaining = n;
    while (remaining > 2) {
      remaining -= static_cast<int>(layer.size());
      std::vector<int> next;
      for (int v : layer) {
        for (const auto& arc : adj[static_cast<std::size_t>(v)]) {
          if (--degree[static_cast<std::size_t>(arc.to)] == 1) next.push_back(arc.to);
        }
      }
      layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
  }

  std::string encode(int v, int parent) const {
    std::vector<std::string> kids;
    for (const auto& arc : adj[static_cast<std::size_t>(v)]) {
      if (arc.to == parent) continue;
      kids.push_back(std::string(arc.upward ? "u" : "d") + std::to_string(arc.weight) +
                     encode(arc.to, v));
    }
    std::sort(kids.begin(), kids.end());
    std::string out = "[" + std::to_string(beta[static_cast<std::size_t>(v)]) + "," +
                      std::to_string(tau[static_cast<std::size_t>(v)]) + ";";
    for (const auto& k : kids) out += k;
    out += "]";
    return out;
  }

  std::uint64_t automorphisms(int v, int parent) const {
    auto fact = [](int k) {
      std::uint64_t r = 1;
      for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
      return r;
    };
    std::uint64_t count = fact(beta[static_cast<std::size_t>(v)]) * fact(tau[static_cast<std::size_t>(v)]);
    std::map<std::string, int> classes;
    for (const auto& arc : adj[static_cast<std::size_t>(v)]) {
      if (arc.to == parent) continue;
      count *= automorphisms(arc.to, v);
      ++classes[std::string(arc.upward ? "u" : "d") + std::to_string(arc.weight) + encode(arc.to, v)];
    }
    for (const auto& [key, k] : classes) count *= fact(k);
    return count;
  }
};

}  // namespace detail

/// Isomorphism-invariant byte string: the tree encoding rooted at the
/// elevator-tree center (the lexicographically smaller one for two centers),
/// with floors labelled by their bottom/top edge counts.
inline std::string canonical_encoding(const FloorDiagram& d) {
  detail::TreeView tree(d);
  auto centers = tree.centers();
  std::string best;
  for (int c : centers) {
    std::string s = tree.encode(c, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return std::to_string(d.width()) + ":" + std::to_string(centers.size()) + ":" + best;
}

/// Order of the automorphism group of the weighted oriented graph.
///
/// Elevator orientation forbids swapping the two centers of a bicentral tree,
/// so every automorphism fixes the chosen root.
inline std::uint64_t automorphism_count(const FloorDiagram& d) {
  detail::TreeView tree(d);
  return tree.automorphisms(tree.centers().front(), -1);
}

/// Product of squared bounded-elevator weights.
inline Integer complex_multiplicity(const FloorDiagram& d) {
  Integer m = 1;
  for (const auto& e : d.elevators()) m *= e.weight * e.weight;
  return m;
}

namespace detail {

inline void integer_partitions(int total, int max_part, std::vector<int>& cur,
                               const std::function<void(const std::vector<int>&)>& fn) {
  if (total == 0) {
    fn(cur);
    return;
  }
  for (int p = std::min(total, max_part); p >= 1; --p) {
    cur.push_back(p);
    integer_partitions(total - p, p, cur, fn);
    cur.pop_back();
  }
}

/// Depth-first construction of diagrams floor by floor in topological order.
class DiagramGenerator {
 public:
  explicit DiagramGenerator(Bidegree bd) : a_(bd.a()), b_(bd.b()) {}

  std::vector<FloorDiagram> run() {
    place(0, a_, a_);
    std::vector<FloorDiagram> out;
    out.reserve(found_.size());
    for (auto& [key, diagram] : found_) out.push_back(std::move(diagram));
    return out;
  }

 private:
  struct Open {
    int source;
    int weight;
  };

  void place(int floor, int bottoms_left, int tops_left) {
    if (floor == b_) {
      if (!open_.empty() || bottoms_left != 0 || tops_left != 0) return;
      if (component_count() != 1) return;
      FloorDiagram d(b_, done_, bottom_, top_);
      auto key = canonical_encoding(d);
      found_.try_emplace(std::move(key), std::move(d));
      return;
    }
    const int floors_after = b_ - floor - 1;
    const std::size_t n_open = open_.size();
    // choose terminated subset of open elevators (at most one per component)
    for (std::uint32_t mask = 0; mask < (1u << n_open); ++mask) {
      std::vector<int> comps;
      int incoming = 0;
      bool ok = true;
      for (std::size_t i = 0; i < n_open && ok; ++i) {
        if (!(mask >> i & 1u)) continue;
        int c = comp_[static_cast<std::size_t>(open_[i].source)];
        if (std::find(comps.begin(), comps.end(), c) != comps.end()) ok = false;
        comps.push_back(c);
        incoming += open_[i].weight;
      }
      if (!ok) continue;
      if (floors_after == 0 && mask != (1u << n_open) - 1u) continue;
      for (int beta = 0; beta <= bottoms_left; ++beta) {
        if (floors_after == 0 && beta != bottoms_left) continue;
        const int total_in = incoming + beta;
        if (total_in == 0 && !(a_ == 0 && b_ == 1)) continue;
        for (int tau = 0; tau <= std::min(total_in, tops_left); ++tau) {
          const int out = total_in - tau;
          if (floors_after == 0 && out != 0) continue;
          std::vector<int> parts;
          integer_partitions(out, out, parts, [&](const std::vector<int>& weights) {
            apply(floor, mask, comps, beta, tau, weights, bottoms_left, tops_left);
          });
        }
      }
    }
  }

  void apply(int floor, std::uint32_t mask, const std::vector<int>& comps, int beta, int tau,
             const std::vector<int>& weights, int bottoms_left, int tops_left) {
    auto saved_open = open_;
    auto saved_done = done_.size();
    auto saved_bottom = bottom_.size();
    auto saved_top = top_.size();
    auto saved_comp = comp_;

    std::vector<Open> still_open;
    for (std::size_t i = 0; i < open_.size(); ++i) {
      if (mask >> i & 1u) {
        done_.push_back({open_[i].source, floor, open_[i].weight});
      } else {
        still_open.push_back(open_[i]);
      }
    }
    comp_.push_back(floor);
    for (auto& c : comp_) {
      if (std::find(comps.begin(), comps.end(), c) != comps.end()) c = floor;
    }
    for (int w : weights) still_open.push_back({floor, w});
    for (int i = 0; i < beta; ++i) bottom_.push_back(floor);
    for (int i = 0; i < tau; ++i) top_.push_back(floor);
    open_ = std::move(still_open);

    // a finished component can never be reconnected
    bool dead = false;
    if (floor + 1 < b_ || component_count() > 1) {
      std::vector<int> live(static_cast<std::size_t>(floor + 1), 0);
      for (const auto& o : open_) live[static_cast<std::size_t>(comp_[static_cast<std::size_t>(o.source)])] = 1;
      for (int f = 0; f <= floor; ++f) {
        if (comp_[static_cast<std::size_t>(f)] == f && !live[static_cast<std::size_t>(f)]) dead = true;
      }
    }
    if (!dead) place(floor + 1, bottoms_left - beta, tops_left - tau);

    open_ = std::move(saved_open);
    done_.resize(saved_done);
    bottom_.resize(saved_bottom);
    top_.resize(saved_top);
    comp_ = std::move(saved_comp);
  }

  int component_count() const {
    int c = 0;
    for (std::size_t f = 0; f < comp_.size(); ++f) c += (comp_[f] == static_cast<int>(f)) ? 1 : 0;
    return c;
  }

  int a_;
  int b_;
  std::vector<Open> open_;
  std::vector<Elevator> done_;
  std::vector<int> bottom_;
  std::vector<int> top_;
  std::vector<int> comp_;  // representative floor of each placed floor's component
  std::map<std::string, FloorDiagram> found_;
};

}  // namespace detail

/// All isomorphism classes of genus-0 divergence-0 floor diagrams of the
/// bidegree, sorted by canonical encoding. A rectangle of height 0 has no
/// floors in the vertical direction and is read transposed, so (1,0) gives
/// the single floor of (0,1).
inline std::vector<FloorDiagram> enumerate_diagrams(Bidegree bd) {
  if (bd.b() == 0) return enumerate_diagrams(Bidegree(0, bd.a()));
  return detail::DiagramGenerator(bd).run();
}

}  // namespace pencilcount
