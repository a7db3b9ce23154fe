#pragma once

// Position scan over labels 1..n that counts marked floor diagrams together
// with their multiplicities without building the diagrams. The state keeps
// the elevators that are open across the current position, grouped by
// connected component of the part of the diagram built so far.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pencilcount/bidegree.hpp"
#include "pencilcount/convention.hpp"
#include "pencilcount/error.hpp"
#include "pencilcount/integer.hpp"
#include "pencilcount/marking.hpp"

namespace pencilcount {

/// What the scan counts: complex markings weighted by the complex
/// multiplicity, or real markings for a layout under a sign convention.
struct ScanMode {
  bool complex = true;
  std::optional<LabelLayout> layout;
  Convention convention = kDefaultConvention;

  static ScanMode complex_count() { return {}; }
  static ScanMode real(LabelLayout layout, Convention c) { return {false, std::move(layout), c}; }
};

struct ScanOptions {
  unsigned jobs = 1;
  std::size_t state_cap = 20'000'000;
  bool memoize = true;
  bool check_invariants = false;
};

/// Labelled open elevator. `doubled` marks a conjugate pair represented once;
/// `bond` (nonzero) links two edges of an edge/edge pair block that still
/// owe a common target floor.
struct ScanEdge {
  std::uint8_t weight = 1;
  std::uint8_t doubled = 0;
  std::uint8_t bond = 0;

  friend auto operator<=>(const ScanEdge&, const ScanEdge&) = default;
};

/// Unlabelled outgoing elevators of one floor (siblings).
struct ScanGroup {
  std::vector<std::uint8_t> weights;
  std::uint8_t doubled = 0;

  friend auto operator<=>(const ScanGroup&, const ScanGroup&) = default;
};

/// `paired` marks a conjugate pair of disjoint components stored once; such
/// a component holds only doubled objects.
struct ScanComponent {
  std::uint8_t paired = 0;
  std::vector<ScanEdge> labeled;
  std::vector<ScanGroup> groups;

  friend auto operator<=>(const ScanComponent&, const ScanComponent&) = default;
};

struct ScanState {
  int bottoms_left = 0;
  int floors_placed = 0;
  int closed = 0;
  std::vector<ScanComponent> components;
  int next_bond = 1;

  /// Sum of open weights (conjugate pairs twice) plus bottoms not yet placed.
  int flow() const {
    int f = bottoms_left;
    for (const auto& c : components) {
      for (const auto& e : c.labeled) f += e.weight * (e.doubled ? 2 : 1);
      for (const auto& g : c.groups) {
        for (auto w : g.weights) f += w * (g.doubled ? 2 : 1);
      }
    }
    return f;
  }
};

struct ScanPositionStats {
  int label = 0;
  std::size_t distinct_states = 0;
  std::size_t transitions = 0;
};

struct ScanReport {
  Bidegree bidegree{0, 1};
  std::vector<ScanPositionStats> positions;
  std::size_t peak_states = 0;
  std::size_t peak_bytes = 0;
  std::size_t total_transitions = 0;
};

namespace scan_detail {

inline std::string encode(const ScanState& s) {
  std::string out;
  out.reserve(16 + 8 * s.components.size());
  out.push_back(static_cast<char>(s.bottoms_left));
  out.push_back(static_cast<char>(s.floors_placed));
  out.push_back(static_cast<char>(s.closed));
  out.push_back(static_cast<char>(s.components.size()));
  for (const auto& c : s.components) {
    out.push_back(static_cast<char>(c.paired));
    out.push_back(static_cast<char>(c.labeled.size()));
    for (const auto& e : c.labeled) {
      out.push_back(static_cast<char>(e.weight));
      out.push_back(static_cast<char>(e.doubled));
      out.push_back(static_cast<char>(e.bond));
    }
    out.push_back(static_cast<char>(c.groups.size()));
    for (const auto& g : c.groups) {
      out.push_back(static_cast<char>(g.doubled));
      out.push_back(static_cast<char>(g.weights.size()));
      for (auto w : g.weights) out.push_back(static_cast<char>(w));
    }
  }
  return out;
}

inline ScanState decode(const std::string& key) {
  ScanState s;
  std::size_t i = 0;
  auto next = [&]() { return static_cast<std::uint8_t>(key[i++]); };
  s.bottoms_left = next();
  s.floors_placed = next();
  s.closed = next();
  s.components.resize(next());
  for (auto& c : s.components) {
    c.paired = next();
    c.labeled.resize(next());
    for (auto& e : c.labeled) {
      e.weight = next();
      e.doubled = next();
      e.bond = next();
      s.next_bond = std::max<int>(s.next_bond, e.bond + 1);
    }
    c.groups.resize(next());
    for (auto& g : c.groups) {
      g.doubled = next();
      g.weights.resize(next());
      for (auto& w : g.weights) w = next();
    }
  }
  return s;
}

/// Sorts everything so that equivalent states share one key. Bond ids are
/// renumbered by first appearance; ties between components that differ only
/// in bond partners may keep distinct keys, which costs merging but not
/// correctness.
inline void canonicalize(ScanState& s) {
  bool any_bond = false;
  for (auto& c : s.components) {
    std::erase_if(c.groups, [](const ScanGroup& g) { return g.weights.empty(); });
    for (auto& g : c.groups) std::sort(g.weights.begin(), g.weights.end());
    std::sort(c.groups.begin(), c.groups.end());
    for (const auto& e : c.labeled) any_bond = any_bond || e.bond != 0;
    std::sort(c.labeled.begin(), c.labeled.end());
  }
  if (any_bond) {
    auto masked = [](const ScanComponent& c) {
      ScanComponent m = c;
      for (auto& e : m.labeled) e.bond = e.bond ? 1 : 0;
      std::sort(m.labeled.begin(), m.labeled.end());
      return m;
    };
    std::stable_sort(s.components.begin(), s.components.end(),
                     [&](const ScanComponent& x, const ScanComponent& y) { return masked(x) < masked(y); });
    std::vector<int> remap(256, 0);
    int next = 1;
    for (auto& c : s.components) {
      for (auto& e : c.labeled) {
        if (e.bond == 0) continue;
        if (remap[e.bond] == 0) remap[e.bond] = next++;
      }
    }
    for (auto& c : s.components) {
      for (auto& e : c.labeled) e.bond = static_cast<std::uint8_t>(remap[e.bond]);
      std::sort(c.labeled.begin(), c.labeled.end());
    }
    s.next_bond = next;
  } else {
    std::sort(s.components.begin(), s.components.end());
    s.next_bond = 1;
  }
}

inline void partitions(int total, int max_part, std::vector<std::uint8_t>& cur,
                       const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  if (total == 0) {
    fn(cur);
    return;
  }
  for (int p = std::min(total, max_part); p >= 1; --p) {
    cur.push_back(static_cast<std::uint8_t>(p));
    partitions(total - p, p, cur, fn);
    cur.pop_back();
  }
}

/// Position of an edge inside a non-canonical working state.
struct EdgeRef {
  int component = -1;
  int index = -1;
};

/// Position of a group inside a non-canonical working state.
struct GroupRef {
  int component = -1;
  int index = -1;
};

using Emit = std::function<void(ScanState&&, long factor)>;

/// Generates successor states for one label position or one pair block.
class Transitions {
 public:
  Transitions(Bidegree bd, const ScanMode& mode) : a_(bd.a()), b_(bd.b()), mode_(mode) {}

  void single(const ScanState& s, const Emit& emit) const {
    place_bottom(s, false, [&](ScanState&& t, EdgeRef) { emit(std::move(t), 1); });
    place_floor(s, false, {}, [&](ScanState&& t, GroupRef, int) { emit(std::move(t), 1); });
    label_any(s, LabelFilter::fixed_only, [&](ScanState&& t, EdgeRef, GroupRef, int w) {
      const long f = mode_.complex ? static_cast<long>(w) * w : uncovered_factor(mode_.convention, w);
      if (f != 0) emit(std::move(t), f);
    });
  }

  void pair(const ScanState& s, const Emit& emit) const {
    if (mode_.convention == Convention::conjugation) {
      conjugate_pair(s, emit);
    } else {
      edge_local_pair(s, emit);
    }
  }

 private:
  enum class LabelFilter { fixed_only, doubled_only };

  // --- elementary moves on working states ---------------------------------

  void place_bottom(const ScanState& s, bool doubled,
                    const std::function<void(ScanState&&, EdgeRef)>& k) const {
    const int need = doubled ? 2 : 1;
    if (s.bottoms_left < need) return;
    ScanState t = s;
    t.bottoms_left -= need;
    ScanComponent c;
    c.paired = doubled ? 1 : 0;
    c.labeled.push_back({1, static_cast<std::uint8_t>(doubled ? 1 : 0), 0});
    t.components.push_back(std::move(c));
    k(std::move(t), {static_cast<int>(s.components.size()), 0});
  }

  /// Labels one unlabelled edge: any group of the right kind, one choice per
  /// distinct weight (equal-weight siblings are interchangeable).
  void label_any(const ScanState& s, LabelFilter filter,
                 const std::function<void(ScanState&&, EdgeRef, GroupRef, int)>& k) const {
    for (int ci = 0; ci < static_cast<int>(s.components.size()); ++ci) {
      const auto& comp = s.components[static_cast<std::size_t>(ci)];
      for (int gi = 0; gi < static_cast<int>(comp.groups.size()); ++gi) {
        label_in_group(s, {ci, gi}, filter, k);
      }
    }
  }

  void label_in_group(const ScanState& s, GroupRef g, LabelFilter filter,
                      const std::function<void(ScanState&&, EdgeRef, GroupRef, int)>& k) const {
    if (g.component < 0) return;
    const auto& grp = s.components[static_cast<std::size_t>(g.component)].groups[static_cast<std::size_t>(g.index)];
    const bool want_doubled = filter == LabelFilter::doubled_only;
    if ((grp.doubled != 0) != want_doubled) return;
    int last = -1;
    for (std::size_t wi = 0; wi < grp.weights.size(); ++wi) {
      const int w = grp.weights[wi];
      if (w == last) continue;
      last = w;
      ScanState t = s;
      auto& comp = t.components[static_cast<std::size_t>(g.component)];
      auto& tw = comp.groups[static_cast<std::size_t>(g.index)].weights;
      tw.erase(std::find(tw.begin(), tw.end(), static_cast<std::uint8_t>(w)));
      comp.labeled.push_back({static_cast<std::uint8_t>(w), static_cast<std::uint8_t>(want_doubled ? 1 : 0), 0});
      EdgeRef ref{g.component, static_cast<int>(comp.labeled.size()) - 1};
      k(std::move(t), ref, g, w);
    }
  }

  /// Places a floor (or a conjugate pair of floors when `doubled`). It ends
  /// at most one labelled edge per component, must end every edge in
  /// `required`, and opens the incoming weight as a fresh sibling group.
  /// The continuation receives the new group and the number of conjugate
  /// pairs ended.
  void place_floor(const ScanState& s, bool doubled, std::vector<EdgeRef> required,
                   const std::function<void(ScanState&&, GroupRef, int)>& k) const {
    const int floors_needed = doubled ? 2 : 1;
    if (s.floors_placed + floors_needed > b_) return;
    const int nc = static_cast<int>(s.components.size());
    std::vector<int> choice(static_cast<std::size_t>(nc), -1);
    std::function<void(int)> rec = [&](int ci) {
      if (ci == nc) {
        finish_floor(s, doubled, choice, k);
        return;
      }
      const auto& comp = s.components[static_cast<std::size_t>(ci)];
      auto req = std::find_if(required.begin(), required.end(), [&](const EdgeRef& r) { return r.component == ci; });
      if (req != required.end()) {
        choice[static_cast<std::size_t>(ci)] = req->index;
        rec(ci + 1);
        choice[static_cast<std::size_t>(ci)] = -1;
        return;
      }
      rec(ci + 1);
      for (int li = 0; li < static_cast<int>(comp.labeled.size()); ++li) {
        const auto& e = comp.labeled[static_cast<std::size_t>(li)];
        if (doubled && !e.doubled) continue;
        // identical labelled edges are distinct elements: keep each index
        choice[static_cast<std::size_t>(ci)] = li;
        rec(ci + 1);
        choice[static_cast<std::size_t>(ci)] = -1;
      }
    };
    rec(0);
  }

  void finish_floor(const ScanState& s, bool doubled, const std::vector<int>& choice,
                    const std::function<void(ScanState&&, GroupRef, int)>& k) const {
    int incoming = 0;
    int pairs_ended = 0;
    int selected = 0;
    int connected = 0;
    std::vector<int> bonds;
    for (std::size_t ci = 0; ci < choice.size(); ++ci) {
      if (choice[ci] < 0) continue;
      const auto& comp = s.components[ci];
      const auto& e = comp.labeled[static_cast<std::size_t>(choice[ci])];
      ++selected;
      if (!comp.paired) ++connected;
      if (doubled) {
        incoming += e.weight;
        ++pairs_ended;
      } else {
        // both halves of a conjugate pair inside one connected component
        // would close a cycle
        if (e.doubled && !comp.paired) return;
        incoming += e.weight * (e.doubled ? 2 : 1);
      }
      if (e.bond) bonds.push_back(e.bond);
    }
    // a conjugate pair of floors joining two connected components twice
    // would close a cycle
    if (doubled && connected > 1) return;
    // bonded edges must end together
    std::sort(bonds.begin(), bonds.end());
    for (std::size_t i = 0; i < bonds.size();) {
      if (i + 1 < bonds.size() && bonds[i] == bonds[i + 1]) {
        i += 2;
      } else {
        return;
      }
    }
    if (selected == 0) {
      // an isolated floor closes its own component
      if (doubled) return;
      ScanState t = s;
      t.floors_placed += 1;
      t.closed += 1;
      k(std::move(t), {}, 0);
      return;
    }
    ScanComponent merged;
    merged.paired = doubled && connected == 0 ? 1 : 0;
    ScanState base;
    base.bottoms_left = s.bottoms_left;
    base.floors_placed = s.floors_placed + (doubled ? 2 : 1);
    base.closed = s.closed;
    base.next_bond = s.next_bond;
    for (std::size_t ci = 0; ci < choice.size(); ++ci) {
      if (choice[ci] < 0) {
        base.components.push_back(s.components[ci]);
        continue;
      }
      const auto& comp = s.components[ci];
      for (int li = 0; li < static_cast<int>(comp.labeled.size()); ++li) {
        if (li != choice[ci]) merged.labeled.push_back(comp.labeled[static_cast<std::size_t>(li)]);
      }
      for (const auto& g : comp.groups) merged.groups.push_back(g);
    }
    std::vector<std::uint8_t> parts;
    partitions(incoming, incoming, parts, [&](const std::vector<std::uint8_t>& weights) {
      ScanState t = base;
      ScanComponent c = merged;
      c.groups.push_back({weights, static_cast<std::uint8_t>(doubled ? 1 : 0)});
      GroupRef g{static_cast<int>(t.components.size()), static_cast<int>(c.groups.size()) - 1};
      t.components.push_back(std::move(c));
      k(std::move(t), g, pairs_ended);
    });
  }

  static void bond(ScanState& t, EdgeRef x, EdgeRef y) {
    const auto id = static_cast<std::uint8_t>(t.next_bond++);
    t.components[static_cast<std::size_t>(x.component)].labeled[static_cast<std::size_t>(x.index)].bond = id;
    t.components[static_cast<std::size_t>(y.component)].labeled[static_cast<std::size_t>(y.index)].bond = id;
  }

  // --- pair blocks ----------------------------------------------------------

  void edge_local_pair(const ScanState& s, const Emit& emit) const {
    const Convention c = mode_.convention;
    const bool incident = pair_scope(c) == PairScope::incident;

    // floor, then one of its own new edges
    place_floor(s, false, {}, [&](ScanState&& t, GroupRef g, int) {
      label_in_group(t, g, LabelFilter::fixed_only, [&](ScanState&& u, EdgeRef, GroupRef, int w) {
        emit(std::move(u), covered_factor(c, w));
      });
    });

    // an edge label first
    label_any(s, LabelFilter::fixed_only, [&](ScanState&& t, EdgeRef e, GroupRef g, int w) {
      const long f1 = covered_factor(c, w);
      if (f1 == 0) return;
      // then the floor it enters
      place_floor(t, false, {e}, [&](ScanState&& u, GroupRef, int) { emit(std::move(u), f1); });
      // then a sibling
      label_in_group(t, g, LabelFilter::fixed_only, [&](ScanState&& u, EdgeRef, GroupRef, int w2) {
        const long f2 = covered_factor(c, w2);
        if (f2 != 0) emit(std::move(u), f1 * f2);
      });
      if (!incident) return;
      // then an unrelated edge that must share the target floor
      for (int ci = 0; ci < static_cast<int>(t.components.size()); ++ci) {
        if (ci == e.component) continue;
        for (int gi = 0; gi < static_cast<int>(t.components[static_cast<std::size_t>(ci)].groups.size()); ++gi) {
          label_in_group(t, {ci, gi}, LabelFilter::fixed_only, [&](ScanState&& u, EdgeRef e2, GroupRef, int w2) {
            const long f2 = covered_factor(c, w2);
            if (f2 == 0) return;
            bond(u, e, e2);
            emit(std::move(u), f1 * f2);
          });
        }
      }
      place_bottom(t, false, [&](ScanState&& u, EdgeRef e2) {
        bond(u, e, e2);
        emit(std::move(u), f1);
      });
    });

    // a bottom edge first
    place_bottom(s, false, [&](ScanState&& t, EdgeRef e) {
      place_floor(t, false, {e}, [&](ScanState&& u, GroupRef, int) { emit(std::move(u), 1); });
      if (!incident) return;
      label_any(t, LabelFilter::fixed_only, [&](ScanState&& u, EdgeRef e2, GroupRef, int w2) {
        if (e2.component == e.component) return;
        const long f2 = covered_factor(c, w2);
        if (f2 == 0) return;
        bond(u, e, e2);
        emit(std::move(u), f2);
      });
      place_bottom(t, false, [&](ScanState&& u, EdgeRef e2) {
        bond(u, e, e2);
        emit(std::move(u), 1);
      });
    });
  }

  void conjugate_pair(const ScanState& s, const Emit& emit) const {
    constexpr Convention c = Convention::conjugation;

    // real vertex: floor then one of its new edges
    place_floor(s, false, {}, [&](ScanState&& t, GroupRef g, int) {
      label_in_group(t, g, LabelFilter::fixed_only, [&](ScanState&& u, EdgeRef, GroupRef, int w) {
        const long f = covered_factor(c, w);
        if (f != 0) emit(std::move(u), f);
      });
    });
    // real vertex: edge then the floor it enters
    label_any(s, LabelFilter::fixed_only, [&](ScanState&& t, EdgeRef e, GroupRef, int w) {
      const long f = covered_factor(c, w);
      if (f == 0) return;
      place_floor(t, false, {e}, [&](ScanState&& u, GroupRef, int) { emit(std::move(u), f); });
    });
    // real vertex: bottom edge then the floor it enters
    place_bottom(s, false, [&](ScanState&& t, EdgeRef e) {
      place_floor(t, false, {e}, [&](ScanState&& u, GroupRef, int) { emit(std::move(u), 1); });
    });

    // swapped bottoms
    place_bottom(s, true, [&](ScanState&& t, EdgeRef) { emit(std::move(t), 1); });
    // swapped floors: each copy takes one edge of every conjugate pair it ends
    place_floor(s, true, {}, [&](ScanState&& t, GroupRef, int pairs_ended) {
      emit(std::move(t), 1L << pairs_ended);
    });
    // swapped edges of an already conjugate group
    label_any(s, LabelFilter::doubled_only, [&](ScanState&& t, EdgeRef, GroupRef, int w) {
      emit(std::move(t), 2L * w * w);
    });
    // two equal-weight siblings of a real floor become a conjugate pair
    for (int ci = 0; ci < static_cast<int>(s.components.size()); ++ci) {
      const auto& comp = s.components[static_cast<std::size_t>(ci)];
      for (int gi = 0; gi < static_cast<int>(comp.groups.size()); ++gi) {
        const auto& grp = comp.groups[static_cast<std::size_t>(gi)];
        if (grp.doubled) continue;
        int last = -1;
        for (std::size_t wi = 0; wi + 1 < grp.weights.size(); ++wi) {
          const int w = grp.weights[wi];
          if (w == last) continue;
          last = w;
          if (std::count(grp.weights.begin(), grp.weights.end(), static_cast<std::uint8_t>(w)) < 2) continue;
          ScanState t = s;
          auto& tc = t.components[static_cast<std::size_t>(ci)];
          auto& tw = tc.groups[static_cast<std::size_t>(gi)].weights;
          for (int rep = 0; rep < 2; ++rep) tw.erase(std::find(tw.begin(), tw.end(), static_cast<std::uint8_t>(w)));
          tc.labeled.push_back({static_cast<std::uint8_t>(w), 1, 0});
          emit(std::move(t), static_cast<long>(w) * w);
        }
      }
    }
  }

  int a_;
  int b_;
  const ScanMode& mode_;
};

/// Whether a state can still reach an accepted end with `remaining` labels.
inline bool viable(const ScanState& s, int b, int remaining) {
  if (s.closed > 1) return false;
  if (s.closed == 1 && (!s.components.empty() || s.bottoms_left > 0 || s.floors_placed < b)) return false;
  int need = (b - s.floors_placed) + s.bottoms_left;
  for (const auto& c : s.components) {
    for (const auto& g : c.groups) need += static_cast<int>(g.weights.size()) * (g.doubled ? 2 : 1);
  }
  if (need > remaining) return false;
  if (s.floors_placed == b) {
    if (s.components.size() > 1) return false;
    for (const auto& c : s.components) {
      if (c.paired) return false;
      for (const auto& e : c.labeled) {
        if (e.weight != 1 || e.bond != 0) return false;
      }
    }
  }
  return true;
}

inline bool accepted(const ScanState& s, int b) {
  if (s.floors_placed != b || s.bottoms_left != 0) return false;
  if (s.closed == 1) return s.components.empty();
  if (s.closed != 0 || s.components.size() != 1) return false;
  const auto& c = s.components.front();
  if (c.paired || !c.groups.empty()) return false;
  return std::all_of(c.labeled.begin(), c.labeled.end(),
                     [](const ScanEdge& e) { return e.weight == 1 && e.bond == 0; });
}

using Frontier = std::unordered_map<std::string, Integer>;

struct StepCounters {
  std::size_t transitions = 0;
};

/// Expands a frontier by one position or pair block; work is split into
/// `jobs` slices whose maps are summed afterwards, so the result does not
/// depend on the thread count.
inline Frontier advance(const Frontier& frontier, const Transitions& tr, bool pair_block, int a, int b,
                        int remaining, unsigned jobs, bool check_invariants, StepCounters& counters) {
  std::vector<const Frontier::value_type*> items;
  items.reserve(frontier.size());
  for (const auto& kv : frontier) items.push_back(&kv);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(items.size() / 64 + 1)));
  std::vector<Frontier> partial(jobs);
  std::vector<std::size_t> moves(jobs, 0);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned j) {
    try {
      for (std::size_t i = j; i < items.size(); i += jobs) {
        const ScanState s = decode(items[i]->first);
        const Integer& value = items[i]->second;
        auto emit = [&](ScanState&& t, long factor) {
          ++moves[j];
          if (check_invariants && t.flow() != a) {
            throw ContractError("scan flow invariant violated");
          }
          if (!viable(t, b, remaining)) return;
          canonicalize(t);
          Integer& slot = partial[j][encode(t)];
          slot += value * factor;
        };
        if (pair_block) {
          tr.pair(s, emit);
        } else {
          tr.single(s, emit);
        }
      }
    } catch (...) {
      errors[j] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Frontier next = std::move(partial[0]);
  for (unsigned j = 1; j < jobs; ++j) {
    for (auto& [k, v] : partial[j]) next[k] += v;
  }
  std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
  for (auto m : moves) counters.transitions += m;
  return next;
}

/// Unmerged variant used to validate state merging on small inputs.
inline Integer run_unmemoized(const ScanState& start, const Transitions& tr, const LabelLayout& layout, int b) {
  const int n = layout.size();
  std::vector<std::pair<ScanState, Integer>> frontier{{start, Integer(1)}};
  for (int label = 1; label <= n;) {
    const bool pair_block = layout.starts_pair(label);
    const int step = pair_block ? 2 : 1;
    std::vector<std::pair<ScanState, Integer>> next;
    for (const auto& [s, v] : frontier) {
      auto emit = [&](ScanState&& t, long f) {
        if (!viable(t, b, n - (label + step - 1))) return;
        canonicalize(t);
        next.emplace_back(std::move(t), v * f);
      };
      if (pair_block) {
        tr.pair(s, emit);
      } else {
        tr.single(s, emit);
      }
    }
    frontier = std::move(next);
    label += step;
  }
  Integer total = 0;
  for (const auto& [s, v] : frontier) {
    if (accepted(s, b)) total += v;
  }
  return total;
}

}  // namespace scan_detail

namespace detail {

inline LabelLayout scan_layout(Bidegree bd, const ScanMode& mode) {
  if (mode.complex) return LabelLayout(bd.point_count(), {});
  if (!mode.layout) throw ContractError("real scan needs a label layout");
  if (mode.layout->size() != bd.point_count()) {
    throw ContractError("layout size " + std::to_string(mode.layout->size()) + " differs from point count " +
                        std::to_string(bd.point_count()) + " of " + bd.str());
  }
  return *mode.layout;
}

inline Integer run_scan(Bidegree bd, const ScanMode& mode, const ScanOptions& opt, ScanReport* report) {
  using namespace scan_detail;
  // height 0 is read transposed, as in enumerate_diagrams
  if (bd.b() == 0) bd = Bidegree(0, bd.a());
  const LabelLayout layout = scan_layout(bd, mode);
  const int n = layout.size();
  Transitions tr(bd, mode);
  ScanState start;
  start.bottoms_left = bd.a();
  if (!opt.memoize) return run_unmemoized(start, tr, layout, bd.b());

  Frontier frontier;
  frontier.emplace(encode(start), Integer(1));
  if (report) {
    report->bidegree = bd;
    report->positions.push_back({0, 1, 0});
    report->peak_states = 1;
  }
  for (int label = 1; label <= n;) {
    const bool pair_block = layout.starts_pair(label);
    const int last = label + (pair_block ? 1 : 0);
    StepCounters counters;
    frontier = advance(frontier, tr, pair_block, bd.a(), bd.b(), n - last, opt.jobs, opt.check_invariants, counters);
    if (frontier.size() > opt.state_cap) {
      throw ResourceError("scan state cap of " + std::to_string(opt.state_cap) + " exceeded at label " +
                          std::to_string(last) + " for bidegree " + bd.str());
    }
    if (report) {
      report->positions.push_back({last, frontier.size(), counters.transitions});
      report->peak_states = std::max(report->peak_states, frontier.size());
      std::size_t bytes = 0;
      for (const auto& [k, v] : frontier) bytes += k.size() + sizeof(Integer) + 64 + mpz_size(v.get_mpz_t()) * sizeof(mp_limb_t);
      report->peak_bytes = std::max(report->peak_bytes, bytes);
      report->total_transitions += counters.transitions;
    }
    label = last + 1;
  }
  Integer total = 0;
  for (const auto& [k, v] : frontier) {
    if (accepted(decode(k), bd.b())) total += v;
  }
  return total;
}

}  // namespace detail

/// Sum over all marked diagrams of the bidegree of their multiplicity.
inline Integer scan_count(Bidegree bd, const ScanMode& mode, const ScanOptions& opt = {}) {
  return detail::run_scan(bd, mode, opt, nullptr);
}

/// Per-position frontier sizes of the complex scan.
inline ScanReport state_space_report(Bidegree bd, const ScanOptions& opt = {}) {
  ScanReport report;
  detail::run_scan(bd, ScanMode::complex_count(), opt, &report);
  return report;
}

}  // namespace pencilcount
