#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pencilcount/error.hpp"

namespace pencilcount {

/// Rule set for real multiplicities of marked floor diagrams with conjugate
/// pairs of points.
///
/// The first four ids are the edge-local variants: a pair block covers two
/// elements sharing a floor, a covered bounded elevator of weight w contributes
/// sigma(w) * w, and an uncovered one contributes (-1)^((w-1)/2) (0 if even).
/// They differ in sigma (alternating (-1)^(w+1) or binomial (-1)^(w(w-1)/2))
/// and in which edge/edge pairs are admissible (any common floor, or a common
/// source floor only).
///
/// `conjugation` reads a pair block as a pair of complex conjugate points:
/// either both labels sit on the real vertex where an edge meets a floor, or
/// they mark two elements exchanged by an involutive automorphism of the
/// diagram. Fixed elevators of even weight give 0; fixed odd elevators give 1,
/// or w when their vertex carries a pair; a swapped pair of bounded elevators
/// gives w^2.
enum class Convention : std::uint8_t {
  alt_incident = 0,
  alt_origin = 1,
  binom_incident = 2,
  binom_origin = 3,
  conjugation = 4,
};

enum class SigmaRule : std::uint8_t { alternating, binomial };
enum class PairScope : std::uint8_t { incident, origin_only };

inline constexpr std::array<Convention, 5> kAllConventions = {
    Convention::alt_incident, Convention::alt_origin, Convention::binom_incident,
    Convention::binom_origin, Convention::conjugation};

inline constexpr std::array<Convention, 4> kEdgeLocalConventions = {
    Convention::alt_incident, Convention::alt_origin, Convention::binom_incident,
    Convention::binom_origin};

inline constexpr Convention kDefaultConvention = Convention::conjugation;

inline bool is_edge_local(Convention c) { return c != Convention::conjugation; }

inline SigmaRule sigma_rule(Convention c) {
  return (c == Convention::binom_incident || c == Convention::binom_origin) ? SigmaRule::binomial
                                                                            : SigmaRule::alternating;
}

inline PairScope pair_scope(Convention c) {
  return (c == Convention::alt_origin || c == Convention::binom_origin) ? PairScope::origin_only
                                                                        : PairScope::incident;
}

inline std::string_view convention_name(Convention c) {
  switch (c) {
    case Convention::alt_incident: return "alt-incident";
    case Convention::alt_origin: return "alt-origin";
    case Convention::binom_incident: return "binom-incident";
    case Convention::binom_origin: return "binom-origin";
    case Convention::conjugation: return "conjugation";
  }
  return "?";
}

inline std::optional<Convention> find_convention(std::string_view name) {
  for (Convention c : kAllConventions) {
    if (convention_name(c) == name) return c;
  }
  return std::nullopt;
}

inline Convention parse_convention(std::string_view name) {
  if (auto c = find_convention(name)) return *c;
  throw InputError("unknown sign convention '" + std::string(name) +
                   "' (expected alt-incident, alt-origin, binom-incident, binom-origin or "
                   "conjugation)");
}

/// Sign attached to a pair-covered elevator of weight w by the edge-local rules.
inline int covered_sign(SigmaRule rule, int w) {
  if (rule == SigmaRule::alternating) return (w % 2 == 1) ? 1 : -1;
  return ((w * (w - 1) / 2) % 2 == 0) ? 1 : -1;
}

/// Factor of a bounded elevator of weight w whose label is a real point.
inline int uncovered_factor(Convention c, int w) {
  if (w % 2 == 0) return 0;
  if (c == Convention::conjugation) return 1;
  return (((w - 1) / 2) % 2 == 0) ? 1 : -1;
}

/// Factor of a bounded elevator of weight w whose label shares a pair block
/// with a floor it is attached to (or, for edge-local rules, with any
/// admissible partner).
inline long covered_factor(Convention c, int w) {
  if (c == Convention::conjugation) return (w % 2 == 0) ? 0 : w;
  return static_cast<long>(covered_sign(sigma_rule(c), w)) * w;
}

}  // namespace pencilcount
