#pragma once
// Short separating cycles. A cycle is a closed dart walk with pairwise
// distinct vertices (length 1: a loop, length 2: a pair of parallel
// edges); on the sphere it cuts the triangulation into exactly two
// sides. Side volumes count vertices strictly inside each side, never
// the cycle's own vertices.
//
// The search enumerates every simple cycle of length <= len_max exactly
// once: each undirected cycle is generated from its minimal edge, in the
// direction of that edge's representative dart, with all other edges of
// larger index. Depth-first extension prunes on distinct vertices and on
// the remaining distance back to the start.

#include <cstdint>
#include <optional>
#include <vector>

#include "triflip/map.hpp"

namespace triflip {

struct CycleWitness {
  std::vector<Dart> darts;  // head(darts[i]) == origin(darts[i+1]), cyclically
  std::int64_t side_left = 0;   // vertices strictly on the left of the walk
  std::int64_t side_right = 0;  // and strictly on the right
  std::int64_t length() const { return static_cast<std::int64_t>(darts.size()); }
};

// Cuts along the cycle and counts vertices strictly on each side
// (left of the walk, right of the walk). Throws when the input is not a
// simple closed dart walk with distinct vertices and edges.
std::pair<std::int64_t, std::int64_t> side_volumes(const Triangulation& t,
                                                   const std::vector<Dart>& cycle);

// Complete search for a cycle of length <= len_max with both side
// volumes >= min_side; returns the witness minimal by (length, dart
// sequence), or nullopt. Deterministic for any thread count.
std::optional<CycleWitness> find_separating_cycle(const Triangulation& t, std::int64_t len_max,
                                                  std::int64_t min_side, int threads = 0);

// For a boundary triangulation: a cycle of length <= len_max such that
// the part between the boundary and the cycle (the cycle's outer-face
// side, its own vertices excluded) holds at most vol_max vertices.
// Complete via cycle enumeration for len_max <= 12; longer witnesses are
// additionally sought among hull boundaries at every radius.
std::optional<CycleWitness> boundary_shield_cycle(const Triangulation& t, std::int64_t len_max,
                                                  std::int64_t vol_max, int threads = 0);

inline constexpr std::int64_t kCycleSearchCap = 12;

}  // namespace triflip
