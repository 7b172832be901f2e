#pragma once
// Exhaustive, duplicate-free enumeration of rooted type-I triangulations,
// by running every combination of reversed peel steps. Serves as the
// ground-truth oracle for counting, sampling and the flip graph.

#include <cstdint>
#include <functional>
#include <vector>

#include "triflip/map.hpp"

namespace triflip {

inline constexpr std::int64_t kDefaultBoundaryBound = 8;  // n + p
inline constexpr std::int64_t kDefaultSphereBound = 6;    // n

using MapVisitor = std::function<void(const Triangulation&)>;

// All of T_{n,p}, each map visited exactly once. Throws when n + p
// exceeds the bound (pass a larger bound explicitly to override).
void generate_all(std::int64_t n, std::int64_t p, const MapVisitor& visit,
                  std::int64_t bound = kDefaultBoundaryBound);

// All of T_n via the inverse root transformation.
void generate_all_sphere(std::int64_t n, const MapVisitor& visit,
                         std::int64_t bound = kDefaultSphereBound);

// Convenience collectors (sorted codes / maps in enumeration order).
std::vector<Code> generate_codes(std::int64_t n, std::int64_t p,
                                 std::int64_t bound = kDefaultBoundaryBound);
std::vector<Code> generate_codes_sphere(std::int64_t n,
                                        std::int64_t bound = kDefaultSphereBound);

}  // namespace triflip
