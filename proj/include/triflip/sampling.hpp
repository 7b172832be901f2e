#pragma once
// Exact uniform samplers for T_{n,p} and T_n, driven by the peel-step
// decomposition: at class (n,p) the revealed face is either the
// new-vertex outcome, with weight #T_{n-1,p+1}/#T_{n,p}, or a boundary
// split (a, n1), with weight #T_{n1,a+1} #T_{n-n1,p-a} / #T_{n,p}.
// Below the switchover the draw is exact big-integer inversion; above it
// weights are evaluated in log space. Outcomes are enumerated tails
// first (volume splits are concentrated near 0 and n), so a draw costs
// O(p) weight evaluations in expectation.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "triflip/map.hpp"
#include "triflip/rng.hpp"

namespace triflip {

using BigRational = boost::multiprecision::cpp_rational;

struct PeelOutcome {
  bool new_vertex = false;  // apex is a fresh inner vertex
  std::int32_t arc = 0;     // boundary split: left arc length a in [0, p-1]
  std::int64_t vol = 0;     // boundary split: left volume n1 in [0, n]
};

struct WeightedOutcome {
  PeelOutcome outcome;
  BigRational weight;  // denominator #T_{n,p}; weights sum to exactly 1
};

// The exact conditional law of the face revealed by peeling the root
// edge of a uniform element of T_{n,p}. Throws on empty classes.
std::vector<WeightedOutcome> peel_distribution(std::int64_t n, std::int64_t p);

struct SampleOptions {
  std::int64_t exact_threshold = 512;  // exact big-integer draws for n <= this
};

Triangulation sample_boundary(std::int64_t n, std::int64_t p, Rng& rng,
                              const SampleOptions& opts = {});

Triangulation sample_sphere(std::int64_t n, Rng& rng, const SampleOptions& opts = {});

// The worst-case initial condition: two independent uniform boundary
// triangulations of perimeter 1 and floor/ceil((n-1)/2) inner vertices,
// glued along their boundary loops. loop_rep is the representative dart
// of the gluing loop, which separates the two sides.
struct GluedStart {
  Triangulation map;
  Dart loop_rep = 0;
};

GluedStart glued_initial(std::int64_t n, Rng& rng, const SampleOptions& opts = {});

}  // namespace triflip
