#pragma once
// Exact small-n analysis of the flip graph G_n: states are canonical
// codes of T_n, the transition matrix has entries
// #{e in E(t) : flip(t,e) = t'} / (3n-6). Stationarity, symmetry,
// irreducibility and aperiodicity are integer-exact; total-variation
// mixing curves are computed in double precision by two independent
// routes (iterated products and eigendecomposition) and cross-checked.

#include <cstdint>
#include <string>
#include <vector>

#include "triflip/map.hpp"

namespace triflip {

struct FlipGraph {
  std::int64_t n = 0;
  std::int64_t denom = 0;  // 3n - 6
  std::vector<Code> states;  // sorted canonical codes
  std::vector<Triangulation> reps;  // one representative per state
  // sparse symmetric flip counts: per state, (target, count), sorted by target
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> trans;

  std::int64_t size() const { return static_cast<std::int64_t>(states.size()); }
};

FlipGraph build_flip_graph(std::int64_t n, std::int64_t bound = 5);

struct StationarityReport {
  bool symmetric = false;
  bool doubly_stochastic = false;
  bool uniform_stationary = false;
  bool irreducible = false;
  bool aperiodic = false;
  std::int64_t states_with_self_loop = 0;
  bool all() const {
    return symmetric && doubly_stochastic && uniform_stationary && irreducible && aperiodic;
  }
};

// All checks are exact (integer counts; uniform stationarity follows from
// double stochasticity, verified explicitly).
StationarityReport stationarity_report(const FlipGraph& g);

struct MixingReport {
  std::int64_t t_mix = -1;        // least k with worst-start TV <= eps
  double eps = 0.25;
  double spectral_gap = 0.0;      // 1 - max |nontrivial eigenvalue|
  double second_eigenvalue = 0.0;
  std::vector<double> tv_curve;   // worst-start TV at k = 0,1,...,t_mix
  double route_difference = 0.0;  // sup |power route - spectral route|
};

MixingReport mixing_exact(const FlipGraph& g, double eps = 0.25,
                          std::int64_t max_steps = 100000);

struct ConnectivityReport {
  bool connected = false;
  std::int64_t diameter = -1;
};

ConnectivityReport connectivity_and_diameter(const FlipGraph& g);

// Appendix normalization: flip minimal loops until no loops remain, then
// flip members of parallel pairs (never creating loops or new multiple
// edges) until the map is type-III. Returns the flip sequence (edge
// representative darts in the evolving map) and the final map.
struct NormalizeResult {
  std::vector<Dart> flips;
  Triangulation final_map;
};

NormalizeResult normalize_to_type3(const Triangulation& t);

// loop count and multi-edge excess (sum over endpoint pairs of mult-1)
std::pair<std::int64_t, std::int64_t> type_defects(const Triangulation& t);

}  // namespace triflip
