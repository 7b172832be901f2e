#pragma once
// Peeling machinery.
//
// PeelExploration reveals a fixed host triangulation face by face from
// its boundary, filled-in: whenever the revealed face splits the unknown
// region, the component with fewer vertices is absorbed whole. Tracks
// the hole perimeter P(j) and discovered vertex count V(j).
//
// FrontierTracker runs the flip chain on a sphere built by glueing and
// maintains the decomposition into a discovered part T1 and an unknown
// part T2: flips strictly inside either part stay there; flipping a
// frontier edge reveals the adjacent T2 face, keeps the largest
// component of the rest as the new T2, absorbs everything else into T1,
// and then performs the flip inside T1. The composite map after every
// step equals flip(t, e_k) for the plain chain with the same draws.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "triflip/map.hpp"
#include "triflip/rng.hpp"
#include "triflip/sampling.hpp"

namespace triflip {

// ---------------------------------------------------------------- regions

struct Region {
  std::vector<char> faces;  // indexed by host face label
  std::int64_t n_faces = 0;
  std::int64_t closed_vertices = 0;  // vertices incident to an included face
  // interface cycles: darts whose face is in the region, twin's face outside
  std::vector<std::vector<Dart>> boundaries;
};

// Faces adjacent to a vertex at distance <= r-1 from the root (sphere) or
// from the boundary (boundary kind; all boundary vertices at distance 0).
Region ball(const Triangulation& t, std::int64_t r);

// Ball plus every complement component except the one with the most
// vertices (ties resolved by smallest minimal dart label).
Region hull(const Triangulation& t, std::int64_t r);

// ---------------------------------------------------------- peeling a host

struct PeelRecord {
  std::int64_t P = 0;  // hole perimeter after the step
  std::int64_t V = 0;  // discovered vertices after the step
  bool split = false;  // the revealed face split the unknown region
};

class PeelExploration {
 public:
  // Boundary hosts are peeled from their boundary; sphere hosts are
  // root-transformed first and peeled from the loop.
  explicit PeelExploration(Triangulation host);

  bool done() const { return frontier_.empty(); }
  std::int64_t perimeter() const { return P_; }
  std::int64_t discovered_vertices() const { return V_; }
  std::int64_t steps() const { return static_cast<std::int64_t>(traj_.size()); }
  const std::vector<PeelRecord>& trajectory() const { return traj_; }
  const Triangulation& host() const { return host_; }

  // peeling by layers: frontier edge at minimal distance from the
  // boundary, smallest dart id among those
  Dart layers_pick() const;

  void step(Dart frontier_dart);

  bool is_frontier(Dart d) const { return is_frontier_[d]; }
  std::vector<Dart> frontier_darts() const;

 private:
  void set_frontier_status(Dart d);
  std::int64_t edge_distance(Dart d) const;

  Triangulation host_;
  std::vector<std::int32_t> vert_, face_;
  std::vector<Dart> face_first_;
  std::int32_t nverts_ = 0, nfaces_ = 0, outer_face_ = -1;
  std::vector<std::int64_t> vdist_;
  std::vector<char> face_known_, vert_known_;
  std::set<std::pair<std::int64_t, Dart>> frontier_;  // (layer distance, unknown-side dart)
  std::vector<char> is_frontier_;
  std::int64_t P_ = 0, V_ = 0;
  std::vector<PeelRecord> traj_;
  // scratch for component BFS
  mutable std::vector<std::int32_t> face_stamp_, vert_stamp_;
  mutable std::int32_t stamp_ = 0;
};

using PeelingAlgorithm = std::function<Dart(const PeelExploration&)>;

PeelingAlgorithm layers_algorithm();

std::vector<PeelRecord> peel_explore(const Triangulation& t, const PeelingAlgorithm& algo,
                                     std::int64_t max_steps);

// Least j with P(j) == target, or nullopt when exploration halts first.
std::optional<std::int64_t> first_perimeter_hit(const Triangulation& t,
                                                const PeelingAlgorithm& algo,
                                                std::int64_t target);

// ------------------------------------------------- frontier of a flip chain

struct FrontierRecord {
  std::int64_t k = 0;
  std::int64_t Ptilde = 0;  // frontier length after the step
  std::int64_t Vtilde = 0;  // discovered-volume counter after the step
  int event = 0;            // 0: inside T1, 1: inside T2, 2: frontier hit
};

class FrontierTracker {
 public:
  FrontierTracker(const Triangulation& glued, Dart loop_rep);
  explicit FrontierTracker(const GluedStart& g) : FrontierTracker(g.map, g.loop_rep) {}

  FrontierRecord step(Rng& rng);

  const Triangulation& map() const { return t_; }
  std::int64_t k() const { return k_; }
  std::int64_t Ptilde() const { return P_; }
  std::int64_t Vtilde() const { return inner2_start_ - inner2_ + 1; }
  bool unknown_empty() const { return P_ == 0; }

  struct TauRecord {
    std::int64_t j = 0;
    std::int64_t tau = 0;
    std::int64_t P = 0;  // P_n(j) = Ptilde(tau_j + 1)
    std::int64_t V = 0;  // V_n(j) = Vtilde(tau_j + 1)
  };
  const std::vector<std::int64_t>& taus() const { return taus_; }
  const std::vector<TauRecord>& tau_records() const { return tau_records_; }

  // T2 as a standalone boundary triangulation rooted at the frontier edge
  // with the smallest unknown-side dart id; requires P̃ >= 1.
  Triangulation extract_unknown() const;
  std::int64_t inner_unknown() const { return inner2_; }

  // full consistency audit (labels, frontier, counts); test support
  void check_invariants() const;

 private:
  void flip_tracked(Dart e);
  void reveal_frontier_edge(Dart e);
  void update_edge_status(Dart d);

  Triangulation t_;
  std::vector<Dart> reps_;
  std::vector<std::int8_t> side_;
  std::vector<char> isfront_;
  std::vector<std::int32_t> vert_;
  std::vector<std::int32_t> front_cnt_;  // per vertex: incident frontier edges
  std::int64_t P_ = 0;
  std::int64_t inner2_ = 0, inner2_start_ = 0;
  std::int64_t k_ = 0;
  std::vector<std::int64_t> taus_;
  std::vector<TauRecord> tau_records_;
  mutable std::vector<std::int32_t> dart_stamp_, vert_stamp_;
  mutable std::int32_t stamp_ = 0;
};

}  // namespace triflip
