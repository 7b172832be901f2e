#pragma once
// The edge-flip Markov chain on sphere triangulations: at each step a
// uniformly chosen edge (one of the 3n-6 unordered dart pairs) is
// flipped; unflippable edges make the step lazy. Twin pairs never change
// under flips, so edges keep stable representative darts along the whole
// trajectory.

#include <cstdint>
#include <functional>
#include <vector>

#include "triflip/map.hpp"
#include "triflip/rng.hpp"

namespace triflip {

struct StepRecord {
  std::int64_t k = 0;       // step index (0-based)
  Dart edge_rep = 0;        // representative dart of the flipped edge
  bool identity = false;    // edge was unflippable
};

struct ChainState {
  Triangulation t;
  std::int64_t k = 0;
  Rng rng;

  ChainState(Triangulation t0, std::uint64_t seed) : t(std::move(t0)), rng(seed) {}
};

// Observers fire every `stride` steps (after the step) and must not
// mutate the state.
struct Observer {
  std::int64_t stride = 1;
  std::function<void(std::int64_t k, const Triangulation& t, Dart edge_rep, bool identity)> fn;
};

// One step; returns the record. The edge list is passed in so that the
// caller pays the setup once (it never changes along the trajectory).
StepRecord chain_step(ChainState& s, const std::vector<Dart>& reps);

struct RunResult {
  Triangulation final_map;
  std::int64_t identity_steps = 0;
  std::vector<StepRecord> records;  // filled when record_stride > 0
};

RunResult run(const Triangulation& t0, std::int64_t steps, std::uint64_t seed,
              const std::vector<Observer>& observers = {}, std::int64_t record_stride = 0);

// Deterministic parallel replicas: replica i runs with
// replica_seed(base_seed, i); outputs are ordered by replica index
// regardless of scheduling.
std::vector<RunResult> run_replicas(const Triangulation& t0, std::int64_t steps,
                                    std::uint64_t base_seed, std::int64_t count,
                                    std::int64_t record_stride = 0, int threads = 0);

}  // namespace triflip
