#include "triflip/chain.hpp"

#include <stdexcept>
#include <thread>

namespace triflip {

StepRecord chain_step(ChainState& s, const std::vector<Dart>& reps) {
  const std::uint64_t i = s.rng.below(reps.size());
  const Dart e = reps[i];
  StepRecord rec;
  rec.k = s.k;
  rec.edge_rep = e;
  rec.identity = !flippable(s.t, e);
  if (!rec.identity) flip_in_place(s.t, e);
  s.k += 1;
  return rec;
}

RunResult run(const Triangulation& t0, std::int64_t steps, std::uint64_t seed,
              const std::vector<Observer>& observers, std::int64_t record_stride) {
  if (t0.kind != MapKind::Sphere) throw std::invalid_argument("run: sphere state expected");
  ChainState s(t0, seed);
  const auto reps = edge_reps(s.t);
  RunResult out;
  for (std::int64_t k = 0; k < steps; ++k) {
    const StepRecord rec = chain_step(s, reps);
    if (record_stride > 0 && rec.k % record_stride == 0) out.records.push_back(rec);
    if (rec.identity) ++out.identity_steps;
    for (const auto& ob : observers)
      if (ob.stride > 0 && rec.k % ob.stride == 0) ob.fn(rec.k, s.t, rec.edge_rep, rec.identity);
  }
  out.final_map = std::move(s.t);
  return out;
}

std::vector<RunResult> run_replicas(const Triangulation& t0, std::int64_t steps,
                                    std::uint64_t base_seed, std::int64_t count,
                                    std::int64_t record_stride, int threads) {
  if (count < 1) throw std::invalid_argument("run_replicas: count >= 1 required");
  std::vector<RunResult> results(count);
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  if (threads > count) threads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      for (std::int64_t i = w; i < count; i += threads)
        results[i] = run(t0, steps, replica_seed(base_seed, static_cast<std::uint64_t>(i)), {},
                         record_stride);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace triflip
