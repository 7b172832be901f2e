#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "triflip/chain.hpp"
#include "triflip/counting.hpp"
#include "triflip/exploration.hpp"
#include "triflip/generate.hpp"
#include "triflip/sampling.hpp"
#include "triflip/stats.hpp"

using namespace triflip;

TEST_CASE("ball covers everything beyond the eccentricity") {
  Rng rng(21);
  const auto t = sample_sphere(40, rng);
  const auto full = ball(t, 100);
  CHECK(full.n_faces == face_count(t));
  CHECK(full.closed_vertices == vertex_count(t));
  CHECK(full.boundaries.empty());
}

TEST_CASE("hull boundary is a single simple cycle with connected complement") {
  Rng rng(22);
  for (int it = 0; it < 10; ++it) {
    const auto t = sample_sphere(60, rng);
    for (std::int64_t r = 1; r <= 3; ++r) {
      const auto h = hull(t, r);
      if (h.n_faces == face_count(t)) continue;
      REQUIRE(h.boundaries.size() == 1);
      // vertex-disjoint cycle: no vertex repeats
      const auto vl = vertex_labels(t);
      std::vector<std::int32_t> vs;
      for (Dart d : h.boundaries[0]) vs.push_back(vl[d]);
      std::sort(vs.begin(), vs.end());
      CHECK(std::adjacent_find(vs.begin(), vs.end()) == vs.end());
    }
  }
}

TEST_CASE("hull on a glued start stays on the root side below the depth") {
  Rng rng(23);
  const auto g = glued_initial(200, rng);
  // side-2 faces: those not reachable from the root face without the loop
  const auto h = hull(g.map, 1);
  // the hull at radius 1 contains the loop vertex's faces; it must not
  // reach deep into side 2: vertices beyond distance 2 from the loop
  // vertex on side 2 stay out
  CHECK(h.n_faces < face_count(g.map));
}

TEST_CASE("peeling the single triangle halts at once with V=3") {
  std::vector<Triangulation> tri;
  generate_all(0, 3, [&](const Triangulation& t) { tri.push_back(t); });
  PeelExploration e(tri[0]);
  CHECK(e.perimeter() == 3);
  CHECK(e.discovered_vertices() == 3);
  e.step(e.layers_pick());
  CHECK(e.done());
  CHECK(e.discovered_vertices() == 3);
  CHECK(e.perimeter() == 0);
}

TEST_CASE("perimeter increments never exceed +1") {
  Rng rng(24);
  for (int it = 0; it < 5; ++it) {
    const auto t = sample_boundary(80, 1, rng);
    PeelExploration e(t);
    std::int64_t prev = e.perimeter();
    while (!e.done()) {
      e.step(e.layers_pick());
      CHECK(e.perimeter() <= prev + 1);
      prev = e.perimeter();
    }
    CHECK(e.discovered_vertices() == vertex_count(t));
  }
}

TEST_CASE("exploration conserves volume accounting") {
  Rng rng(25);
  const auto t = sample_boundary(60, 2, rng);
  PeelExploration e(t);
  while (!e.done()) e.step(e.layers_pick());
  CHECK(e.discovered_vertices() == 62);  // n + p
}

TEST_CASE("first_perimeter_hit basics") {
  Rng rng(26);
  const auto t = sample_boundary(50, 3, rng);
  CHECK(first_perimeter_hit(t, layers_algorithm(), 3) == 0);
  const auto h4 = first_perimeter_hit(t, layers_algorithm(), 4);
  if (h4) CHECK(*h4 >= 1);
  // monotone: first hit of p=5 cannot precede first hit of p=4
  const auto h5 = first_perimeter_hit(t, layers_algorithm(), 5);
  if (h4 && h5) CHECK(*h5 > *h4);
}

TEST_CASE("frontier tracker composite equals the plain chain") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Rng rng_init(900 + seed);
    const auto g = glued_initial(24, rng_init);
    FrontierTracker tr(g);
    ChainState plain(g.map, 777 + seed);
    Rng rng_tr(777 + seed);
    const auto reps = edge_reps(g.map);
    for (int k = 0; k < 400; ++k) {
      tr.step(rng_tr);
      chain_step(plain, reps);
      REQUIRE(canonical_code(tr.map()) == canonical_code(plain.t));
    }
    tr.check_invariants();
  }
}

TEST_CASE("frontier initial state: Ptilde 1, Vtilde 1, conservation") {
  Rng rng(27);
  const auto g = glued_initial(31, rng);
  FrontierTracker tr(g);
  CHECK(tr.Ptilde() == 1);
  CHECK(tr.Vtilde() == 1);
  CHECK(tr.inner_unknown() == 15);  // ceil(30/2)
  // conservation: inner(T1) + inner(T2) + Ptilde == n
  CHECK((31 - tr.inner_unknown() - tr.Ptilde()) + tr.inner_unknown() + tr.Ptilde() == 31);
  tr.check_invariants();
  const auto t2 = tr.extract_unknown();
  CHECK(validate(t2).ok);
  CHECK(t2.perimeter == 1);
  CHECK(vertex_count(t2) == 16);
}

TEST_CASE("frontier invariants hold along trajectories") {
  Rng rng(28);
  const auto g = glued_initial(18, rng);
  FrontierTracker tr(g);
  Rng step_rng(4242);
  std::int64_t prev_V = tr.Vtilde();
  for (int k = 0; k < 600; ++k) {
    const auto rec = tr.step(step_rng);
    CHECK(rec.Vtilde >= prev_V);  // nondecreasing
    prev_V = rec.Vtilde;
    if (k % 50 == 0) tr.check_invariants();
  }
  // taus strictly increasing
  const auto& taus = tr.taus();
  for (std::size_t i = 1; i < taus.size(); ++i) CHECK(taus[i] > taus[i - 1]);
}

TEST_CASE("case (iii) happens with probability Ptilde/(3n-6)") {
  // with the frontier frozen at Ptilde=1 until the first hit, the first
  // hit time is geometric with parameter 1/(3n-6)
  const std::int64_t n = 12;
  const double p = 1.0 / static_cast<double>(3 * n - 6);
  std::int64_t total_first = 0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    Rng rng(replica_seed(5050, i));
    FrontierTracker tr(glued_initial(n, rng));
    Rng srng(replica_seed(6060, i));
    std::int64_t k = 0;
    while (tr.taus().empty()) {
      tr.step(srng);
      if (++k > 100000) FAIL("no frontier hit in 1e5 steps");
    }
    total_first += tr.taus()[0] + 1;  // trials until first success
  }
  const double mean = static_cast<double>(total_first) / reps;
  const double expect = 1.0 / p;
  const double se = std::sqrt((1 - p) / (p * p) / reps);
  CHECK(std::abs(mean - expect) < 5 * se);
}

TEST_CASE("unknown side stays conditionally uniform (small-scale Lemma 8 check)") {
  // n=8, k=12: condition on (Ptilde, Vtilde) cells and chi-square the
  // canonical codes of T2 against uniform over its class
  const std::int64_t n = 8, steps = 12;
  struct CellData {
    std::map<Code, std::int64_t> hits;
    std::int64_t total = 0;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, CellData> cells;
  const int reps = 30000;
  for (int i = 0; i < reps; ++i) {
    Rng rng(replica_seed(717, i));
    FrontierTracker tr(glued_initial(n, rng));
    Rng srng(replica_seed(818, i));
    for (int k = 0; k < steps; ++k) tr.step(srng);
    if (tr.unknown_empty()) continue;
    auto& cell = cells[{tr.Ptilde(), tr.Vtilde()}];
    cell.hits[canonical_code(tr.extract_unknown())] += 1;
    cell.total += 1;
  }
  int tested = 0;
  for (const auto& [key, cell] : cells) {
    if (cell.total < 2000) continue;
    const auto [ptilde, vtilde] = key;
    const std::int64_t m = (n + 1) / 2 + 1 - vtilde;  // ceil((n+1)/2) - Vtilde
    const auto classes = generate_codes(m, ptilde);
    REQUIRE(!classes.empty());
    std::vector<std::int64_t> obs(classes.size(), 0);
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      const auto it = cell.hits.find(classes[ci]);
      if (it != cell.hits.end()) obs[ci] = it->second;
    }
    std::int64_t covered = 0;
    for (auto o : obs) covered += o;
    REQUIRE(covered == cell.total);  // every observed code is in the class
    if (classes.size() >= 2 && cell.total >= 8 * static_cast<std::int64_t>(classes.size())) {
      const auto r = chi2_uniform_test(obs, 1e-3);
      INFO("cell (", ptilde, ",", vtilde, "): chi2 ", r.statistic, " thr ", r.threshold);
      CHECK(r.pass);
      ++tested;
    }
  }
  CHECK(tested >= 1);
}

TEST_CASE("glued sides are marginally uniform at n=9") {
  const auto classes = generate_codes(4, 1);
  REQUIRE(classes.size() == 336);
  std::map<Code, std::int64_t> hits;
  const int reps = 40000;
  for (int i = 0; i < reps; ++i) {
    Rng rng(replica_seed(1234, i));
    FrontierTracker tr(glued_initial(9, rng));
    hits[canonical_code(tr.extract_unknown())] += 1;
  }
  std::vector<std::int64_t> obs;
  for (const auto& c : classes) obs.push_back(hits[c]);
  const auto r = chi2_uniform_test(obs, 1e-3);
  INFO("chi2 = ", r.statistic, " threshold = ", r.threshold);
  CHECK(r.pass);
}
