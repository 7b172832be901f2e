#include <doctest.h>

#include <algorithm>
#include <map>

#include "triflip/counting.hpp"
#include "triflip/exact_graph.hpp"
#include "triflip/generate.hpp"
#include "triflip/sampling.hpp"

using namespace triflip;

TEST_CASE("flip graph sizes match the enumeration formula") {
  CHECK(build_flip_graph(3).size() == 4);
  CHECK(build_flip_graph(4).size() == 32);
}

TEST_CASE("stationarity checks pass exactly at n=3 and n=4") {
  for (std::int64_t n : {3, 4}) {
    const auto g = build_flip_graph(n);
    const auto r = stationarity_report(g);
    CHECK(r.symmetric);
    CHECK(r.doubly_stochastic);
    CHECK(r.uniform_stationary);
    CHECK(r.irreducible);
    CHECK(r.aperiodic);
  }
  // unflippable edges exist at n=4: some state has a self-loop
  const auto g4 = build_flip_graph(4);
  CHECK(stationarity_report(g4).states_with_self_loop > 0);
}

TEST_CASE("every flip-graph edge is realizable by a flip") {
  const auto g = build_flip_graph(4);
  for (std::int32_t i = 0; i < g.size(); ++i) {
    std::map<std::int32_t, std::int32_t> row;
    for (Dart e : edge_reps(g.reps[i])) {
      const auto c = canonical_code(flip(g.reps[i], e));
      const auto it = std::lower_bound(g.states.begin(), g.states.end(), c);
      REQUIRE(it != g.states.end());
      row[static_cast<std::int32_t>(it - g.states.begin())] += 1;
    }
    REQUIRE(row.size() == g.trans[i].size());
    for (const auto& [j, c] : g.trans[i]) CHECK(row[j] == c);
  }
}

TEST_CASE("mixing report: curves decrease, routes agree, t_mix finite") {
  const auto g = build_flip_graph(4);
  const auto m = mixing_exact(g, 0.25);
  REQUIRE(m.t_mix >= 0);
  CHECK(m.tv_curve.front() == doctest::Approx(1.0 - 1.0 / 32.0));
  for (std::size_t i = 1; i < m.tv_curve.size(); ++i)
    CHECK(m.tv_curve[i] <= m.tv_curve[i - 1] + 1e-12);
  CHECK(m.route_difference < 1e-10);
  CHECK(m.spectral_gap > 0.0);
  CHECK(m.tv_curve.back() <= 0.25);
}

TEST_CASE("flip graphs are connected with sane diameters") {
  const auto g3 = build_flip_graph(3);
  const auto c3 = connectivity_and_diameter(g3);
  CHECK(c3.connected);
  const auto g4 = build_flip_graph(4);
  const auto c4 = connectivity_and_diameter(g4);
  CHECK(c4.connected);
  CHECK(c4.diameter >= c3.diameter);

  // negative control: isolating one state must break connectivity
  auto broken = g4;
  for (auto& [j, c] : broken.trans[0])
    if (j != 0) c = 0;
  for (std::int32_t i = 1; i < broken.size(); ++i)
    for (auto& [j, c] : broken.trans[i])
      if (j == 0) c = 0;
  CHECK_FALSE(connectivity_and_diameter(broken).connected);
}

TEST_CASE("type defects and normalization on T_3") {
  generate_all_sphere(3, [](const Triangulation& t) {
    const auto [loops, excess] = type_defects(t);
    const auto res = normalize_to_type3(t);
    const auto [l2, e2] = type_defects(res.final_map);
    CHECK(l2 == 0);
    CHECK(e2 == 0);
    CHECK(validate(res.final_map).ok);
    if (loops == 0 && excess == 0) CHECK(res.flips.empty());
    CHECK(static_cast<std::int64_t>(res.flips.size()) <= 9);  // 3n at n=3
  });
}

TEST_CASE("normalization works on random samples with valid intermediates") {
  Rng rng(41);
  for (int it = 0; it < 30; ++it) {
    const auto t = sample_sphere(60, rng);
    const auto res = normalize_to_type3(t);
    const auto [loops, excess] = type_defects(res.final_map);
    CHECK(loops == 0);
    CHECK(excess == 0);
    CHECK(validate(res.final_map).ok);
    CHECK(static_cast<std::int64_t>(res.flips.size()) <= 3 * 60);
    // replay the sequence: each flip applies to a valid map
    Triangulation cur = t;
    for (const auto e : res.flips) {
      flip_in_place(cur, e);
      REQUIRE(validate(cur).ok);
    }
    CHECK(canonical_code(cur) == canonical_code(res.final_map));
  }
}
