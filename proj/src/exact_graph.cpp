#include "triflip/exact_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include <Eigen/Dense>

#include "triflip/counting.hpp"
#include "triflip/generate.hpp"

namespace triflip {

FlipGraph build_flip_graph(std::int64_t n, std::int64_t bound) {
  if (n < 3) throw std::invalid_argument("build_flip_graph: n >= 3 required");
  if (n > bound) throw std::invalid_argument("build_flip_graph: bound exceeded");
  FlipGraph g;
  g.n = n;
  g.denom = 3 * n - 6;
  std::map<Code, std::int32_t> index;
  generate_all_sphere(
      n,
      [&](const Triangulation& t) {
        const auto c = canonical_code(t);
        if (index.emplace(c, 0).second) g.reps.push_back(t);
      },
      n);
  g.states.reserve(index.size());
  for (auto& [c, i] : index) {
    i = static_cast<std::int32_t>(g.states.size());
    g.states.push_back(c);
  }
  // reps were collected in generation order; re-sort to state order
  std::sort(g.reps.begin(), g.reps.end(), [](const Triangulation& a, const Triangulation& b) {
    return canonical_code(a) < canonical_code(b);
  });
  if (BigInt(g.size()) != count_sphere(n))
    throw std::logic_error("build_flip_graph: state count != count_sphere");

  g.trans.resize(g.size());
  for (std::int32_t i = 0; i < g.size(); ++i) {
    std::map<std::int32_t, std::int32_t> row;
    const Triangulation& t = g.reps[i];
    for (Dart e : edge_reps(t)) {
      const auto it = index.find(canonical_code(flip(t, e)));
      if (it == index.end()) throw std::logic_error("build_flip_graph: flip left the class");
      row[it->second] += 1;
    }
    g.trans[i].assign(row.begin(), row.end());
  }
  return g;
}

StationarityReport stationarity_report(const FlipGraph& g) {
  StationarityReport r;
  const auto count_of = [&](std::int32_t i, std::int32_t j) -> std::int32_t {
    const auto& row = g.trans[i];
    const auto it = std::lower_bound(row.begin(), row.end(), std::pair<std::int32_t, std::int32_t>{j, 0},
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    return it != row.end() && it->first == j ? it->second : 0;
  };
  r.symmetric = true;
  r.doubly_stochastic = true;
  std::vector<std::int64_t> colsum(g.size(), 0);
  for (std::int32_t i = 0; i < g.size(); ++i) {
    std::int64_t rowsum = 0;
    for (const auto& [j, c] : g.trans[i]) {
      rowsum += c;
      colsum[j] += c;
      if (count_of(j, i) != c) r.symmetric = false;
      if (j == i && c > 0) ++r.states_with_self_loop;
    }
    if (rowsum != g.denom) r.doubly_stochastic = false;
  }
  for (auto c : colsum)
    if (c != g.denom) r.doubly_stochastic = false;
  // uniform * P = uniform: column sums equal the denominator exactly
  r.uniform_stationary = r.doubly_stochastic;

  // irreducibility: BFS over positive-count edges
  {
    std::vector<char> seen(g.size(), 0);
    std::queue<std::int32_t> q;
    q.push(0);
    seen[0] = 1;
    std::int64_t cnt = 0;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      ++cnt;
      for (const auto& [j, c] : g.trans[i]) {
        if (c > 0 && !seen[j]) {
          seen[j] = 1;
          q.push(j);
        }
      }
    }
    r.irreducible = cnt == g.size();
  }
  // aperiodic: a self-loop, or (connected symmetric chain) not bipartite
  if (r.states_with_self_loop > 0) {
    r.aperiodic = true;
  } else if (r.irreducible) {
    std::vector<std::int8_t> color(g.size(), -1);
    std::queue<std::int32_t> q;
    q.push(0);
    color[0] = 0;
    bool bipartite = true;
    while (!q.empty() && bipartite) {
      const auto i = q.front();
      q.pop();
      for (const auto& [j, c] : g.trans[i]) {
        if (c == 0 || j == i) continue;
        if (color[j] == -1) {
          color[j] = static_cast<std::int8_t>(1 - color[i]);
          q.push(j);
        } else if (color[j] == color[i]) {
          bipartite = false;
          break;
        }
      }
    }
    r.aperiodic = !bipartite;
  }
  return r;
}

MixingReport mixing_exact(const FlipGraph& g, double eps, std::int64_t max_steps) {
  MixingReport rep;
  rep.eps = eps;
  const std::int64_t N = g.size();
  Eigen::MatrixXd P(N, N);
  P.setZero();
  for (std::int32_t i = 0; i < N; ++i)
    for (const auto& [j, c] : g.trans[i])
      P(i, j) = static_cast<double>(c) / static_cast<double>(g.denom);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
  if (es.info() != Eigen::Success) throw std::runtime_error("mixing_exact: eigensolver failed");
  const auto& lam = es.eigenvalues();  // ascending
  rep.second_eigenvalue = lam(N - 2);
  rep.spectral_gap = 1.0 - std::max(std::abs(lam(0)), std::abs(lam(N - 2)));

  const double unif = 1.0 / static_cast<double>(N);
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(N, N);  // P^k, power route
  const Eigen::MatrixXd& V = es.eigenvectors();
  Eigen::VectorXd lamk = Eigen::VectorXd::Ones(N);  // lambda^k, spectral route
  for (std::int64_t k = 0;; ++k) {
    // worst-start TV via the power route
    double tv = 0.0;
    for (std::int32_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::int32_t j = 0; j < N; ++j) s += std::abs(Mk(i, j) - unif);
      tv = std::max(tv, 0.5 * s);
    }
    // spectral route: P^k = V diag(lambda^k) V^T
    {
      const Eigen::MatrixXd Sk = V * lamk.asDiagonal() * V.transpose();
      double tv2 = 0.0;
      for (std::int32_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (std::int32_t j = 0; j < N; ++j) s += std::abs(Sk(i, j) - unif);
        tv2 = std::max(tv2, 0.5 * s);
      }
      rep.route_difference = std::max(rep.route_difference, std::abs(tv - tv2));
    }
    rep.tv_curve.push_back(tv);
    if (tv <= eps) {
      rep.t_mix = k;
      break;
    }
    if (k >= max_steps) break;
    Mk = Mk * P;
    for (std::int32_t i = 0; i < N; ++i) lamk(i) *= lam(i);
  }
  return rep;
}

ConnectivityReport connectivity_and_diameter(const FlipGraph& g) {
  ConnectivityReport r;
  const std::int64_t N = g.size();
  std::vector<std::int32_t> dist(N);
  std::int64_t diam = 0;
  bool connected = true;
  for (std::int32_t s = 0; s < N && connected; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<std::int32_t> q;
    q.push(s);
    dist[s] = 0;
    std::int64_t cnt = 0;
    while (!q.empty()) {
      const auto i = q.front();
      q.pop();
      ++cnt;
      diam = std::max<std::int64_t>(diam, dist[i]);
      for (const auto& [j, c] : g.trans[i]) {
        if (c > 0 && j != i && dist[j] == -1) {
          dist[j] = dist[i] + 1;
          q.push(j);
        }
      }
    }
    if (cnt != N) connected = false;
  }
  r.connected = connected;
  r.diameter = connected ? diam : -1;
  return r;
}

std::pair<std::int64_t, std::int64_t> type_defects(const Triangulation& t) {
  const auto vl = vertex_labels(t);
  std::int64_t loops = 0;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> mult;
  for (Dart d = 0; d < t.n_darts(); ++d) {
    if (d > t.twin[d]) continue;
    const auto a = vl[d], b = vl[t.twin[d]];
    if (a == b) {
      ++loops;
    } else {
      ++mult[{std::min(a, b), std::max(a, b)}];
    }
  }
  std::int64_t excess = 0;
  for (const auto& [k, m] : mult) excess += m - 1;
  return {loops, excess};
}

namespace {

struct LoopSideScratch {
  std::vector<std::int32_t> face_stamp;
  std::int32_t stamp = 0;
};

// Full BFS of one side of a loop edge: face count and whether the side
// contains another loop.
struct LoopSideInfo {
  std::int64_t faces = 0;
  bool has_loop = false;
};

LoopSideInfo loop_side(const Triangulation& t, const std::vector<std::int32_t>& face,
                       const std::vector<Dart>& face_first, const std::vector<std::int32_t>& vl,
                       Dart side_dart, LoopSideScratch& sc) {
  const Dart rep = std::min(side_dart, t.twin[side_dart]);
  const std::int32_t stamp = ++sc.stamp;
  LoopSideInfo out;
  std::vector<std::int32_t> stack{face[side_dart]};
  sc.face_stamp[face[side_dart]] = stamp;
  while (!stack.empty()) {
    const auto f = stack.back();
    stack.pop_back();
    ++out.faces;
    Dart x = face_first[f];
    do {
      if (std::min(x, t.twin[x]) != rep) {
        if (x < t.twin[x] && vl[x] == vl[t.twin[x]]) out.has_loop = true;
        const auto g = face[t.twin[x]];
        if (sc.face_stamp[g] != stamp) {
          sc.face_stamp[g] = stamp;
          stack.push_back(g);
        }
      }
      x = t.fnext[x];
    } while (x != face_first[f]);
  }
  return out;
}

// Lockstep over both sides of the loop; stops at the first exhaustion or
// once both sides have discovered more than `abort_above` faces. The
// smaller side's exact face count follows from the sum rule (face counts
// of the two sides add to nfaces).
struct SmallerSide {
  std::int64_t faces = -1;  // -1: aborted, strictly larger than abort_above
  bool left = true;         // which side of the loop dart is the smaller one
  bool loop_known = false;  // has_loop below is meaningful
  bool has_loop = false;
};

SmallerSide smaller_loop_side(const Triangulation& t, const std::vector<std::int32_t>& face,
                              const std::vector<Dart>& face_first,
                              const std::vector<std::int32_t>& vl, std::int32_t nfaces,
                              Dart loop_dart, std::int64_t abort_above, LoopSideScratch& sc) {
  struct Side {
    std::vector<std::int32_t> faces;
    std::size_t head = 0;
    bool has_loop = false;
    std::int32_t stamp = 0;
    bool exhausted() const { return head == faces.size(); }
    std::int64_t discovered() const { return static_cast<std::int64_t>(faces.size()); }
  };
  const Dart rep = std::min(loop_dart, t.twin[loop_dart]);
  Side L, R;
  L.stamp = ++sc.stamp;
  R.stamp = ++sc.stamp;
  L.faces.push_back(face[loop_dart]);
  sc.face_stamp[face[loop_dart]] = L.stamp;
  R.faces.push_back(face[t.twin[loop_dart]]);
  sc.face_stamp[face[t.twin[loop_dart]]] = R.stamp;
  const auto expand = [&](Side& s) {
    const auto f = s.faces[s.head++];
    Dart x = face_first[f];
    do {
      if (std::min(x, t.twin[x]) != rep) {
        if (x < t.twin[x] && vl[x] == vl[t.twin[x]]) s.has_loop = true;
        const auto g = face[t.twin[x]];
        if (sc.face_stamp[g] != L.stamp && sc.face_stamp[g] != R.stamp) {
          sc.face_stamp[g] = s.stamp;
          s.faces.push_back(g);
        }
      }
      x = t.fnext[x];
    } while (x != face_first[f]);
  };
  while (!L.exhausted() && !R.exhausted()) {
    if (abort_above > 0 && L.discovered() > abort_above && R.discovered() > abort_above)
      return {};
    if (L.discovered() <= R.discovered())
      expand(L);
    else
      expand(R);
  }
  const Side& done = L.exhausted() ? L : R;
  const bool done_is_left = &done == &L;
  SmallerSide out;
  const std::int64_t fx = done.discovered();
  if (fx <= nfaces - fx) {
    out.faces = fx;
    out.left = done_is_left;
    out.loop_known = true;
    out.has_loop = done.has_loop;
  } else {
    out.faces = nfaces - fx;
    out.left = !done_is_left;
    out.loop_known = false;
  }
  return out;
}

}  // namespace

NormalizeResult normalize_to_type3(const Triangulation& t0) {
  NormalizeResult res;
  res.final_map = t0;
  Triangulation& t = res.final_map;
  const std::int64_t max_flips = 3 * vertex_count(t) + 16;

  // loop phase: flip the loop whose smaller side has the fewest faces;
  // the globally minimal such side contains no loop
  for (;;) {
    if (static_cast<std::int64_t>(res.flips.size()) > max_flips)
      throw std::logic_error("normalize_to_type3: flip budget exceeded");
    const auto vl = vertex_labels(t);
    std::int32_t nfaces = 0;
    const auto face = face_labels(t, &nfaces);
    std::vector<Dart> face_first(nfaces, -1);
    for (Dart d = t.n_darts() - 1; d >= 0; --d) face_first[face[d]] = d;
    LoopSideScratch sc;
    sc.face_stamp.assign(nfaces, -1);
    Dart best = -1;
    SmallerSide best_side;
    for (Dart d = 0; d < t.n_darts(); ++d) {
      if (d > t.twin[d] || vl[d] != vl[t.twin[d]]) continue;  // loops only, one dart each
      const auto side = smaller_loop_side(t, face, face_first, vl, nfaces, d,
                                          best < 0 ? 0 : best_side.faces, sc);
      if (side.faces < 0) continue;  // larger than the current best on both sides
      if (best < 0 || side.faces < best_side.faces) {
        best = d;
        best_side = side;
        if (best_side.faces == 1 && best_side.loop_known && !best_side.has_loop) break;
      }
    }
    if (best < 0) break;  // no loops left
    if (!best_side.loop_known) {
      const auto info =
          loop_side(t, face, face_first, vl, best_side.left ? best : t.twin[best], sc);
      best_side.has_loop = info.has_loop;
      best_side.loop_known = true;
    }
    // the globally minimal side is loop-free (any loop inside would bound
    // a strictly smaller side)
    if (best_side.has_loop)
      throw std::logic_error("normalize_to_type3: minimal loop side contains a loop");
    if (!flippable(t, best)) throw std::logic_error("normalize_to_type3: unflippable loop");
    const auto before = type_defects(t);
    flip_in_place(t, best);
    res.flips.push_back(std::min(best, t.twin[best]));
    const auto after = type_defects(t);
    if (after.first != before.first - 1)
      throw std::logic_error("normalize_to_type3: loop flip did not remove exactly one loop");
  }

  // multi-edge phase: flip a parallel edge whose new diagonal neither is
  // a loop nor duplicates an existing edge
  for (;;) {
    if (static_cast<std::int64_t>(res.flips.size()) > max_flips)
      throw std::logic_error("normalize_to_type3: flip budget exceeded");
    const auto vl = vertex_labels(t);
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> mult;
    for (Dart d = 0; d < t.n_darts(); ++d) {
      if (d > t.twin[d]) continue;
      mult[{std::min(vl[d], vl[t.twin[d]]), std::max(vl[d], vl[t.twin[d]])}] += 1;
    }
    Dart chosen = -1;
    for (Dart d = 0; d < t.n_darts() && chosen < 0; ++d) {
      if (d > t.twin[d]) continue;
      const auto key = std::pair{std::min(vl[d], vl[t.twin[d]]), std::max(vl[d], vl[t.twin[d]])};
      if (mult[key] < 2) continue;
      if (!flippable(t, d)) continue;
      // diagonal endpoints: the far corners of the two adjacent faces
      const Dart c = t.fnext[d], dd = t.fnext[c];
      const Dart g = t.fnext[t.twin[d]], hh = t.fnext[g];
      const std::int32_t ww = vl[dd];  // origin of the third dart of face(d)
      const std::int32_t xx = vl[hh];  // origin of the third dart of face(twin d)
      if (ww == xx) continue;  // would create a loop
      const auto dkey = std::pair{std::min(ww, xx), std::max(ww, xx)};
      const auto it = mult.find(dkey);
      if (it != mult.end() && it->second >= 1) continue;  // would duplicate
      chosen = d;
    }
    if (chosen < 0) {
      const auto defects = type_defects(t);
      if (defects.second != 0)
        throw std::logic_error("normalize_to_type3: no safe parallel-edge flip found");
      break;
    }
    const auto before = type_defects(t);
    flip_in_place(t, chosen);
    res.flips.push_back(std::min(chosen, t.twin[chosen]));
    const auto after = type_defects(t);
    if (after.first != 0 || after.second != before.second - 1)
      throw std::logic_error("normalize_to_type3: parallel flip made no progress");
  }
  return res;
}

}  // namespace triflip
