#include "triflip/cycles.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <thread>

#include "triflip/exploration.hpp"

namespace triflip {

namespace {

struct HostIndex {
  const Triangulation& t;
  std::vector<std::int32_t> vert, face;
  std::int32_t nverts = 0, nfaces = 0;
  std::vector<std::int32_t> off;  // CSR of out-darts per vertex
  std::vector<Dart> out;
  std::vector<Dart> face_first;

  explicit HostIndex(const Triangulation& t_) : t(t_) {
    vert = vertex_labels(t, &nverts);
    face = face_labels(t, &nfaces);
    std::vector<std::int32_t> deg(nverts, 0);
    for (Dart d = 0; d < t.n_darts(); ++d) ++deg[vert[d]];
    off.assign(nverts + 1, 0);
    for (std::int32_t v = 0; v < nverts; ++v) off[v + 1] = off[v] + deg[v];
    out.resize(t.n_darts());
    std::vector<std::int32_t> pos(off.begin(), off.end() - 1);
    for (Dart d = 0; d < t.n_darts(); ++d) out[pos[vert[d]]++] = d;
    face_first.assign(nfaces, -1);
    for (Dart d = t.n_darts() - 1; d >= 0; --d) face_first[face[d]] = d;
  }

  std::int32_t head(Dart d) const { return vert[t.twin[d]]; }
  Dart edge_id(Dart d) const { return std::min(d, t.twin[d]); }
};

// Scratch buffers for repeated side computations on one host.
struct SideScratch {
  std::vector<std::int32_t> face_stamp, vert_stamp, edge_stamp;
  std::int32_t stamp = 0;

  explicit SideScratch(const HostIndex& h)
      : face_stamp(h.nfaces, -1), vert_stamp(h.nverts, -1), edge_stamp(h.t.n_darts(), -1) {}
};

// Strict interior vertex counts of the two sides of a simple cycle.
// Lockstep BFS runs only until the smaller side is exhausted; the other
// count follows from a + b + len = n. left_faces_stamp reports the stamp
// used for the left side so callers can test face membership of the
// exhausted side.
struct SideSplit {
  std::int64_t left = 0, right = 0;
  bool left_exhausted = false;  // which side the BFS finished
  std::int32_t left_stamp = 0, right_stamp = 0;
};

SideSplit side_split(const HostIndex& h, const std::vector<Dart>& cycle, SideScratch& sc) {
  const auto& t = h.t;
  const std::int32_t cyc_stamp = ++sc.stamp;
  for (Dart d : cycle) {
    sc.vert_stamp[h.vert[d]] = cyc_stamp;
    sc.edge_stamp[d] = cyc_stamp;
    sc.edge_stamp[t.twin[d]] = cyc_stamp;
  }
  struct Side {
    std::vector<std::int32_t> faces;
    std::size_t head = 0;
    std::int64_t verts = 0;
    std::int32_t stamp = 0;
    bool exhausted() const { return head == faces.size(); }
  };
  Side L, R;
  L.stamp = ++sc.stamp;
  R.stamp = ++sc.stamp;
  const auto seed = [&](Side& s, std::int32_t f) {
    if (sc.face_stamp[f] == L.stamp || sc.face_stamp[f] == R.stamp) {
      if (sc.face_stamp[f] != s.stamp)
        throw std::logic_error("side_split: cycle does not separate");
      return;
    }
    sc.face_stamp[f] = s.stamp;
    s.faces.push_back(f);
  };
  for (Dart d : cycle) seed(L, h.face[d]);
  for (Dart d : cycle) seed(R, h.face[t.twin[d]]);
  const auto expand = [&](Side& s, const Side& o) {
    const std::int32_t f = s.faces[s.head++];
    Dart x = h.face_first[f];
    do {
      const auto v = h.vert[x];
      if (sc.vert_stamp[v] != cyc_stamp && sc.vert_stamp[v] != s.stamp) {
        sc.vert_stamp[v] = s.stamp;
        ++s.verts;
      }
      if (sc.edge_stamp[x] != cyc_stamp) {
        const auto g = h.face[t.twin[x]];
        if (sc.face_stamp[g] == o.stamp) throw std::logic_error("side_split: sides met");
        if (sc.face_stamp[g] != s.stamp) {
          sc.face_stamp[g] = s.stamp;
          s.faces.push_back(g);
        }
      }
      x = t.fnext[x];
    } while (x != h.face_first[f]);
  };
  while (!L.exhausted() && !R.exhausted()) {
    if (L.verts <= R.verts)
      expand(L, R);
    else
      expand(R, L);
  }
  SideSplit out;
  out.left_stamp = L.stamp;
  out.right_stamp = R.stamp;
  const std::int64_t len = static_cast<std::int64_t>(cycle.size());
  if (L.exhausted()) {
    out.left_exhausted = true;
    out.left = L.verts;
    out.right = h.nverts - len - L.verts;
  } else {
    out.left_exhausted = false;
    out.right = R.verts;
    out.left = h.nverts - len - R.verts;
  }
  return out;
}

// Is face f in the exhausted side of the last side_split call?
bool face_in_exhausted(const SideScratch& sc, const SideSplit& s, std::int32_t f) {
  return sc.face_stamp[f] == (s.left_exhausted ? s.left_stamp : s.right_stamp);
}

bool better(const std::vector<Dart>& a, const std::vector<Dart>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void restricted_dist(const HostIndex& h, std::int32_t src, Dart min_edge, std::int64_t radius,
                     std::vector<std::int32_t>& dist, std::vector<std::int32_t>& touched) {
  touched.clear();
  dist[src] = 0;
  touched.push_back(src);
  std::queue<std::int32_t> q;
  q.push(src);
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (dist[v] >= radius) continue;
    for (std::int32_t i = h.off[v]; i < h.off[v + 1]; ++i) {
      const Dart d = h.out[i];
      if (h.edge_id(d) <= min_edge) continue;
      const auto u = h.head(d);
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        touched.push_back(u);
        q.push(u);
      }
    }
  }
}

// Every simple cycle whose minimal edge is e0's edge, traversed in e0's
// direction; all other edges have strictly larger id. `can`, when given,
// is a per-vertex filter every witness vertex is known to satisfy.
template <typename OnCycle>
void enumerate_cycles_from(const HostIndex& h, Dart e0, std::int64_t len_max,
                           std::vector<std::int32_t>& dist, std::vector<std::int32_t>& touched,
                           std::vector<char>& on_path, const std::vector<char>* can,
                           const OnCycle& on_cycle) {
  const std::int32_t s = h.vert[e0];
  if (can && (!(*can)[s] || !(*can)[h.head(e0)])) return;
  if (h.head(e0) == s) {
    on_cycle(std::vector<Dart>{e0});  // a loop; longer cycles through it revisit s
    return;
  }
  if (len_max < 2) return;
  restricted_dist(h, s, h.edge_id(e0), len_max - 1, dist, touched);
  std::vector<Dart> path{e0};
  on_path[s] = 1;
  on_path[h.head(e0)] = 1;
  const auto dfs = [&](const auto& self, std::int32_t at) -> void {
    const std::int64_t len = static_cast<std::int64_t>(path.size());
    for (std::int32_t i = h.off[at]; i < h.off[at + 1]; ++i) {
      const Dart z = h.out[i];
      if (h.edge_id(z) <= h.edge_id(e0)) continue;
      const auto to = h.head(z);
      if (to == s) {
        std::vector<Dart> cyc = path;
        cyc.push_back(z);
        on_cycle(cyc);
        continue;
      }
      if (len + 1 >= len_max) continue;
      if (on_path[to]) continue;
      if (can && !(*can)[to]) continue;
      if (dist[to] < 0 || dist[to] > len_max - len - 1) continue;
      path.push_back(z);
      on_path[to] = 1;
      self(self, to);
      on_path[to] = 0;
      path.pop_back();
    }
  };
  dfs(dfs, h.head(e0));
  on_path[s] = 0;
  on_path[h.head(e0)] = 0;
  for (auto v : touched) dist[v] = -1;
}

template <typename OnCycle>
void enumerate_all_cycles(const HostIndex& h, std::int64_t len_max, int threads,
                          const OnCycle& on_cycle, const std::vector<char>* can = nullptr) {
  const auto reps = edge_reps(h.t);
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  const std::size_t nsh = static_cast<std::size_t>(threads);
  auto work = [&](std::size_t shard) {
    std::vector<std::int32_t> dist(h.nverts, -1);
    std::vector<std::int32_t> touched;
    std::vector<char> on_path(h.nverts, 0);
    for (std::size_t i = shard; i < reps.size(); i += nsh)
      enumerate_cycles_from(h, reps[i], len_max, dist, touched, on_path, can,
                            [&](const std::vector<Dart>& cyc) { on_cycle(shard, cyc); });
  };
  if (nsh == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t sh = 0; sh < nsh; ++sh) pool.emplace_back(work, sh);
    for (auto& th : pool) th.join();
  }
}

}  // namespace

std::pair<std::int64_t, std::int64_t> side_volumes(const Triangulation& t,
                                                   const std::vector<Dart>& cycle) {
  if (cycle.empty()) throw std::invalid_argument("side_volumes: empty cycle");
  HostIndex h(t);
  std::vector<std::int32_t> verts;
  std::vector<Dart> edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Dart d = cycle[i];
    if (d < 0 || d >= t.n_darts()) throw std::invalid_argument("side_volumes: dart out of range");
    const Dart nxt = cycle[(i + 1) % cycle.size()];
    if (h.head(d) != h.vert[nxt]) throw std::invalid_argument("side_volumes: walk not closed");
    verts.push_back(h.vert[d]);
    edges.push_back(h.edge_id(d));
  }
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    throw std::invalid_argument("side_volumes: repeated vertex");
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("side_volumes: repeated edge");

  SideScratch sc(h);
  const auto s = side_split(h, cycle, sc);
  return {s.left, s.right};
}

namespace {

// Every cycle of length <= L through vertex s stays inside the radius
// floor(L/2) ball of s, and each connected component of the ball's
// complement lies wholly on one side of it. A side avoiding the largest
// complement component holds at most ball + (complement - largest) - 1
// vertices, so s cannot carry a witness when that bound is below
// min_side. Exact, and in a uniform triangulation it eliminates almost
// every start vertex; in a glued map only the neck region survives.
std::vector<char> fat_cycle_candidates(const HostIndex& h, std::int64_t len_max,
                                       std::int64_t min_side, int nth) {
  const std::int64_t radius = len_max / 2;
  std::vector<char> can(h.nverts, 1);
  if (min_side <= 1) return can;
  auto work = [&](int shard) {
    std::vector<std::int32_t> stamp(h.nverts, -1);
    std::int32_t cur = 0;
    std::vector<std::int32_t> ball, queue;
    for (std::int32_t s = shard; s < h.nverts; s += nth) {
      ++cur;
      ball.clear();
      stamp[s] = cur;
      ball.push_back(s);
      std::size_t ring_begin = 0;
      for (std::int64_t r = 0; r < radius; ++r) {
        const std::size_t ring_end = ball.size();
        for (std::size_t bi = ring_begin; bi < ring_end; ++bi) {
          const auto v = ball[bi];
          for (std::int32_t i = h.off[v]; i < h.off[v + 1]; ++i) {
            const auto u = h.head(h.out[i]);
            if (stamp[u] != cur) {
              stamp[u] = cur;
              ball.push_back(u);
            }
          }
        }
        ring_begin = ring_end;
      }
      const std::int64_t b = static_cast<std::int64_t>(ball.size());
      const std::int64_t gamma = h.nverts - b;
      if (gamma <= 0) continue;       // ball covers the map: no verdict
      if (b - 1 >= min_side) continue;  // the ball alone could hold a fat side
      // Sweep the complement components (all are adjacent to the ball).
      // Pruning holds once the largest component found is big enough:
      // gamma - largest <= min_side - b. A component reaching `enough`
      // settles it immediately.
      const std::int64_t enough = gamma - (min_side - b);
      std::int64_t largest = 0, explored = 0;
      bool pruned = false;
      for (std::size_t bi = 0; bi < ball.size() && !pruned && explored < gamma; ++bi) {
        const auto bv = ball[bi];
        for (std::int32_t i = h.off[bv]; i < h.off[bv + 1] && !pruned; ++i) {
          const auto v0 = h.head(h.out[i]);
          if (stamp[v0] == cur) continue;
          std::int64_t c0 = 1;
          queue.clear();
          queue.push_back(v0);
          stamp[v0] = cur;
          for (std::size_t qi = 0; qi < queue.size() && c0 < enough; ++qi) {
            const auto v = queue[qi];
            for (std::int32_t j = h.off[v]; j < h.off[v + 1]; ++j) {
              const auto u = h.head(h.out[j]);
              if (stamp[u] != cur) {
                stamp[u] = cur;
                queue.push_back(u);
                if (++c0 >= enough) break;
              }
            }
          }
          explored += c0;
          largest = std::max(largest, c0);
          if (gamma - largest <= min_side - b) pruned = true;
        }
      }
      if (pruned) can[s] = 0;
    }
  };
  if (nth <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int sh = 0; sh < nth; ++sh) pool.emplace_back(work, sh);
    for (auto& th : pool) th.join();
  }
  return can;
}

}  // namespace

std::optional<CycleWitness> find_separating_cycle(const Triangulation& t, std::int64_t len_max,
                                                  std::int64_t min_side, int threads) {
  if (len_max < 1) throw std::invalid_argument("find_separating_cycle: len_max >= 1");
  if (min_side < 0) throw std::invalid_argument("find_separating_cycle: min_side >= 0");
  if (t.kind != MapKind::Sphere)
    throw std::invalid_argument("find_separating_cycle: sphere expected");
  HostIndex h(t);
  const unsigned hw = std::thread::hardware_concurrency();
  const int nth = threads > 0 ? threads : (hw == 0 ? 1 : static_cast<int>(hw));
  std::vector<SideScratch> scratch;
  scratch.reserve(nth);
  for (int i = 0; i < nth; ++i) scratch.emplace_back(h);
  // Iterative deepening: the first length carrying a witness already
  // determines the (length, sequence)-minimal result, and deeper, far
  // more expensive enumerations never run. The vertex prune is also
  // tighter at smaller radii.
  for (std::int64_t L = 1; L <= len_max; ++L) {
    if (h.nverts - L < 2 * min_side) break;
    const auto candidates = fat_cycle_candidates(h, L, min_side, nth);
    std::vector<std::optional<CycleWitness>> best(nth);
    enumerate_all_cycles(
        h, L, nth,
        [&](std::size_t shard, const std::vector<Dart>& cyc) {
          if (static_cast<std::int64_t>(cyc.size()) != L) return;  // shorter ones already tried
          auto& mine = best[shard];
          if (mine && !better(cyc, mine->darts)) return;
          const auto s = side_split(h, cyc, scratch[shard]);
          if (std::min(s.left, s.right) < min_side) return;
          CycleWitness w;
          w.darts = cyc;
          w.side_left = s.left;
          w.side_right = s.right;
          mine = std::move(w);
        },
        &candidates);
    std::optional<CycleWitness> result;
    for (auto& b : best)
      if (b && (!result || better(b->darts, result->darts))) result = std::move(b);
    if (result) return result;
  }
  return std::nullopt;
}

std::optional<CycleWitness> boundary_shield_cycle(const Triangulation& t, std::int64_t len_max,
                                                  std::int64_t vol_max, int threads) {
  if (t.kind != MapKind::Boundary)
    throw std::invalid_argument("boundary_shield_cycle: boundary map expected");
  if (len_max < 1) throw std::invalid_argument("boundary_shield_cycle: len_max >= 1");
  HostIndex h(t);
  const std::int32_t outer_face = h.face[t.outer];

  const auto consider = [&](const std::vector<Dart>& cyc, SideScratch& sc,
                            std::optional<CycleWitness>& slot) {
    if (static_cast<std::int64_t>(cyc.size()) > len_max) return;
    if (slot && !better(cyc, slot->darts)) return;
    const auto s = side_split(h, cyc, sc);
    // volume between the boundary and the cycle: the outer face's side
    const bool outer_in_exhausted = face_in_exhausted(sc, s, outer_face);
    std::int64_t between;
    if (outer_in_exhausted)
      between = s.left_exhausted ? s.left : s.right;
    else
      between = s.left_exhausted ? s.right : s.left;
    if (between > vol_max) return;
    CycleWitness w;
    w.darts = cyc;
    w.side_left = s.left;
    w.side_right = s.right;
    slot = std::move(w);
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int nth = threads > 0 ? threads : (hw == 0 ? 1 : static_cast<int>(hw));
  std::vector<std::optional<CycleWitness>> best(nth);
  std::vector<SideScratch> scratch;
  scratch.reserve(nth);
  for (int i = 0; i < nth; ++i) scratch.emplace_back(h);
  const std::int64_t enum_len = std::min<std::int64_t>(len_max, kCycleSearchCap);
  enumerate_all_cycles(h, enum_len, nth, [&](std::size_t shard, const std::vector<Dart>& cyc) {
    consider(cyc, scratch[shard], best[shard]);
  });
  std::optional<CycleWitness> result;
  for (auto& b : best)
    if (b && (!result || better(b->darts, result->darts))) result = std::move(b);

  // hull boundaries at every radius as candidates beyond the exact cap
  for (std::int64_t r = 1; r <= h.nverts + 1; ++r) {
    const Region hr = hull(t, r);
    if (hr.boundaries.empty()) break;
    for (const auto& cyc : hr.boundaries) {
      std::vector<std::int32_t> vs;
      for (Dart d : cyc) vs.push_back(h.vert[d]);
      std::sort(vs.begin(), vs.end());
      if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) continue;
      consider(cyc, scratch[0], result);
    }
    if (hr.n_faces >= h.nfaces - 1) break;
  }
  return result;
}

}  // namespace triflip
