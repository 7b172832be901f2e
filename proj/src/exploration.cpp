#include "triflip/exploration.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace triflip {

namespace {

// BFS vertex distances from the given source vertices.
std::vector<std::int64_t> vertex_distances(const Triangulation& t,
                                           const std::vector<std::int32_t>& vert,
                                           std::int32_t nverts,
                                           const std::vector<std::int32_t>& sources) {
  std::vector<std::int32_t> deg(nverts, 0);
  for (Dart d = 0; d < t.n_darts(); ++d) ++deg[vert[d]];
  std::vector<std::int32_t> off(nverts + 1, 0);
  for (std::int32_t v = 0; v < nverts; ++v) off[v + 1] = off[v] + deg[v];
  std::vector<Dart> out(t.n_darts());
  {
    std::vector<std::int32_t> pos(off.begin(), off.end() - 1);
    for (Dart d = 0; d < t.n_darts(); ++d) out[pos[vert[d]]++] = d;
  }
  std::vector<std::int64_t> dist(nverts, -1);
  std::queue<std::int32_t> q;
  for (auto s : sources) {
    if (dist[s] == -1) {
      dist[s] = 0;
      q.push(s);
    }
  }
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (std::int32_t i = off[v]; i < off[v + 1]; ++i) {
      const std::int32_t u = vert[t.twin[out[i]]];
      if (dist[u] == -1) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
    }
  }
  return dist;
}

std::vector<Dart> face_first_darts(const Triangulation& t, const std::vector<std::int32_t>& face,
                                   std::int32_t nfaces) {
  std::vector<Dart> first(nfaces, -1);
  for (Dart d = t.n_darts() - 1; d >= 0; --d) first[face[d]] = d;
  return first;
}

std::int64_t region_closed_vertices(const Triangulation& t, const std::vector<std::int32_t>& face,
                                    const std::vector<std::int32_t>& vert, std::int32_t nverts,
                                    const std::vector<char>& in) {
  std::vector<char> seen(nverts, 0);
  std::int64_t c = 0;
  for (Dart d = 0; d < t.n_darts(); ++d) {
    if (!in[face[d]]) continue;
    if (!seen[vert[d]]) {
      seen[vert[d]] = 1;
      ++c;
    }
  }
  return c;
}

std::vector<std::vector<Dart>> region_boundaries(const Triangulation& t,
                                                 const std::vector<std::int32_t>& face,
                                                 const std::vector<char>& in) {
  std::vector<char> used(t.n_darts(), 0);
  std::vector<std::vector<Dart>> cycles;
  for (Dart d0 = 0; d0 < t.n_darts(); ++d0) {
    if (used[d0] || !in[face[d0]] || in[face[t.twin[d0]]]) continue;
    std::vector<Dart> cyc;
    Dart d = d0;
    do {
      used[d] = 1;
      cyc.push_back(d);
      Dart z = t.fnext[d];
      while (in[face[t.twin[z]]]) z = t.fnext[t.twin[z]];
      d = z;
    } while (d != d0);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace

Region ball(const Triangulation& t, std::int64_t r) {
  if (r < 1) throw std::invalid_argument("ball: r >= 1 required");
  std::int32_t nfaces = 0, nverts = 0;
  const auto face = face_labels(t, &nfaces);
  const auto vert = vertex_labels(t, &nverts);
  std::vector<std::int32_t> sources;
  std::int32_t outer_face = -1;
  if (t.kind == MapKind::Sphere) {
    sources.push_back(vert[t.root]);
  } else {
    outer_face = face[t.outer];
    Dart d = t.outer;
    do {
      sources.push_back(vert[d]);
      d = t.fnext[d];
    } while (d != t.outer);
  }
  const auto dist = vertex_distances(t, vert, nverts, sources);

  Region reg;
  reg.faces.assign(nfaces, 0);
  for (Dart d = 0; d < t.n_darts(); ++d) {
    if (face[d] == outer_face) continue;
    if (dist[vert[d]] <= r - 1) reg.faces[face[d]] = 1;
  }
  for (std::int32_t f = 0; f < nfaces; ++f) reg.n_faces += reg.faces[f];
  reg.closed_vertices = region_closed_vertices(t, face, vert, nverts, reg.faces);
  reg.boundaries = region_boundaries(t, face, reg.faces);
  return reg;
}

Region hull(const Triangulation& t, std::int64_t r) {
  Region reg = ball(t, r);
  std::int32_t nfaces = 0, nverts = 0;
  const auto face = face_labels(t, &nfaces);
  const auto vert = vertex_labels(t, &nverts);
  const auto first = face_first_darts(t, face, nfaces);
  const std::int32_t outer_face = t.kind == MapKind::Boundary ? face[t.outer] : -1;

  std::vector<std::int32_t> comp(nfaces, -1);
  std::int32_t ncomp = 0;
  for (std::int32_t f0 = 0; f0 < nfaces; ++f0) {
    if (reg.faces[f0] || f0 == outer_face || comp[f0] >= 0) continue;
    std::vector<std::int32_t> stack{f0};
    comp[f0] = ncomp;
    while (!stack.empty()) {
      const auto f = stack.back();
      stack.pop_back();
      Dart x = first[f];
      do {
        const auto g = face[t.twin[x]];
        if (!reg.faces[g] && g != outer_face && comp[g] < 0) {
          comp[g] = ncomp;
          stack.push_back(g);
        }
        x = t.fnext[x];
      } while (x != first[f]);
    }
    ++ncomp;
  }
  if (ncomp > 0) {
    std::vector<std::int64_t> cverts(ncomp, 0);
    std::vector<Dart> cmin(ncomp, t.n_darts());
    std::vector<std::int32_t> seen(nverts, -1);
    for (Dart d = 0; d < t.n_darts(); ++d) {
      const auto f = face[d];
      if (f == outer_face || reg.faces[f] || comp[f] < 0) continue;
      cmin[comp[f]] = std::min(cmin[comp[f]], d);
      if (seen[vert[d]] != comp[f]) {
        seen[vert[d]] = comp[f];
        ++cverts[comp[f]];
      }
    }
    std::int32_t keep = 0;
    for (std::int32_t c = 1; c < ncomp; ++c)
      if (cverts[c] > cverts[keep] || (cverts[c] == cverts[keep] && cmin[c] < cmin[keep]))
        keep = c;
    for (std::int32_t f = 0; f < nfaces; ++f)
      if (f != outer_face && !reg.faces[f] && comp[f] != keep) reg.faces[f] = 1;
  }
  reg.n_faces = 0;
  for (std::int32_t f = 0; f < nfaces; ++f) reg.n_faces += reg.faces[f];
  reg.closed_vertices = region_closed_vertices(t, face, vert, nverts, reg.faces);
  reg.boundaries = region_boundaries(t, face, reg.faces);
  return reg;
}

// ---------------------------------------------------------------- peeling

PeelExploration::PeelExploration(Triangulation host) : host_(std::move(host)) {
  if (host_.kind == MapKind::Sphere) host_ = root_transform(host_);
  vert_ = vertex_labels(host_, &nverts_);
  face_ = face_labels(host_, &nfaces_);
  face_first_ = face_first_darts(host_, face_, nfaces_);
  outer_face_ = face_[host_.outer];
  std::vector<std::int32_t> sources;
  {
    Dart d = host_.outer;
    do {
      sources.push_back(vert_[d]);
      d = host_.fnext[d];
    } while (d != host_.outer);
  }
  vdist_ = vertex_distances(host_, vert_, nverts_, sources);
  face_known_.assign(nfaces_, 0);
  face_known_[outer_face_] = 1;
  vert_known_.assign(nverts_, 0);
  for (auto v : sources) {
    if (!vert_known_[v]) {
      vert_known_[v] = 1;
      ++V_;
    }
  }
  is_frontier_.assign(host_.n_darts(), 0);
  {
    Dart d = host_.outer;
    do {
      set_frontier_status(d);
      d = host_.fnext[d];
    } while (d != host_.outer);
  }
  P_ = static_cast<std::int64_t>(frontier_.size());
  face_stamp_.assign(nfaces_, -1);
  vert_stamp_.assign(nverts_, -1);
}

std::int64_t PeelExploration::edge_distance(Dart d) const {
  return std::min(vdist_[vert_[d]], vdist_[vert_[host_.twin[d]]]);
}

Dart PeelExploration::layers_pick() const {
  if (frontier_.empty()) throw std::logic_error("layers_pick: exploration done");
  return frontier_.begin()->second;
}

std::vector<Dart> PeelExploration::frontier_darts() const {
  std::vector<Dart> out;
  out.reserve(frontier_.size());
  for (const auto& [dist, d] : frontier_) out.push_back(d);
  return out;
}

void PeelExploration::set_frontier_status(Dart d) {
  for (Dart x : {d, host_.twin[d]}) {
    const bool want = !face_known_[face_[x]] && face_known_[face_[host_.twin[x]]];
    if (want && !is_frontier_[x]) {
      is_frontier_[x] = 1;
      frontier_.insert({edge_distance(x), x});
    } else if (!want && is_frontier_[x]) {
      is_frontier_[x] = 0;
      frontier_.erase({edge_distance(x), x});
    }
  }
}

void PeelExploration::step(Dart e_h) {
  if (!is_frontier_[e_h]) throw std::invalid_argument("peel step: not a frontier dart");
  const std::int32_t f = face_[e_h];
  const Dart d2 = host_.fnext[e_h], d3 = host_.fnext[d2];
  if (host_.fnext[d3] != e_h) throw std::logic_error("peel step: unknown face not a triangle");
  const std::int32_t w = vert_[d3];

  std::vector<std::int32_t> absorbed;
  bool split = false;
  if (vert_known_[w]) {
    split = true;
    struct Side {
      std::vector<std::int32_t> faces;
      std::size_t head = 0;
      std::int64_t verts = 0;
      std::int32_t vstamp = 0;
      bool active = false;
      bool exhausted() const { return head == faces.size(); }
    };
    Side A, B;
    const auto seed = [&](Side& s, Dart chord) {
      const std::int32_t g = face_[host_.twin[chord]];
      if (face_known_[g] || g == f) return;
      s.active = true;
      s.vstamp = ++stamp_;
      s.faces.push_back(g);
      face_stamp_[g] = s.vstamp;
    };
    seed(A, d2);
    seed(B, d3);
    if (A.active && B.active && A.faces[0] == B.faces[0])
      throw std::logic_error("peel step: split sides met");
    const bool both = A.active && B.active;  // one-sided splits absorb only f
    const auto expand = [&](Side& s) {
      const std::int32_t g = s.faces[s.head++];
      Dart x = face_first_[g];
      do {
        if (vert_stamp_[vert_[x]] != s.vstamp) {
          vert_stamp_[vert_[x]] = s.vstamp;
          ++s.verts;
        }
        const std::int32_t gg = face_[host_.twin[x]];
        if (!face_known_[gg] && gg != f && face_stamp_[gg] != A.vstamp &&
            face_stamp_[gg] != B.vstamp) {
          face_stamp_[gg] = s.vstamp;
          s.faces.push_back(gg);
        }
        x = host_.fnext[x];
      } while (x != face_first_[g]);
    };
    while (both) {
      const bool a_can = !A.exhausted();
      const bool b_can = !B.exhausted();
      if (!a_can && !b_can) break;
      if (a_can && (!b_can || A.verts <= B.verts))
        expand(A);
      else
        expand(B);
      if (A.exhausted() && B.verts > A.verts) break;
      if (B.exhausted() && A.verts > B.verts) break;
    }
    const Side* absorb = nullptr;
    if (both) {
      if (A.exhausted() && B.verts > A.verts) {
        absorb = &A;
      } else if (B.exhausted() && A.verts > B.verts) {
        absorb = &B;
      } else {
        // both exhausted with equal vertex counts: keep the side whose
        // minimal dart label is smallest, absorb the other
        Dart mina = host_.n_darts(), minb = host_.n_darts();
        for (auto g : A.faces) mina = std::min(mina, face_first_[g]);
        for (auto g : B.faces) minb = std::min(minb, face_first_[g]);
        absorb = mina < minb ? &B : &A;
      }
    }
    // one-sided or empty splits absorb only f (the unknown rest is the
    // single largest component, or nothing)
    if (absorb) absorbed = absorb->faces;
  }

  absorbed.push_back(f);
  for (auto g : absorbed) {
    if (face_known_[g]) throw std::logic_error("peel step: absorbing a known face");
    face_known_[g] = 1;
  }
  for (auto g : absorbed) {
    Dart x = face_first_[g];
    do {
      if (!vert_known_[vert_[x]]) {
        vert_known_[vert_[x]] = 1;
        ++V_;
      }
      x = host_.fnext[x];
    } while (x != face_first_[g]);
  }
  for (auto g : absorbed) {
    Dart x = face_first_[g];
    do {
      set_frontier_status(x);
      x = host_.fnext[x];
    } while (x != face_first_[g]);
  }
  P_ = static_cast<std::int64_t>(frontier_.size());
  traj_.push_back({P_, V_, split});
}

PeelingAlgorithm layers_algorithm() {
  return [](const PeelExploration& e) { return e.layers_pick(); };
}

std::vector<PeelRecord> peel_explore(const Triangulation& t, const PeelingAlgorithm& algo,
                                     std::int64_t max_steps) {
  PeelExploration e(t);
  for (std::int64_t j = 0; j < max_steps && !e.done(); ++j) e.step(algo(e));
  return e.trajectory();
}

std::optional<std::int64_t> first_perimeter_hit(const Triangulation& t,
                                                const PeelingAlgorithm& algo,
                                                std::int64_t target) {
  PeelExploration e(t);
  if (e.perimeter() == target) return 0;
  while (!e.done()) {
    e.step(algo(e));
    if (e.perimeter() == target) return e.steps();
  }
  return std::nullopt;
}

// ------------------------------------------------------- frontier tracker

FrontierTracker::FrontierTracker(const Triangulation& glued, Dart loop_rep) : t_(glued) {
  if (t_.kind != MapKind::Sphere) throw std::invalid_argument("frontier: sphere expected");
  reps_ = edge_reps(t_);
  std::int32_t nverts = 0;
  vert_ = vertex_labels(t_, &nverts);
  if (vert_[loop_rep] != vert_[t_.twin[loop_rep]])
    throw std::invalid_argument("frontier: marked edge is not a loop");
  // faces on the root side of the loop form T1
  std::int32_t nfaces = 0;
  const auto face = face_labels(t_, &nfaces);
  const auto first = face_first_darts(t_, face, nfaces);
  std::vector<char> in1(nfaces, 0);
  {
    std::vector<std::int32_t> stack{face[t_.root]};
    in1[face[t_.root]] = 1;
    while (!stack.empty()) {
      const auto f = stack.back();
      stack.pop_back();
      Dart x = first[f];
      do {
        if (x != loop_rep && t_.twin[x] != loop_rep) {
          const auto g = face[t_.twin[x]];
          if (!in1[g]) {
            in1[g] = 1;
            stack.push_back(g);
          }
        }
        x = t_.fnext[x];
      } while (x != first[f]);
    }
  }
  side_.resize(t_.n_darts());
  for (Dart d = 0; d < t_.n_darts(); ++d) side_[d] = in1[face[d]] ? 1 : 2;
  if (side_[t_.root] != 1) throw std::logic_error("frontier: root not in side 1");
  isfront_.assign(t_.n_darts(), 0);
  front_cnt_.assign(nverts, 0);
  P_ = 0;
  for (Dart d : reps_) {
    if (side_[d] != side_[t_.twin[d]]) {
      isfront_[d] = isfront_[t_.twin[d]] = 1;
      ++P_;
      ++front_cnt_[vert_[d]];
      ++front_cnt_[vert_[t_.twin[d]]];
    }
  }
  if (P_ != 1) throw std::logic_error("frontier: glued start must have a length-1 frontier");
  inner2_ = 0;
  {
    std::vector<char> v2(nverts, 1);
    for (Dart d = 0; d < t_.n_darts(); ++d)
      if (side_[d] == 1 || isfront_[d]) v2[vert_[d]] = 0;
    for (std::int32_t v = 0; v < nverts; ++v) inner2_ += v2[v];
  }
  inner2_start_ = inner2_;
  dart_stamp_.assign(t_.n_darts(), -1);
  vert_stamp_.assign(nverts, -1);
}

void FrontierTracker::flip_tracked(Dart a) {
  const Dart b = t_.twin[a];
  const Dart c = t_.fnext[a], d = t_.fnext[c];
  if (c == b || d == b) return;  // unflippable
  const Dart g = t_.fnext[b], h = t_.fnext[g];
  flip_in_place(t_, a);
  // the repurposed diagonal darts change origin: a to head(c), b to head(g)
  vert_[a] = vert_[d];
  vert_[b] = vert_[h];
}

void FrontierTracker::update_edge_status(Dart d) {
  const Dart e = t_.twin[d];
  const bool want = side_[d] != side_[e];
  if (want && !isfront_[d]) {
    isfront_[d] = isfront_[e] = 1;
    ++P_;
    ++front_cnt_[vert_[d]];
    ++front_cnt_[vert_[e]];
  } else if (!want && isfront_[d]) {
    isfront_[d] = isfront_[e] = 0;
    --P_;
    --front_cnt_[vert_[d]];
    --front_cnt_[vert_[e]];
  }
}

void FrontierTracker::reveal_frontier_edge(Dart e) {
  const Dart e2 = side_[e] == 2 ? e : t_.twin[e];
  const Dart d2 = t_.fnext[e2], d3 = t_.fnext[d2];
  if (t_.fnext[d3] != e2) throw std::logic_error("frontier: unknown face not a triangle");
  const std::int32_t w = vert_[d3];

  std::vector<Dart> absorbed_darts;  // beyond f_k's own darts
  if (front_cnt_[w] > 0) {
    // apex on the frontier: the unknown side splits behind the chords
    struct Side {
      std::vector<Dart> darts;  // all darts of the component's faces
      std::size_t head = 0;     // next face-start index in starts
      std::vector<Dart> starts;
      std::int64_t verts = 0;
      std::int64_t interior = 0;
      std::int32_t vstamp = 0;
      bool active = false;
      bool exhausted() const { return head == starts.size(); }
    };
    Side A, B;
    const auto seed = [&](Side& s, Dart chord) {
      const Dart y = t_.twin[chord];
      if (side_[y] != 2) return;
      if (y == d2 || y == d3 || y == e2) return;  // chord doubled inside f_k
      s.active = true;
      s.vstamp = ++stamp_;
      s.starts.push_back(y);
      dart_stamp_[y] = s.vstamp;
    };
    seed(A, d2);
    seed(B, d3);
    const bool both = A.active && B.active;  // one-sided splits absorb only f_k
    const auto expand = [&](Side& s, const Side& other) {
      const Dart start = s.starts[s.head++];
      Dart x = start;
      do {
        dart_stamp_[x] = s.vstamp;  // whole orbit marked: each face walked once
        s.darts.push_back(x);
        if (vert_stamp_[vert_[x]] != s.vstamp) {
          vert_stamp_[vert_[x]] = s.vstamp;
          ++s.verts;
          if (front_cnt_[vert_[x]] == 0) ++s.interior;
        }
        const Dart y = t_.twin[x];
        if (side_[y] == 2 && y != e2 && y != d2 && y != d3) {
          if (other.active && dart_stamp_[y] == other.vstamp)
            throw std::logic_error("frontier: split sides met");
          if (dart_stamp_[y] != s.vstamp) {
            dart_stamp_[y] = s.vstamp;
            s.starts.push_back(y);
          }
        }
        x = t_.fnext[x];
      } while (x != start);
    };
    while (both) {
      const bool a_can = !A.exhausted();
      const bool b_can = !B.exhausted();
      if (!a_can && !b_can) break;
      if (a_can && (!b_can || A.verts <= B.verts))
        expand(A, B);
      else
        expand(B, A);
      if (A.exhausted() && B.verts > A.verts) break;
      if (B.exhausted() && A.verts > B.verts) break;
    }
    const Side* absorb = nullptr;
    if (both) {
      if (A.exhausted() && B.verts > A.verts) {
        absorb = &A;
      } else if (B.exhausted() && A.verts > B.verts) {
        absorb = &B;
      } else {
        Dart mina = t_.n_darts(), minb = t_.n_darts();
        for (auto x : A.darts) mina = std::min(mina, x);
        for (auto x : B.darts) minb = std::min(minb, x);
        absorb = mina < minb ? &B : &A;
      }
    }
    if (absorb) {
      absorbed_darts = absorb->darts;
      inner2_ -= absorb->interior;
    }
  } else {
    // apex strictly inside T2: it joins the frontier
    inner2_ -= 1;
  }

  absorbed_darts.push_back(e2);
  absorbed_darts.push_back(d2);
  absorbed_darts.push_back(d3);
  for (Dart x : absorbed_darts) side_[x] = 1;
  for (Dart x : absorbed_darts) update_edge_status(x);
}

FrontierRecord FrontierTracker::step(Rng& rng) {
  const Dart e = reps_[rng.below(reps_.size())];
  FrontierRecord rec;
  rec.k = k_;
  if (isfront_[e]) {
    rec.event = 2;
    reveal_frontier_edge(e);
    flip_tracked(e);
    taus_.push_back(k_);
  } else if (side_[e] == 1) {
    rec.event = 0;
    flip_tracked(e);
  } else {
    rec.event = 1;
    flip_tracked(e);
  }
  k_ += 1;
  rec.Ptilde = P_;
  rec.Vtilde = Vtilde();
  if (rec.event == 2)
    tau_records_.push_back({static_cast<std::int64_t>(tau_records_.size()) + 1, rec.k, P_, rec.Vtilde});
  return rec;
}

Triangulation FrontierTracker::extract_unknown() const {
  if (P_ < 1) throw std::logic_error("extract_unknown: unknown side is empty");
  const Dart nd = t_.n_darts();
  std::vector<Dart> remap(nd, -1);
  Dart next = 0;
  for (Dart d = 0; d < nd; ++d)
    if (side_[d] == 2) remap[d] = next++;
  std::vector<Dart> outer_of(nd, -1);  // per T2-side frontier dart
  Triangulation r;
  const Dart total = next + static_cast<Dart>(P_);
  r.twin.assign(total, -1);
  r.fnext.assign(total, -1);
  Dart next_outer = next;
  for (Dart d = 0; d < nd; ++d)
    if (side_[d] == 2 && isfront_[d]) outer_of[d] = next_outer++;
  Dart root2 = -1;
  for (Dart d = 0; d < nd; ++d) {
    if (side_[d] != 2) continue;
    r.fnext[remap[d]] = remap[t_.fnext[d]];
    if (isfront_[d]) {
      r.twin[remap[d]] = outer_of[d];
      r.twin[outer_of[d]] = remap[d];
      if (root2 < 0) root2 = d;
    } else {
      r.twin[remap[d]] = remap[t_.twin[d]];
    }
  }
  // outer face orbit: walk the hole inside T1 from each frontier edge
  for (Dart d = 0; d < nd; ++d) {
    if (!(side_[d] == 2 && isfront_[d])) continue;
    const Dart x = t_.twin[d];  // T1-side dart
    Dart z = t_.fnext[x];
    while (!isfront_[z]) z = t_.fnext[t_.twin[z]];
    // z is the next frontier dart on the T1 side
    r.fnext[outer_of[d]] = outer_of[t_.twin[z]];
  }
  r.root = remap[root2];
  r.kind = MapKind::Boundary;
  r.perimeter = static_cast<std::int32_t>(P_);
  r.outer = r.twin[r.root];
  return r;
}

void FrontierTracker::check_invariants() const {
  // face orbits carry a single side label
  for (Dart d = 0; d < t_.n_darts(); ++d) {
    if (side_[d] != side_[t_.fnext[d]]) throw std::logic_error("audit: face with mixed sides");
    const bool want = side_[d] != side_[t_.twin[d]];
    if (want != static_cast<bool>(isfront_[d])) throw std::logic_error("audit: frontier flag wrong");
  }
  std::int64_t p = 0;
  for (Dart d : reps_)
    if (isfront_[d]) ++p;
  if (p != P_) throw std::logic_error("audit: P wrong");
  // origin labels consistent: vert_ constant on vnext orbits
  for (Dart d = 0; d < t_.n_darts(); ++d)
    if (vert_[d] != vert_[t_.fnext[t_.twin[d]]]) throw std::logic_error("audit: vertex labels");
  std::int64_t i2 = 0;
  {
    std::vector<char> v2(vert_.size() ? 1 + *std::max_element(vert_.begin(), vert_.end()) : 0, 1);
    for (Dart d = 0; d < t_.n_darts(); ++d)
      if (side_[d] == 1 || isfront_[d]) v2[vert_[d]] = 0;
    std::vector<char> present(v2.size(), 0);
    for (Dart d = 0; d < t_.n_darts(); ++d) present[vert_[d]] = 1;
    for (std::size_t v = 0; v < v2.size(); ++v) i2 += present[v] && v2[v];
  }
  if (i2 != inner2_) throw std::logic_error("audit: inner2 wrong");
  if (P_ > 0) {
    const auto sub = extract_unknown();
    const auto v = validate(sub);
    if (!v.ok) throw std::logic_error("audit: extracted unknown invalid: " + v.violation);
  }
  const auto v = validate(t_);
  if (!v.ok) throw std::logic_error("audit: composite invalid: " + v.violation);
}

}  // namespace triflip
