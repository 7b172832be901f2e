#include "triflip/map.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace triflip {

namespace {

// Generic orbit labeling of a permutation given as a table.
std::vector<std::int32_t> orbit_labels(const std::vector<Dart>& perm, std::int32_t* count) {
  std::vector<std::int32_t> lab(perm.size(), -1);
  std::int32_t c = 0;
  for (Dart d = 0; d < static_cast<Dart>(perm.size()); ++d) {
    if (lab[d] >= 0) continue;
    Dart e = d;
    do {
      lab[e] = c;
      e = perm[e];
    } while (e != d);
    ++c;
  }
  if (count) *count = c;
  return lab;
}

}  // namespace

std::vector<std::int32_t> face_labels(const Triangulation& t, std::int32_t* count) {
  return orbit_labels(t.fnext, count);
}

std::vector<std::int32_t> vertex_labels(const Triangulation& t, std::int32_t* count) {
  std::vector<Dart> vn(t.twin.size());
  for (Dart d = 0; d < t.n_darts(); ++d) vn[d] = t.vnext(d);
  return orbit_labels(vn, count);
}

std::int64_t vertex_count(const Triangulation& t) {
  std::int32_t c = 0;
  vertex_labels(t, &c);
  return c;
}

std::int64_t face_count(const Triangulation& t) {
  std::int32_t c = 0;
  face_labels(t, &c);
  return c;
}

std::vector<Dart> edge_reps(const Triangulation& t) {
  std::vector<Dart> reps;
  reps.reserve(t.twin.size() / 2);
  for (Dart d = 0; d < t.n_darts(); ++d)
    if (d < t.twin[d]) reps.push_back(d);
  return reps;
}

Validation validate(const Triangulation& t) {
  const auto bad = [](std::string s) { return Validation{false, std::move(s)}; };
  const Dart nd = t.n_darts();
  if (nd == 0 || nd % 2 != 0) return bad("dart count not a positive even number");
  if (t.fnext.size() != t.twin.size()) return bad("twin/fnext table size mismatch");
  for (Dart d = 0; d < nd; ++d) {
    if (t.twin[d] < 0 || t.twin[d] >= nd) return bad("twin entry out of range");
    if (t.fnext[d] < 0 || t.fnext[d] >= nd) return bad("fnext entry out of range");
  }
  for (Dart d = 0; d < nd; ++d) {
    if (t.twin[d] == d) return bad("twin not fixed-point-free");
    if (t.twin[t.twin[d]] != d) return bad("twin not an involution");
  }
  {
    std::vector<char> hit(nd, 0);
    for (Dart d = 0; d < nd; ++d) {
      if (hit[t.fnext[d]]) return bad("fnext not a permutation");
      hit[t.fnext[d]] = 1;
    }
  }
  if (t.root < 0 || t.root >= nd) return bad("root out of range");

  std::int32_t nfaces = 0;
  const auto face = orbit_labels(t.fnext, &nfaces);
  std::vector<std::int32_t> face_size(nfaces, 0);
  for (Dart d = 0; d < nd; ++d) ++face_size[face[d]];

  std::int32_t outer_face = -1;
  if (t.kind == MapKind::Boundary) {
    if (t.perimeter < 1) return bad("boundary perimeter must be >= 1");
    if (t.outer < 0 || t.outer >= nd) return bad("outer dart out of range");
    outer_face = face[t.outer];
    if (face_size[outer_face] != t.perimeter) return bad("outer face size != perimeter");
    if (face[t.twin[t.root]] != outer_face) return bad("outer face not on the right of the root");
  }
  for (std::int32_t f = 0; f < nfaces; ++f) {
    if (f == outer_face) continue;
    if (face_size[f] != 3) return bad("non-triangular face");
  }

  // connectivity over <twin, fnext>
  {
    std::vector<char> seen(nd, 0);
    std::vector<Dart> stack{0};
    seen[0] = 1;
    std::int64_t cnt = 0;
    while (!stack.empty()) {
      Dart d = stack.back();
      stack.pop_back();
      ++cnt;
      for (Dart e : {t.twin[d], t.fnext[d]}) {
        if (!seen[e]) {
          seen[e] = 1;
          stack.push_back(e);
        }
      }
    }
    if (cnt != nd) return bad("map not connected");
  }

  std::int32_t nverts = 0;
  const auto vert = vertex_labels(t, &nverts);
  const std::int64_t euler =
      static_cast<std::int64_t>(nverts) - nd / 2 + nfaces;
  if (euler != 2) return bad("Euler characteristic != 2");

  if (t.kind == MapKind::Boundary) {
    // outer boundary must visit pairwise distinct vertices
    std::vector<std::int32_t> seen_v;
    Dart d = t.outer;
    do {
      seen_v.push_back(vert[d]);
      d = t.fnext[d];
    } while (d != t.outer);
    std::sort(seen_v.begin(), seen_v.end());
    if (std::adjacent_find(seen_v.begin(), seen_v.end()) != seen_v.end())
      return bad("outer boundary not a simple vertex cycle");
  }
  return {};
}

bool flippable(const Triangulation& t, Dart d) {
  const Dart b = t.twin[d];
  return t.fnext[d] != b && t.fnext[t.fnext[d]] != b;
}

void flip_in_place(Triangulation& t, Dart a) {
  if (a < 0 || a >= t.n_darts()) throw std::invalid_argument("flip: dart out of range");
  const Dart b = t.twin[a];
  const Dart c = t.fnext[a], d = t.fnext[c];
  if (c == b || d == b) return;  // both sides on one face: flip(t,e) = t
  const Dart g = t.fnext[b], h = t.fnext[g];

  // Flipping the root edge must reroot on the new diagonal. Flipping the
  // same edge twice relabels the map by the transposition of the diagonal
  // darts, so no local orientation rule survives a double flip. Instead
  // the two orientations of the old root edge are matched to the two of
  // the diagonal by the rank of their canonical codes; the matching is
  // rank-preserving in both directions, which makes root-edge flips
  // involutive and the chain kernel exactly symmetric.
  const bool root_on_edge = t.root == a || t.root == b;
  int rank = 0;
  if (root_on_edge) {
    const Dart o = t.root;
    const Code co = canonical_code(t);
    t.root = t.twin[o];
    const Code cr = canonical_code(t);
    t.root = o;
    rank = co <= cr ? 0 : 1;
  }

  // quad boundary c,d,g,h; old diagonal {a,b} becomes the other diagonal
  t.fnext[d] = g;
  t.fnext[g] = b;
  t.fnext[b] = d;
  t.fnext[h] = c;
  t.fnext[c] = a;
  t.fnext[a] = h;

  if (root_on_edge) {
    t.root = a;
    const Code ca = canonical_code(t);
    t.root = b;
    const Code cb = canonical_code(t);
    const bool a_first = ca <= cb;
    t.root = (rank == 0) == a_first ? a : b;
  }
}

Triangulation flip(const Triangulation& t, Dart d) {
  Triangulation r = t;
  flip_in_place(r, d);
  return r;
}

Triangulation root_transform(const Triangulation& t) {
  if (t.kind != MapKind::Sphere) throw std::invalid_argument("root_transform: sphere expected");
  Triangulation r = t;
  const Dart a = t.root, b = t.twin[a];
  const Dart nd = t.n_darts();
  const Dart p = nd, q = nd + 1, l = nd + 2, m = nd + 3;
  r.twin.resize(nd + 4);
  r.fnext.resize(nd + 4);
  r.twin[a] = p;
  r.twin[p] = a;
  r.twin[b] = q;
  r.twin[q] = b;
  r.twin[l] = m;
  r.twin[m] = l;
  // triangle (p, l, q) between the duplicated edges, 1-gon hole inside the loop
  r.fnext[p] = l;
  r.fnext[l] = q;
  r.fnext[q] = p;
  r.fnext[m] = m;
  r.root = l;
  r.kind = MapKind::Boundary;
  r.perimeter = 1;
  r.outer = m;
  return r;
}

Triangulation root_transform_inverse(const Triangulation& t) {
  if (t.kind != MapKind::Boundary || t.perimeter != 1)
    throw std::invalid_argument("root_transform_inverse: perimeter-1 boundary map expected");
  const Dart l = t.root;
  const Dart m = t.twin[l];
  if (t.fnext[m] != m) throw std::invalid_argument("root_transform_inverse: root is not the boundary loop");
  const Dart s1 = t.fnext[l], s2 = t.fnext[s1];
  if (t.fnext[s2] != l) throw std::invalid_argument("root_transform_inverse: face at root not a triangle");
  const Dart out1 = t.twin[s1], out2 = t.twin[s2];
  if (out1 == s2)  // the T_{1,1} map: no sphere preimage
    throw std::invalid_argument("root_transform_inverse: needs at least 2 inner vertices");

  const Dart nd = t.n_darts();
  std::vector<Dart> remap(nd, -1);
  Dart next = 0;
  for (Dart d = 0; d < nd; ++d) {
    if (d == l || d == m || d == s1 || d == s2) continue;
    remap[d] = next++;
  }
  Triangulation r;
  r.twin.resize(next);
  r.fnext.resize(next);
  for (Dart d = 0; d < nd; ++d) {
    if (remap[d] < 0) continue;
    Dart tw = t.twin[d];
    Dart fn = t.fnext[d];
    if (d == out1) tw = out2;
    if (d == out2) tw = out1;
    r.twin[remap[d]] = remap[tw];
    r.fnext[remap[d]] = remap[fn];
  }
  r.root = remap[out2];
  r.kind = MapKind::Sphere;
  return r;
}

Triangulation glue(const Triangulation& t1, const Triangulation& t2, std::int32_t offset) {
  if (t1.kind != MapKind::Boundary || t2.kind != MapKind::Boundary)
    throw std::invalid_argument("glue: boundary maps expected");
  if (t1.perimeter != t2.perimeter) throw std::invalid_argument("glue: unequal perimeters");
  const std::int32_t p = t1.perimeter;
  if (offset < 0 || offset >= p) throw std::invalid_argument("glue: offset out of range");

  const auto boundary_of = [](const Triangulation& t) {
    std::vector<Dart> outer, inner;
    Dart d = t.outer;
    do {
      outer.push_back(d);
      inner.push_back(t.twin[d]);
      d = t.fnext[d];
    } while (d != t.outer);
    return std::pair{outer, inner};
  };
  const auto [o1, u] = boundary_of(t1);
  const auto [o2, v] = boundary_of(t2);

  const Dart n1 = t1.n_darts(), n2 = t2.n_darts();
  std::vector<Dart> map1(n1, -1), map2(n2, -1);
  std::vector<char> dead1(n1, 0), dead2(n2, 0);
  for (Dart d : o1) dead1[d] = 1;
  for (Dart d : o2) dead2[d] = 1;
  Dart next = 0;
  for (Dart d = 0; d < n1; ++d)
    if (!dead1[d]) map1[d] = next++;
  for (Dart d = 0; d < n2; ++d)
    if (!dead2[d]) map2[d] = next++;

  Triangulation r;
  r.twin.assign(next, -1);
  r.fnext.assign(next, -1);
  for (Dart d = 0; d < n1; ++d) {
    if (dead1[d]) continue;
    if (!dead1[t1.twin[d]]) r.twin[map1[d]] = map1[t1.twin[d]];
    r.fnext[map1[d]] = map1[t1.fnext[d]];
  }
  for (Dart d = 0; d < n2; ++d) {
    if (dead2[d]) continue;
    if (!dead2[t2.twin[d]]) r.twin[map2[d]] = map2[t2.twin[d]];
    r.fnext[map2[d]] = map2[t2.fnext[d]];
  }
  // orientation-reversing boundary identification
  for (std::int32_t i = 0; i < p; ++i) {
    const std::int32_t j = ((offset - i) % p + p) % p;
    r.twin[map1[u[i]]] = map2[v[j]];
    r.twin[map2[v[j]]] = map1[u[i]];
  }
  r.root = map1[t1.root];
  r.kind = MapKind::Sphere;
  return r;
}

Code canonical_code(const Triangulation& t) {
  const Dart nd = t.n_darts();
  std::vector<std::int32_t> label(nd, -1);
  std::vector<Dart> by_label;
  by_label.reserve(nd);
  label[t.root] = 0;
  by_label.push_back(t.root);
  for (std::size_t i = 0; i < by_label.size(); ++i) {
    const Dart d = by_label[i];
    for (Dart e : {t.twin[d], t.fnext[d]}) {
      if (label[e] < 0) {
        label[e] = static_cast<std::int32_t>(by_label.size());
        by_label.push_back(e);
      }
    }
  }
  if (static_cast<Dart>(by_label.size()) != nd)
    throw std::invalid_argument("canonical_code: map not connected");
  Code code;
  code.reserve(3 + 2 * nd);
  code.push_back(t.kind == MapKind::Sphere ? 0 : 1);
  code.push_back(nd);
  code.push_back(t.kind == MapKind::Boundary ? t.perimeter : 0);
  for (Dart i = 0; i < nd; ++i) {
    const Dart d = by_label[i];
    code.push_back(label[t.twin[d]]);
    code.push_back(label[t.fnext[d]]);
  }
  return code;
}

std::string write_map(const Triangulation& t) {
  std::ostringstream os;
  os << "TRI1 " << t.n_darts() << ' ' << t.root << ' '
     << (t.kind == MapKind::Sphere ? 'S' : 'B');
  if (t.kind == MapKind::Boundary) os << ' ' << t.perimeter << ' ' << t.outer;
  os << '\n';
  for (Dart d = 0; d < t.n_darts(); ++d)
    os << d << ' ' << t.twin[d] << ' ' << t.fnext[d] << '\n';
  return os.str();
}

Triangulation read_map(const std::string& text) {
  std::istringstream is(text);
  std::string magic;
  if (!(is >> magic) || magic != "TRI1") throw std::runtime_error("malformed map file: bad magic");
  std::int64_t nd = 0;
  std::int64_t root = 0;
  std::string kind;
  if (!(is >> nd >> root >> kind)) throw std::runtime_error("malformed map file: bad header");
  if (nd <= 0 || nd % 2 != 0) throw std::runtime_error("malformed map file: bad dart count");
  Triangulation t;
  t.twin.assign(nd, -1);
  t.fnext.assign(nd, -1);
  t.root = static_cast<Dart>(root);
  if (kind == "S") {
    t.kind = MapKind::Sphere;
  } else if (kind == "B") {
    t.kind = MapKind::Boundary;
    std::int64_t p = 0, o = 0;
    if (!(is >> p >> o)) throw std::runtime_error("malformed map file: bad boundary header");
    t.perimeter = static_cast<std::int32_t>(p);
    t.outer = static_cast<Dart>(o);
  } else {
    throw std::runtime_error("malformed map file: unknown kind");
  }
  for (std::int64_t i = 0; i < nd; ++i) {
    std::int64_t d = 0, tw = 0, fn = 0;
    if (!(is >> d >> tw >> fn)) throw std::runtime_error("malformed map file: truncated dart table");
    if (d != i) throw std::runtime_error("malformed map file: dart ids must be dense and ordered");
    if (tw < 0 || tw >= nd || fn < 0 || fn >= nd)
      throw std::runtime_error("malformed map file: dart entry out of range");
    t.twin[i] = static_cast<Dart>(tw);
    t.fnext[i] = static_cast<Dart>(fn);
  }
  const Validation v = validate(t);
  if (!v.ok) throw std::runtime_error("invalid map: " + v.violation);
  return t;
}

}  // namespace triflip
