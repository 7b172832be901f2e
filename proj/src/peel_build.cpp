#include "triflip/peel_build.hpp"

#include <stdexcept>

namespace triflip {

PeelBuild PeelBuild::leaf02() {
  PeelBuild b;
  b.twin = {1, 0};
  b.fnext = {1, 0};
  b.finv = {1, 0};
  b.dead = {0, 0};
  b.root = 0;  // twin(root) = 1 is the hole dart
  b.perim = 2;
  b.inner = 0;
  return b;
}

PeelBuild PeelBuild::from_triangulation(const Triangulation& t) {
  if (t.kind != MapKind::Boundary)
    throw std::invalid_argument("from_triangulation: boundary map expected");
  PeelBuild b;
  b.twin = t.twin;
  b.fnext = t.fnext;
  b.finv.assign(t.fnext.size(), -1);
  for (Dart d = 0; d < t.n_darts(); ++d) b.finv[t.fnext[d]] = d;
  b.dead.assign(t.twin.size(), 0);
  b.root = t.root;
  b.perim = t.perimeter;
  b.inner = vertex_count(t) - t.perimeter;
  return b;
}

void PeelBuild::close_a() {
  const Dart x_in = twin[root];        // hole dart at the root edge
  const Dart y_in = fnext[x_in];       // next hole dart, shares the apex
  const Dart z = fnext[y_in];          // hole continues here (may wrap to x_in)
  const Dart w_prev = finv[x_in];
  const Dart r = new_dart();
  const Dart o = new_dart();
  twin[r] = o;
  twin[o] = r;
  // triangle (r, x_in, y_in); fnext[x_in] == y_in already
  setf(r, x_in);
  setf(y_in, r);
  if (z == x_in) {
    setf(o, o);  // the whole hole was those two edges: 1-gon remains
  } else {
    setf(o, z);
    setf(w_prev, o);
  }
  root = r;
  perim -= 1;
  inner += 1;
}

PeelBuild PeelBuild::close_b(PeelBuild&& m1, PeelBuild&& m2) {
  // append the smaller dart table onto the larger one
  const bool m1_big = m1.twin.size() >= m2.twin.size();
  const std::int32_t p1 = m1.perim, p2 = m2.perim;
  const std::int64_t inner_total = m1.inner + m2.inner;
  const Dart m1_root = m1.root, m2_root = m2.root;
  PeelBuild b = std::move(m1_big ? m1 : m2);
  PeelBuild& small = m1_big ? m2 : m1;
  const Dart off = static_cast<Dart>(b.twin.size());
  b.twin.reserve(b.twin.size() + small.twin.size() + 4);
  for (Dart d : small.twin) b.twin.push_back(d + off);
  for (Dart d : small.fnext) b.fnext.push_back(d + off);
  for (Dart d : small.finv) b.finv.push_back(d + off);
  b.dead.insert(b.dead.end(), small.dead.begin(), small.dead.end());

  const Dart r1 = m1_big ? m1_root : m1_root + off;
  const Dart ox = b.twin[r1];
  const Dart r2 = m1_big ? m2_root + off : m2_root;
  const Dart oy = b.twin[r2];
  // hole arcs that survive (everything but the consumed root edges)
  const Dart a1 = b.fnext[ox], aend = b.finv[ox];
  const bool arc1 = a1 != ox;
  const Dart b1 = b.fnext[oy], bend = b.finv[oy];
  const bool arc2 = b1 != oy;

  const Dart r = b.new_dart();
  const Dart o = b.new_dart();
  const Dart x_in = b.new_dart();
  const Dart y_in = b.new_dart();
  b.twin[r] = o;
  b.twin[o] = r;
  b.twin[x_in] = r1;
  b.twin[r1] = x_in;
  b.twin[y_in] = r2;
  b.twin[r2] = y_in;
  // triangle (r, x_in, y_in)
  b.setf(r, x_in);
  b.setf(x_in, y_in);
  b.setf(y_in, r);
  // hole: o, then m2's arc, then m1's arc
  Dart prev = o;
  if (arc2) {
    b.setf(prev, b1);
    prev = bend;
  }
  if (arc1) {
    b.setf(prev, a1);
    prev = aend;
  }
  b.setf(prev, o);
  b.dead[ox] = 1;
  b.dead[oy] = 1;

  b.root = r;
  b.perim = p1 + p2 - 1;
  b.inner = inner_total;
  return b;
}

Triangulation PeelBuild::finish() const {
  const Dart nd = static_cast<Dart>(twin.size());
  std::vector<Dart> remap(nd, -1);
  Dart next = 0;
  for (Dart d = 0; d < nd; ++d)
    if (!dead[d]) remap[d] = next++;
  Triangulation t;
  t.twin.resize(next);
  t.fnext.resize(next);
  for (Dart d = 0; d < nd; ++d) {
    if (dead[d]) continue;
    if (dead[twin[d]] || dead[fnext[d]])
      throw std::logic_error("peel build: live dart references dead dart");
    t.twin[remap[d]] = remap[twin[d]];
    t.fnext[remap[d]] = remap[fnext[d]];
  }
  t.root = remap[root];
  t.kind = MapKind::Boundary;
  t.perimeter = perim;
  t.outer = t.twin[t.root];
  return t;
}

}  // namespace triflip
