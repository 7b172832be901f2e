#pragma once
// Rooted combinatorial maps of type-I triangulations (loops and multiple
// edges allowed), encoded by darts: each edge contributes two oriented
// darts, paired by the fixed-point-free involution `twin`; `fnext` walks
// the darts of a face in the orientation of the embedding (face on the
// left of each dart). Vertices are the orbits of vnext(d) = fnext(twin(d)).
//
// Two kinds of maps are supported:
//   Sphere   - every fnext orbit is a triangle,
//   Boundary - one distinguished fnext orbit (the outer face) of size p
//              bounding a simple cycle of p vertices; all other orbits
//              are triangles. The outer face lies to the right of the
//              root dart.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace triflip {

using Dart = std::int32_t;

enum class MapKind : std::uint8_t { Sphere, Boundary };

struct Triangulation {
  std::vector<Dart> twin;
  std::vector<Dart> fnext;
  Dart root = 0;
  MapKind kind = MapKind::Sphere;
  std::int32_t perimeter = 0;  // Boundary only
  Dart outer = -1;             // a dart of the outer face orbit, Boundary only

  Dart n_darts() const { return static_cast<Dart>(twin.size()); }
  std::int64_t n_edges() const { return static_cast<std::int64_t>(twin.size()) / 2; }
  Dart vnext(Dart d) const { return fnext[twin[d]]; }
};

struct Validation {
  bool ok = true;
  std::string violation;
};

// Checks every structural invariant; total, never throws.
Validation validate(const Triangulation& t);

// Labels the orbits of fnext; returns one face id per dart, face count in *count.
std::vector<std::int32_t> face_labels(const Triangulation& t, std::int32_t* count = nullptr);
// Labels the orbits of vnext; label of a dart is the id of its origin vertex.
std::vector<std::int32_t> vertex_labels(const Triangulation& t, std::int32_t* count = nullptr);

std::int64_t vertex_count(const Triangulation& t);
std::int64_t face_count(const Triangulation& t);

// An edge is the unordered dart pair {d, twin(d)}; its representative is the
// smaller dart id. The list is sorted, so edge index k <-> reps[k].
std::vector<Dart> edge_reps(const Triangulation& t);

// True when the two darts of the edge lie in distinct face orbits.
bool flippable(const Triangulation& t, Dart d);

// Flips the edge of dart d in place. Unflippable edges leave the map
// unchanged. Dart ids are stable: the natural edge bijection is the
// identity on ids, the flipped edge's darts are reused for the new
// diagonal, and the root keeps its id (also when the root edge itself is
// flipped: the repurposed dart's origin is the corner of f1 that follows
// the old root's origin).
void flip_in_place(Triangulation& t, Dart d);
Triangulation flip(const Triangulation& t, Dart d);

// Sphere with n vertices <-> boundary triangulation with perimeter 1 and
// n-1 inner vertices: duplicate the root edge, add a loop in the 2-gon in
// between, re-root at the loop. The inverse requires at least 2 inner
// vertices. forward(inverse(t)) and inverse(forward(t)) are exact
// identities on the dart tables.
Triangulation root_transform(const Triangulation& sphere);
Triangulation root_transform_inverse(const Triangulation& boundary1);

// Glues two boundary triangulations of equal perimeter p along their
// boundary cycles (orientation-reversing, rotated by `offset`), producing
// a sphere rooted at t1's root. The image of the common boundary is a
// length-p cycle separating the two interiors.
Triangulation glue(const Triangulation& t1, const Triangulation& t2, std::int32_t offset);

// Canonical form under root-preserving isomorphism: breadth-first
// relabeling from the root, emitting (twin, fnext) images in label order.
// Equal codes iff the rooted maps are isomorphic.
using Code = std::vector<std::int32_t>;
Code canonical_code(const Triangulation& t);

// TRI1 text format:
//   TRI1 <ndarts> <root> <kind> [<perimeter> <outer-face-dart>]
//   <dart> <twin> <fnext>        (ndarts lines)
std::string write_map(const Triangulation& t);
Triangulation read_map(const std::string& text);  // throws std::runtime_error

}  // namespace triflip
