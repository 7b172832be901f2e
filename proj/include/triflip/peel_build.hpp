#pragma once
// Assembly of boundary triangulations by reversing peel steps.
//
// Peeling the root edge of a map in T_{n,p} reveals the inner triangle
// behind it. Either its apex is a fresh inner vertex (the rest is a map
// in T_{n-1,p+1}), or the apex lies on the boundary, splitting the rest
// into two independent maps T_{n1,a+1} x T_{n2,b+1} with a+b = p-1 and
// n1+n2 = n. Reversed, these are the two constructors below; the
// recursion bottoms out at the glued 2-gon, the single-edge map that is
// the unique member of T_{0,2}.
//
// A PeelBuild keeps twin/fnext tables with possibly dead slots (freed
// outer darts), the inverse of fnext for O(1) hole navigation, and the
// root, whose twin is always a dart of the hole orbit.

#include <cstdint>
#include <vector>

#include "triflip/map.hpp"

namespace triflip {

struct PeelBuild {
  std::vector<Dart> twin, fnext, finv;
  std::vector<char> dead;
  Dart root = 0;
  std::int32_t perim = 0;
  std::int64_t inner = 0;

  static PeelBuild leaf02();

  // Re-wraps a finished boundary triangulation for further building.
  static PeelBuild from_triangulation(const Triangulation& t);

  // T_{n-1,p+1} -> T_{n,p}: cover the two hole edges at the root corner
  // with a triangle whose apex becomes an inner vertex; the triangle's
  // third side is the new root edge.
  void close_a();

  // T_{n1,p1} x T_{n2,p2} -> T_{n1+n2, p1+p2-1}: glue a triangle whose
  // sides are the new root edge, m1's root edge, and m2's root edge, the
  // latter two joined at a shared vertex.
  static PeelBuild close_b(PeelBuild&& m1, PeelBuild&& m2);

  // Compacts dead slots into a dense boundary Triangulation.
  Triangulation finish() const;

 private:
  void setf(Dart d, Dart e) {
    fnext[d] = e;
    finv[e] = d;
  }
  Dart new_dart() {
    twin.push_back(-1);
    fnext.push_back(-1);
    finv.push_back(-1);
    dead.push_back(0);
    return static_cast<Dart>(twin.size()) - 1;
  }
};

}  // namespace triflip
