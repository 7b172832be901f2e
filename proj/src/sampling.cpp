#include "triflip/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "triflip/counting.hpp"
#include "triflip/peel_build.hpp"

namespace triflip {

namespace {

bool class_empty(std::int64_t n, std::int64_t p) {
  if (n < 0 || p < 1) return true;
  return n == 0 && p == 1;
}

BigInt big_below(const BigInt& m, Rng& rng) {
  const std::size_t bits = boost::multiprecision::msb(m) + 1;
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    BigInt x = 0;
    for (std::size_t i = 0; i < words; ++i) {
      x <<= 64;
      x |= rng.next();
    }
    x >>= words * 64 - bits;
    if (x < m) return x;
  }
}

// Draws a peel outcome at class (n,p) by exact big-integer inversion.
PeelOutcome draw_exact(std::int64_t n, std::int64_t p, Rng& rng) {
  CountTable& ct = global_count_table();
  BigInt u = big_below(ct.get(n, p), rng);
  if (n >= 1) {
    const BigInt& wa = ct.get(n - 1, p + 1);
    if (u < wa) return {true, 0, 0};
    u -= wa;
  }
  for (std::int64_t j = 0; 2 * j <= n; ++j) {
    const std::int64_t cands[2] = {j, n - j};
    const int ncand = j == n - j ? 1 : 2;
    for (std::int64_t a = 0; a < p; ++a) {
      const std::int64_t b = p - 1 - a;
      for (int ci = 0; ci < ncand; ++ci) {
        const std::int64_t n1 = cands[ci];
        const std::int64_t n2 = n - n1;
        if (class_empty(n1, a + 1) || class_empty(n2, b + 1)) continue;
        const BigInt w = ct.get(n1, a + 1) * ct.get(n2, b + 1);
        if (u < w) return {false, static_cast<std::int32_t>(a), n1};
        u -= w;
      }
    }
  }
  throw std::logic_error("draw_exact: inversion ran past total mass");
}

// Same draw with log-space floating weights (large classes).
PeelOutcome draw_float(std::int64_t n, std::int64_t p, Rng& rng) {
  const double lg_np = log_count_boundary(n, p);
  double u = rng.uniform01();
  PeelOutcome best{};
  double best_w = -1.0;
  if (n >= 1) {
    const double wa = std::exp(log_count_boundary(n - 1, p + 1) - lg_np);
    if (u < wa) return {true, 0, 0};
    u -= wa;
    best = {true, 0, 0};
    best_w = wa;
  }
  for (std::int64_t j = 0; 2 * j <= n; ++j) {
    const std::int64_t cands[2] = {j, n - j};
    const int ncand = j == n - j ? 1 : 2;
    for (std::int64_t a = 0; a < p; ++a) {
      const std::int64_t b = p - 1 - a;
      for (int ci = 0; ci < ncand; ++ci) {
        const std::int64_t n1 = cands[ci];
        const std::int64_t n2 = n - n1;
        if (class_empty(n1, a + 1) || class_empty(n2, b + 1)) continue;
        const double w = std::exp(log_count_boundary(n1, a + 1) +
                                  log_count_boundary(n2, b + 1) - lg_np);
        if (u < w) return {false, static_cast<std::int32_t>(a), n1};
        u -= w;
        if (w > best_w) {
          best_w = w;
          best = {false, static_cast<std::int32_t>(a), n1};
        }
      }
    }
  }
  // rounding left a sliver of unassigned mass; take the modal outcome
  if (best_w < 0.0) throw std::logic_error("draw_float: no outcome available");
  return best;
}

PeelOutcome draw_outcome(std::int64_t n, std::int64_t p, Rng& rng, const SampleOptions& opts) {
  return n <= opts.exact_threshold ? draw_exact(n, p, rng) : draw_float(n, p, rng);
}

std::int64_t edge_measure(std::int64_t n, std::int64_t p) { return 3 * n + 2 * p - 3; }

// Iterative in the heavy direction, recursive only into the smaller side
// of a split, so stack depth is logarithmic in the map size.
PeelBuild assemble(std::int64_t n, std::int64_t p, Rng& rng, const SampleOptions& opts) {
  struct Op {
    enum Kind { Wrap, JoinLeft, JoinRight } kind;
    PeelBuild small;
  };
  std::vector<Op> ops;
  for (;;) {
    if (n == 0 && p == 2) break;
    const PeelOutcome out = draw_outcome(n, p, rng, opts);
    if (out.new_vertex) {
      ops.push_back({Op::Wrap, {}});
      n -= 1;
      p += 1;
      continue;
    }
    const std::int64_t a = out.arc, b = p - 1 - a;
    const std::int64_t n1 = out.vol, n2 = n - n1;
    if (edge_measure(n1, a + 1) <= edge_measure(n2, b + 1)) {
      ops.push_back({Op::JoinLeft, assemble(n1, a + 1, rng, opts)});
      n = n2;
      p = b + 1;
    } else {
      ops.push_back({Op::JoinRight, assemble(n2, b + 1, rng, opts)});
      n = n1;
      p = a + 1;
    }
  }
  PeelBuild cur = PeelBuild::leaf02();
  while (!ops.empty()) {
    Op op = std::move(ops.back());
    ops.pop_back();
    switch (op.kind) {
      case Op::Wrap:
        cur.close_a();
        break;
      case Op::JoinLeft:
        cur = PeelBuild::close_b(std::move(op.small), std::move(cur));
        break;
      case Op::JoinRight:
        cur = PeelBuild::close_b(std::move(cur), std::move(op.small));
        break;
    }
  }
  return cur;
}

}  // namespace

std::vector<WeightedOutcome> peel_distribution(std::int64_t n, std::int64_t p) {
  CountTable& ct = global_count_table();
  const BigInt& total = ct.get(n, p);
  if (total == 0) throw std::invalid_argument("peel_distribution: empty class");
  std::vector<WeightedOutcome> dist;
  if (n == 0 && p == 2) return dist;  // terminal: nothing left to reveal
  if (n >= 1 && !class_empty(n - 1, p + 1)) {
    dist.push_back({{true, 0, 0}, BigRational(ct.get(n - 1, p + 1), total)});
  }
  for (std::int64_t a = 0; a < p; ++a) {
    const std::int64_t b = p - 1 - a;
    for (std::int64_t n1 = 0; n1 <= n; ++n1) {
      const std::int64_t n2 = n - n1;
      if (class_empty(n1, a + 1) || class_empty(n2, b + 1)) continue;
      dist.push_back({{false, static_cast<std::int32_t>(a), n1},
                      BigRational(ct.get(n1, a + 1) * ct.get(n2, b + 1), total)});
    }
  }
  return dist;
}

Triangulation sample_boundary(std::int64_t n, std::int64_t p, Rng& rng,
                              const SampleOptions& opts) {
  if (class_empty(n, p)) throw std::invalid_argument("sample_boundary: empty class");
  return assemble(n, p, rng, opts).finish();
}

Triangulation sample_sphere(std::int64_t n, Rng& rng, const SampleOptions& opts) {
  if (n < 3) throw std::invalid_argument("sample_sphere: n >= 3 required");
  return root_transform_inverse(sample_boundary(n - 1, 1, rng, opts));
}

GluedStart glued_initial(std::int64_t n, Rng& rng, const SampleOptions& opts) {
  if (n < 5) throw std::invalid_argument("glued_initial: n >= 5 required");
  const Triangulation side1 = sample_boundary((n - 1) / 2, 1, rng, opts);
  const Triangulation side2 = sample_boundary((n - 1) - (n - 1) / 2, 1, rng, opts);
  GluedStart g;
  g.map = glue(side1, side2, 0);
  g.loop_rep = std::min(g.map.root, g.map.twin[g.map.root]);
  return g;
}

}  // namespace triflip
