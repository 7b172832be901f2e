#include "triflip/generate.hpp"

#include <algorithm>
#include <stdexcept>

#include "triflip/peel_build.hpp"

namespace triflip {

namespace {

bool class_empty(std::int64_t n, std::int64_t p) {
  if (n < 0 || p < 1) return true;
  return n == 0 && p == 1;
}

using BuildVisitor = std::function<void(PeelBuild&&)>;

void enumerate(std::int64_t n, std::int64_t p, const BuildVisitor& visit) {
  if (class_empty(n, p)) return;
  if (n == 0 && p == 2) {
    visit(PeelBuild::leaf02());
    return;
  }
  if (n >= 1) {
    enumerate(n - 1, p + 1, [&](PeelBuild&& m) {
      m.close_a();
      visit(std::move(m));
    });
  }
  for (std::int64_t a = 0; a < p; ++a) {
    const std::int64_t b = p - 1 - a;
    for (std::int64_t n1 = 0; n1 <= n; ++n1) {
      const std::int64_t n2 = n - n1;
      if (class_empty(n1, a + 1) || class_empty(n2, b + 1)) continue;
      enumerate(n1, a + 1, [&](PeelBuild&& m1) {
        enumerate(n2, b + 1, [&](PeelBuild&& m2) {
          PeelBuild left = m1;  // reused across all right-hand maps
          visit(PeelBuild::close_b(std::move(left), std::move(m2)));
        });
      });
    }
  }
}

}  // namespace

void generate_all(std::int64_t n, std::int64_t p, const MapVisitor& visit,
                  std::int64_t bound) {
  if (n < 0 || p < 1) throw std::invalid_argument("generate_all: need n >= 0, p >= 1");
  if (n + p > bound) throw std::invalid_argument("generate_all: bound exceeded");
  enumerate(n, p, [&](PeelBuild&& m) { visit(m.finish()); });
}

void generate_all_sphere(std::int64_t n, const MapVisitor& visit, std::int64_t bound) {
  if (n < 3) throw std::invalid_argument("generate_all_sphere: n >= 3 required");
  if (n > bound) throw std::invalid_argument("generate_all_sphere: bound exceeded");
  generate_all(n - 1, 1, [&](const Triangulation& t) { visit(root_transform_inverse(t)); },
               n);
}

std::vector<Code> generate_codes(std::int64_t n, std::int64_t p, std::int64_t bound) {
  std::vector<Code> codes;
  generate_all(n, p, [&](const Triangulation& t) { codes.push_back(canonical_code(t)); },
               bound);
  std::sort(codes.begin(), codes.end());
  return codes;
}

std::vector<Code> generate_codes_sphere(std::int64_t n, std::int64_t bound) {
  std::vector<Code> codes;
  generate_all_sphere(n, [&](const Triangulation& t) { codes.push_back(canonical_code(t)); },
                      bound);
  std::sort(codes.begin(), codes.end());
  return codes;
}

}  // namespace triflip
