#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mpgh/kernels/kernels.hpp"

using namespace mpgh::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct Batch {
  std::vector<std::vector<double>> coords;
  std::vector<const double*> rows;
  PointBatch view() {
    rows.clear();
    for (auto& c : coords) rows.push_back(c.data());
    return {rows.data(), coords.size(), coords.empty() ? 0 : coords[0].size()};
  }
};

Batch random_batch(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::uniform_real_distribution<double> u(-3, 3);
  Batch b;
  b.coords.assign(dim, std::vector<double>(count));
  for (auto& c : b.coords)
    for (auto& v : c) v = u(rng);
  return b;
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<double> p(dim);
  for (auto& v : p) v = u(rng);
  return p;
}

bool avx2_usable() { return avx2::compiled() && detected_isa() == Isa::kAvx2; }

/// Point-to-segment squared distance written out directly.
double seg_d2(const std::vector<double>& p, const std::vector<double>& a, const std::vector<double>& b) {
  double ab2 = 0, t = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    ab2 += (b[k] - a[k]) * (b[k] - a[k]);
    t += (p[k] - a[k]) * (b[k] - a[k]);
  }
  t = ab2 > 0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double d = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double c = a[k] + t * (b[k] - a[k]) - p[k];
    d += c * c;
  }
  return d;
}

}  // namespace

TEST_CASE("directed_hausdorff matches a direct max-min") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 10);
  for (std::size_t rows : {1u, 3u, 7u, 16u})
    for (std::size_t cols : {1u, 2u, 4u, 5u, 9u, 33u}) {
      std::vector<double> block(rows * cols);
      for (auto& v : block) v = u(rng);
      double expect = 0;
      for (std::size_t r = 0; r < rows; ++r) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < cols; ++c) m = std::min(m, block[r * cols + c]);
        expect = std::max(expect, m);
      }
      CHECK(scalar::directed_hausdorff(block.data(), rows, cols) == expect);
      CHECK(directed_hausdorff(block.data(), rows, cols) == expect);
    }
}

TEST_CASE("point and segment kernels match direct formulas") {
  std::mt19937_64 rng(2);
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    Batch b = random_batch(rng, dim, 37);
    auto a = random_point(rng, dim), c = random_point(rng, dim);
    std::vector<double> out(37, std::numeric_limits<double>::infinity());
    scalar::min_dist2_segment(b.view(), a.data(), c.data(), out.data());
    for (std::size_t i = 0; i < 37; ++i) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) p[k] = b.coords[k][i];
      CHECK(out[i] == doctest::Approx(seg_d2(p, a, c)).epsilon(1e-12));
    }
    std::vector<double> pt(37, std::numeric_limits<double>::infinity());
    scalar::min_dist2_point(b.view(), a.data(), pt.data());
    for (std::size_t i = 0; i < 37; ++i) CHECK(pt[i] >= out[i]);
  }
}

TEST_CASE("triangle kernel: inside points are at distance zero, outside ones at least the plane gap") {
  const double a[] = {0, 0, 0}, b[] = {1, 0, 0}, c[] = {0, 1, 0};
  Batch in;
  in.coords = {{0.2, 0.1, 0.0, 2.0}, {0.2, 0.1, 0.0, 2.0}, {0.0, 0.0, 0.5, 0.0}};
  std::vector<double> out(4, std::numeric_limits<double>::infinity());
  scalar::min_dist2_triangle(in.view(), a, b, c, out.data());
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[1] == doctest::Approx(0.0));
  CHECK(out[2] == doctest::Approx(0.25));
  // (2,2,0) is nearest to the hypotenuse midpoint (0.5,0.5,0).
  CHECK(out[3] == doctest::Approx(4.5));
}

TEST_CASE("triangle kernel never beats its edges and agrees with them outside the plane span") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 50; ++iter) {
    Batch b = random_batch(rng, 3, 23);
    auto a = random_point(rng, 3), c = random_point(rng, 3), d = random_point(rng, 3);
    std::vector<double> tri(23, std::numeric_limits<double>::infinity()), edges(tri);
    scalar::min_dist2_triangle(b.view(), a.data(), c.data(), d.data(), tri.data());
    scalar::min_dist2_segment(b.view(), a.data(), c.data(), edges.data());
    scalar::min_dist2_segment(b.view(), c.data(), d.data(), edges.data());
    scalar::min_dist2_segment(b.view(), d.data(), a.data(), edges.data());
    for (std::size_t i = 0; i < 23; ++i) CHECK(tri[i] <= edges[i] + 1e-12);
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (!avx2_usable()) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 10);
  for (std::size_t rows : {1u, 5u, 13u})
    for (std::size_t cols : {1u, 3u, 4u, 7u, 8u, 31u}) {
      std::vector<double> block(rows * cols);
      for (auto& v : block) v = u(rng);
      CHECK(same_bits(avx2::directed_hausdorff(block.data(), rows, cols),
                      scalar::directed_hausdorff(block.data(), rows, cols)));
    }
  for (std::size_t dim : {1u, 2u, 3u, 4u, 7u})
    for (std::size_t count : {1u, 3u, 4u, 5u, 8u, 61u}) {
      Batch b = random_batch(rng, dim, count);
      auto p0 = random_point(rng, dim), p1 = random_point(rng, dim), p2 = random_point(rng, dim);
      std::vector<double> init(count);
      for (auto& v : init) v = u(rng);
      for (int kind = 0; kind < 3; ++kind) {
        std::vector<double> s = init, v = init;
        if (kind == 0) {
          scalar::min_dist2_point(b.view(), p0.data(), s.data());
          avx2::min_dist2_point(b.view(), p0.data(), v.data());
        } else if (kind == 1) {
          scalar::min_dist2_segment(b.view(), p0.data(), p1.data(), s.data());
          avx2::min_dist2_segment(b.view(), p0.data(), p1.data(), v.data());
        } else {
          scalar::min_dist2_triangle(b.view(), p0.data(), p1.data(), p2.data(), s.data());
          avx2::min_dist2_triangle(b.view(), p0.data(), p1.data(), p2.data(), v.data());
        }
        for (std::size_t i = 0; i < count; ++i) CHECK(same_bits(s[i], v[i]));
      }
    }
  // Degenerate segments and triangles.
  Batch b = random_batch(rng, 2, 9);
  const double a[] = {1, 1}, c[] = {2, 2};
  std::vector<double> s(9, 1e9), v(9, 1e9);
  scalar::min_dist2_segment(b.view(), a, a, s.data());
  avx2::min_dist2_segment(b.view(), a, a, v.data());
  for (std::size_t i = 0; i < 9; ++i) CHECK(same_bits(s[i], v[i]));
  scalar::min_dist2_triangle(b.view(), a, c, c, s.data());
  avx2::min_dist2_triangle(b.view(), a, c, c, v.data());
  for (std::size_t i = 0; i < 9; ++i) CHECK(same_bits(s[i], v[i]));
}

TEST_CASE("dispatch can be pinned") {
  const Isa before = active_isa();
  set_active_isa(Isa::kScalar);
  CHECK(active_isa() == Isa::kScalar);
  set_active_isa(Isa::kAvx2);
  CHECK(active_isa() == (avx2_usable() ? Isa::kAvx2 : Isa::kScalar));
  set_active_isa(before);
  CHECK(std::string(isa_name(Isa::kScalar)) == "scalar");
}
