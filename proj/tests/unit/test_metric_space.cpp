#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace testing;

TEST_CASE("validate_metric examples") {
  CHECK(validate_metric<Rational>({{q(0), q(1)}, {q(1), q(0)}}).ok());

  auto asym = validate_metric<Rational>({{q(0), q(1)}, {q(2), q(0)}});
  REQUIRE_FALSE(asym.ok());
  CHECK(asym.violations.front().kind == MetricViolation::Kind::kAsymmetric);
  CHECK(asym.violations.front().i == 0);
  CHECK(asym.violations.front().j == 1);

  auto tri = validate_metric<Rational>({{q(0), q(1), q(3)}, {q(1), q(0), q(1)}, {q(3), q(1), q(0)}});
  REQUIRE_FALSE(tri.ok());
  bool found = false;
  for (const auto& v : tri.violations)
    found |= v.kind == MetricViolation::Kind::kTriangle && v.i == 0 && v.j == 1 && v.k == 2;
  CHECK(found);
}

TEST_CASE("validate_metric rejects malformed matrices") {
  CHECK_THROWS_AS(validate_metric<Rational>({}), InputError);
  CHECK_THROWS_AS(validate_metric<Rational>({{q(0), q(1)}}), InputError);
  CHECK_THROWS_AS(validate_metric<Rational>({{q(0), q(-1)}, {q(-1), q(0)}}), InputError);
  auto zero = validate_metric<Rational>({{q(0), q(0)}, {q(0), q(0)}});
  CHECK_FALSE(zero.ok());
}

TEST_CASE("float validation uses the tolerance") {
  Matrix<double> m{{0, 0.1 + 0.2}, {0.3, 0}};
  CHECK(validate_metric<double>(m, {}, 1e-9).ok());
  CHECK_FALSE(validate_metric<double>(m, {}, 0).ok());
}

TEST_CASE("hausdorff examples") {
  auto pq = two_points(q(1));
  CHECK(hausdorff(pq, {0, 1}, {0, 1}) == 0);
  CHECK(hausdorff(pq, {0}, {1}) == 1);
  auto path = space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(hausdorff(path, {0, 2}, {1}) == 1);
  CHECK_THROWS_AS(hausdorff(path, {}, {1}), InputError);
}

TEST_CASE("hausdorff is a metric on subsets") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng() % 5;
    auto x = random_space(rng, n, 4);
    auto a = random_subset(rng, n), b = random_subset(rng, n), c = random_subset(rng, n);
    CHECK((hausdorff(x, a, b) == 0) == (a == b));
    CHECK(hausdorff(x, a, b) == hausdorff(x, b, a));
    CHECK(hausdorff(x, a, c) <= hausdorff(x, a, b) + hausdorff(x, b, c));
  }
}

TEST_CASE("float hausdorff matches exact on integer data") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng() % 6;
    auto x = random_space(rng, n, 5);
    Matrix<double> m(n, std::vector<double>(n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m[i][j] = x(i, j).get_d();
    auto xf = BasicMetricSpace<double>::make(m);
    auto a = random_subset(rng, n), b = random_subset(rng, n);
    CHECK(hausdorff(xf, a, b) == hausdorff(x, a, b).get_d());
  }
}

TEST_CASE("pair_hausdorff examples") {
  auto pt = one_point();
  MetricPair p(pt, {0});
  CrossMetric c(pt, pt, {{q(3, 2)}});
  CHECK(pair_hausdorff(c, p, p) == 3);

  MetricPair x(two_points(q(2)), {0});
  MetricPair y(pt, {0});
  CrossMetric d(x.space(), pt, {{q(1)}, {q(1)}});
  CHECK(d.valid());
  CHECK(pair_hausdorff(d, x, y) == 2);
  CHECK(tuple_hausdorff(d, MetricTuple(x), MetricTuple(y)) == pair_hausdorff(d, x, y));
}

TEST_CASE("tuple_hausdorff with a two-level chain") {
  // Chain {x0,x1} ⊇ {x0} against {y} ⊇ {y}, cross entries 1 and 1:
  // d_H(X,Y) = 1, d_H(X2,Y) = 1, d_H(X1,Y) = 1.
  auto x = two_points(q(2));
  auto pt = one_point();
  MetricTuple p(x, {{0, 1}, {0}});
  MetricTuple t(pt, {{0}, {0}});
  CrossMetric d(x, pt, {{q(1)}, {q(1)}});
  CHECK(tuple_hausdorff(d, p, t) == 3);
}

TEST_CASE("tuple_hausdorff with a degenerate chain is (k+1) times the space term") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    auto x = random_space(rng, 1 + rng() % 3);
    auto y = random_space(rng, 1 + rng() % 3);
    Matrix<Rational> cross(x.size(), std::vector<Rational>(y.size()));
    const Rational big = x.diameter() + y.diameter() + 1;
    for (auto& row : cross)
      for (auto& v : row) v = big;
    CrossMetric d(x, y, cross);
    REQUIRE(d.valid());
    for (std::size_t k = 1; k <= 3; ++k) {
      MetricTuple p(x, std::vector<std::vector<Index>>(k, full_index_set(x.size())));
      MetricTuple t(y, std::vector<std::vector<Index>>(k, full_index_set(y.size())));
      CHECK(tuple_hausdorff(d, p, t) == Rational(static_cast<long>(k + 1)) * big);
    }
  }
}

TEST_CASE("pairs and tuples reject bad subsets") {
  CHECK_THROWS_AS(MetricPair(two_points(q(1)), {}), InputError);
  CHECK_THROWS_AS(MetricPair(two_points(q(1)), {2}), InputError);
  CHECK_THROWS_AS(MetricTuple(uniform(3, 1), {{0}, {0, 1}}), InputError);
  CHECK_NOTHROW(MetricTuple(uniform(3, 1), {{0, 1, 2}, {0, 1}, {1}}));
}

TEST_CASE("greedy_net examples") {
  auto x = uniform(4, 2);
  auto big = greedy_net(x, q(3), {});
  CHECK(big.members == std::vector<Index>{0});
  auto seeded = greedy_net(x, q(3), {2});
  CHECK(seeded.members == std::vector<Index>{2});
  auto fine = greedy_net(x, q(1), {});
  CHECK(fine.members.size() == 4);
}

TEST_CASE("greedy_net on the circle of circumference 8 with nu 5/2") {
  std::vector<std::vector<long>> m(8, std::vector<long>(8));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) m[i][j] = std::min(std::abs(i - j), 8 - std::abs(i - j));
  auto x = space(m);
  const Rational nu = q(5, 2);
  auto net = greedy_net(x, nu, {});
  // separation
  for (Index a : net.members)
    for (Index b : net.members)
      if (a != b) CHECK(x(a, b) > nu);
  // density
  for (Index p = 0; p < 8; ++p) {
    Rational best = x(p, net.members.front());
    for (Index a : net.members) best = std::min(best, Rational(x(p, a)));
    CHECK(best <= nu);
  }
  CHECK(net.members == std::vector<Index>{0, 3});
}

TEST_CASE("greedy_net predicates hold on random spaces") {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 1 + rng() % 6;
    auto x = random_space(rng, n, 6);
    const Rational nu = q(1 + static_cast<long>(rng() % 12), 2);
    auto seed = rng() % 2 ? IndexSet{} : IndexSet{static_cast<Index>(rng() % n)};
    auto net = greedy_net(x, nu, seed);
    if (!seed.empty()) CHECK(net.members.front() == seed.front());
    for (Index a : net.members)
      for (Index b : net.members)
        if (a != b) CHECK(x(a, b) > nu);
    for (Index p = 0; p < n; ++p) {
      CHECK(net.radius[p] <= nu);
      CHECK(net.strict[p] == (net.radius[p] < nu));
    }
  }
}

TEST_CASE("product_max_metric examples") {
  auto x = two_points(q(1));
  auto prod = product_max_metric(x, one_point());
  CHECK(prod.space == x);

  auto four = product_max_metric(x, x);
  CHECK(four.space.size() == 4);
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b) CHECK(four.space(a, b) == (a == b ? 0 : 1));

  auto mixed = product_max_metric(x, two_points(q(3)));
  CHECK(mixed.space(mixed.index(0, 0), mixed.index(1, 1)) == 3);
  CHECK(mixed.space(mixed.index(0, 1), mixed.index(1, 0)) == 3);
  CHECK(mixed.space(mixed.index(0, 0), mixed.index(1, 0)) == 1);
  CHECK(validate_metric<Rational>(mixed.space.matrix()).ok());
}

TEST_CASE("a valid cross metric assembles into a valid union metric") {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 100; ++iter) {
    MetricPair p = random_pair(rng), r = random_pair(rng);
    auto c = random_correspondence(rng, p, r);
    auto delta = classical_delta(c, classical_eta(c));
    REQUIRE(delta.valid());
    CHECK(validate_metric<Rational>(delta.union_matrix()).ok());
  }
}

TEST_CASE("cross metric violations are reported") {
  auto x = two_points(q(4));
  CrossMetric bad(x, one_point(), {{q(1)}, {q(1)}});
  auto v = bad.violations();
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().kind == CrossViolation::Kind::kLeftSpan);
  CrossMetric zero(one_point(), one_point(), {{q(0)}});
  CHECK_FALSE(zero.valid());
  CHECK(zero.valid(0, true));
}

TEST_CASE("restrict_to and permuted relabel consistently") {
  auto x = space({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}});
  auto sub = x.restrict_to({0, 2});
  CHECK(sub.size() == 2);
  CHECK(sub(0, 1) == 2);
  std::vector<Index> perm{2, 0, 1};
  auto p = x.permuted(perm);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(p(i, j) == x(perm[i], perm[j]));
}
