#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "mpgh/oracle.hpp"

using namespace testing;

namespace {

MetricPair two_one(long d, bool a_is_x) { return MetricPair(two_points(q(d)), a_is_x ? IndexSet{0, 1} : IndexSet{0}); }
MetricPair point_pair() { return MetricPair(one_point(), {0}); }

OracleConfig lp_engine() {
  OracleConfig c;
  c.engine = OracleEngine::kLp;
  return c;
}

/// Brute-force check that a relation is a minimal correspondence between s and t.
bool is_minimal(const Relation& r, const IndexSet& s, const IndexSet& t) {
  auto covers = [&](const Relation& rel) {
    for (Index a : s)
      if (std::none_of(rel.begin(), rel.end(), [&](const auto& e) { return e.first == a; })) return false;
    for (Index b : t)
      if (std::none_of(rel.begin(), rel.end(), [&](const auto& e) { return e.second == b; })) return false;
    return true;
  };
  if (!covers(r)) return false;
  for (std::size_t k = 0; k < r.size(); ++k) {
    Relation less = r;
    less.erase(less.begin() + static_cast<long>(k));
    if (covers(less)) return false;
  }
  return true;
}

MetricPair relabel(const MetricPair& p, const std::vector<Index>& perm) {
  std::vector<Index> inverse(perm.size());
  for (Index i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
  IndexSet sub;
  for (Index a : p.subset()) sub.push_back(inverse[a]);
  return MetricPair(p.space().permuted(perm), sub);
}

}  // namespace

TEST_CASE("exact_pair_gh examples") {
  auto p = two_one(1, true);
  CHECK(exact_pair_gh(p, p).value == 0);

  auto r = exact_pair_gh(p, point_pair());
  CHECK(r.value == 1);
  CHECK(r.delta(0, 0) == q(1, 2));
  CHECK(r.delta(1, 0) == q(1, 2));

  auto s = exact_pair_gh(two_one(2, false), point_pair());
  CHECK(s.value == 2);
  // Both engines agree.
  CHECK(exact_pair_gh(two_one(2, false), point_pair(), lp_engine()).value == 2);
  CHECK(exact_pair_gh(p, point_pair(), lp_engine()).value == 1);
}

TEST_CASE("exact_tilde_gh examples") {
  auto p = two_one(1, true);
  CHECK(exact_tilde_gh(p, p).value == 0);
  CHECK(exact_tilde_gh(p, point_pair()).value == q(1, 2));
  CHECK(exact_tilde_gh(two_one(2, false), point_pair()).value == 1);
  CHECK(exact_tilde_gh(two_one(2, false), point_pair(), lp_engine()).value == 1);
}

TEST_CASE("exact_tuple_gh examples") {
  std::mt19937_64 rng(51);
  for (int iter = 0; iter < 25; ++iter) {
    auto a = random_pair(rng), b = random_pair(rng);
    CHECK(exact_tuple_gh(MetricTuple(a), MetricTuple(b)).value == exact_pair_gh(a, b).value);
  }
  // Degenerate chains on two-point spaces: (k+1) d_GH(X,Y).
  for (long d1 = 1; d1 <= 3; ++d1)
    for (long d2 = 1; d2 <= 3; ++d2) {
      auto x = two_points(q(d1)), y = two_points(q(d2));
      const Rational base = exact_space_gh(x, y).value;
      CHECK(base == q(std::abs(d1 - d2), 2));
      for (std::size_t k = 1; k <= 2; ++k) {
        MetricTuple p(x, std::vector<std::vector<Index>>(k, {0, 1}));
        MetricTuple t(y, std::vector<std::vector<Index>>(k, {0, 1}));
        CHECK(exact_tuple_gh(p, t).value == Rational(static_cast<long>(k + 1)) * base);
      }
    }
  MetricTuple same(uniform(3, 2), {{0, 1}, {0}});
  CHECK(exact_tuple_gh(same, same).value == 0);
  CHECK_THROWS_AS(exact_tuple_gh(same, MetricTuple(uniform(3, 2), {{0}})), InputError);
}

TEST_CASE("the optimal cross metric attains the reported value") {
  std::mt19937_64 rng(52);
  for (int iter = 0; iter < 80; ++iter) {
    auto a = random_pair(rng), b = random_pair(rng);
    auto r = exact_pair_gh(a, b);
    CHECK(r.delta.valid(0, true));
    CHECK(pair_hausdorff(r.delta, a, b) == r.value);
    REQUIRE(r.radii.size() == 2);
    CHECK(r.radii[0] + r.radii[1] == r.value);
    auto t = exact_tilde_gh(a, b);
    CHECK(t.delta.valid(0, true));
    const Rational h0 = cross_hausdorff(t.delta, full_index_set(a.size()), full_index_set(b.size()));
    const Rational h1 = cross_hausdorff(t.delta, a.subset(), b.subset());
    CHECK(std::max(h0, h1) == t.value);
  }
}

TEST_CASE("reduced and LP engines agree") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 60; ++iter) {
    auto a = random_pair(rng), b = random_pair(rng);
    CHECK(exact_pair_gh(a, b).value == exact_pair_gh(a, b, lp_engine()).value);
    CHECK(exact_tilde_gh(a, b).value == exact_tilde_gh(a, b, lp_engine()).value);
  }
  for (int iter = 0; iter < 15; ++iter) {
    auto x = random_space(rng, 1 + rng() % 3), y = random_space(rng, 1 + rng() % 3);
    MetricTuple p(x, {full_index_set(x.size()), {0}}), t(y, {full_index_set(y.size()), {0}});
    CHECK(exact_tuple_gh(p, t).value == exact_tuple_gh(p, t, lp_engine()).value);
  }
}

TEST_CASE("symmetry, isomorphism invariance and the sandwich") {
  std::mt19937_64 rng(54);
  for (int iter = 0; iter < 60; ++iter) {
    auto a = random_pair(rng), b = random_pair(rng);
    const Rational v = exact_pair_gh(a, b).value;
    CHECK(v == exact_pair_gh(b, a).value);
    std::vector<Index> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto a2 = relabel(a, perm);
    CHECK(exact_pair_gh(a, a2).value == 0);
    CHECK(exact_pair_gh(a2, b).value == v);
    CHECK((v == 0) == isomorphic(MetricTuple(a), MetricTuple(b)));
    if (a.size() * b.size() <= 9) {
      Rational min_dis = -1, min_full = -1;
      for (const auto& c : all_correspondences(a, b)) {
        const Rational d = brute_dis(c), f = brute_sup(c.relation(), a.space(), b.space());
        if (min_dis < 0 || d < min_dis) min_dis = d;
        if (min_full < 0 || f < min_full) min_full = f;
      }
      CHECK(min_dis / 2 <= v);
      CHECK(v <= min_full);
    }
  }
}

TEST_CASE("minimal correspondences match brute force") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m) {
      const IndexSet s = full_index_set(n), t = full_index_set(m);
      std::size_t expected = 0;
      for (unsigned long mask = 1; mask < (1ul << (n * m)); ++mask) {
        Relation r;
        for (std::size_t c = 0; c < n * m; ++c)
          if (mask >> c & 1ul) r.emplace_back(c / m, c % m);
        expected += is_minimal(r, s, t);
      }
      auto got = minimal_correspondences(s, t);
      CHECK(got.size() == expected);
      for (const auto& r : got) CHECK(is_minimal(r, s, t));
    }
  CHECK(minimal_correspondences({0, 1, 2}, {0, 1, 2}).size() == 15);
}

TEST_CASE("automorphisms and isomorphism") {
  MetricTuple tri(uniform(3, 1), {{0, 1, 2}});
  CHECK(automorphisms(tri).size() == 6);
  MetricTuple pointed(uniform(3, 1), {{0}});
  CHECK(automorphisms(pointed).size() == 2);
  MetricTuple path(space({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), {{0, 1, 2}});
  CHECK(automorphisms(path).size() == 2);
  CHECK(isomorphic(MetricTuple(MetricPair(uniform(3, 1), {0})), MetricTuple(MetricPair(uniform(3, 1), {2}))));
  CHECK_FALSE(isomorphic(MetricTuple(MetricPair(uniform(3, 1), {0})), MetricTuple(MetricPair(uniform(3, 1), {0, 2}))));
}

TEST_CASE("budget accounting") {
  MetricTuple a(MetricPair(uniform(3, 1), {0})), b(MetricPair(uniform(3, 2), {0}));
  // (3^3 3^3) (1 1) raw, divided by |Aut|^2 = 2 * 2.
  CHECK(witness_space_size(a, b, false) == doctest::Approx(729.0));
  CHECK(witness_space_size(a, b, true) == doctest::Approx(729.0 / 4));
  OracleConfig tight;
  tight.budget = 10;
  CHECK_THROWS_AS(exact_pair_gh(MetricPair(uniform(3, 1), {0}), MetricPair(uniform(3, 2), {0}), tight), BudgetExceeded);
  OracleConfig roomy;
  roomy.budget = 1e9;
  CHECK(exact_pair_gh(MetricPair(uniform(3, 1), {0}), MetricPair(uniform(3, 2), {0}), roomy).value ==
        exact_pair_gh(MetricPair(uniform(3, 1), {0}), MetricPair(uniform(3, 2), {0})).value);
}

TEST_CASE("symmetry reduction does not change results") {
  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 30; ++iter) {
    auto a = random_pair(rng), b = random_pair(rng);
    OracleConfig plain;
    plain.symmetry_reduction = false;
    CHECK(exact_pair_gh(a, b).value == exact_pair_gh(a, b, plain).value);
  }
}

TEST_CASE("oracle output is thread-count independent") {
  std::mt19937_64 rng(56);
  for (int iter = 0; iter < 15; ++iter) {
    MetricPair a(random_space(rng, 3), random_subset(rng, 3)), b(random_space(rng, 3), random_subset(rng, 3));
    OracleConfig one, many;
    many.threads = 4;
    auto r1 = exact_pair_gh(a, b, one), r4 = exact_pair_gh(a, b, many);
    CHECK(r1.value == r4.value);
    CHECK(r1.delta.cross() == r4.delta.cross());
    CHECK(r1.correspondences == r4.correspondences);
    CHECK(r1.witness.f == r4.witness.f);
  }
}

TEST_CASE("exact_space_gh on classical examples") {
  CHECK(exact_space_gh(two_points(q(1)), one_point()).value == q(1, 2));
  CHECK(exact_space_gh(uniform(3, 1), uniform(3, 2)).value == q(1, 2));
  CHECK(exact_space_gh(uniform(3, 2), two_points(q(2))).value == 1);
}
