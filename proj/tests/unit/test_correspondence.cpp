#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace testing;

namespace {

MetricPair two_one_x(long d, bool a_is_x) { return MetricPair(two_points(q(d)), a_is_x ? IndexSet{0, 1} : IndexSet{0}); }
MetricPair point_pair() { return MetricPair(one_point(), {0}); }

}  // namespace

TEST_CASE("validate_correspondence examples") {
  auto p = two_one_x(1, false), r = point_pair();
  CHECK(validate_correspondence<Rational>(full_relation(2, 1), p, r).ok());

  auto uncovered = validate_correspondence<Rational>({{0, 0}}, p, r);
  REQUIRE_FALSE(uncovered.ok());
  CHECK(uncovered.violations.front().side == CoverageViolation::Side::kLeft);
  CHECK(uncovered.violations.front().point == 1);

  auto no_subset = validate_correspondence<Rational>({{1, 0}}, p, r);
  REQUIRE_FALSE(no_subset.ok());
  bool subset_reported = false;
  for (const auto& v : no_subset.violations) subset_reported |= v.side == CoverageViolation::Side::kLeftSubset;
  CHECK(subset_reported);

  CHECK_THROWS_AS(validate_correspondence<Rational>({}, p, r), InputError);
  CHECK_THROWS_AS(validate_correspondence<Rational>({{5, 0}}, p, r), InputError);
}

TEST_CASE("distortion examples") {
  auto p = two_one_x(1, true), r = point_pair();
  auto forced = PairCorrespondence::make(full_relation(2, 1), p, r);
  auto b = distortion(forced);
  CHECK(b.s_full == 1);
  CHECK(b.s_levels.at(0) == 1);
  CHECK(b.dis == 1);

  auto p2 = two_one_x(1, false);
  auto b2 = distortion(PairCorrespondence::make(full_relation(2, 1), p2, r));
  CHECK(b2.s_full == 1);
  CHECK(b2.s_levels.at(0) == 0);
  CHECK(b2.dis == q(1, 2));

  auto id = PairCorrespondence::make(identity_relation(2), p2, p2);
  CHECK(distortion(id).dis == 0);
}

TEST_CASE("distortion matches a direct evaluation and the half/full sandwich") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 300; ++iter) {
    auto p = random_pair(rng), r = random_pair(rng);
    auto c = random_correspondence(rng, p, r);
    auto b = distortion(c);
    CHECK(b.dis == brute_dis(c));
    CHECK(b.s_levels[0] <= b.s_full);
    CHECK(b.s_full / 2 <= b.dis);
    CHECK(b.dis <= b.s_full);
  }
}

TEST_CASE("distortion is invariant under relabeling") {
  std::mt19937_64 rng(32);
  for (int iter = 0; iter < 100; ++iter) {
    auto p = random_pair(rng), r = random_pair(rng);
    auto c = random_correspondence(rng, p, r);
    std::vector<Index> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Index> inverse(perm.size());
    for (Index i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
    IndexSet sub;
    for (Index a : p.subset()) sub.push_back(inverse[a]);
    MetricPair pp(p.space().permuted(perm), sub);
    Relation rel;
    for (const auto& [x, y] : c.relation()) rel.emplace_back(inverse[x], y);
    CHECK(distortion(PairCorrespondence::make(rel, pp, r)).dis == distortion(c).dis);
  }
}

TEST_CASE("tuple correspondences and their distortion") {
  auto x = uniform(3, 2);
  MetricTuple p(x, {{0, 1, 2}, {0, 1}, {0}});
  auto tc = TupleCorrespondence::make(identity_relation(3), p, p);
  auto b = distortion(tc);
  CHECK(b.dis == 0);
  CHECK(b.s_levels.size() == 3);
  MetricTuple t(uniform(3, 1), {{0, 1, 2}, {0, 1}, {0}});
  auto b2 = distortion(TupleCorrespondence::make(identity_relation(3), p, t));
  // full, {0,1,2}, {0,1} all differ by 1; the singleton level by 0.
  CHECK(b2.dis == q(3, 4));
  CHECK_THROWS_AS(TupleCorrespondence::make({{0, 0}, {1, 1}, {2, 2}}, p, MetricTuple(x, {{0, 1}, {1}, {1}})),
                  InputError);
}

TEST_CASE("min_distortion examples") {
  auto p = two_one_x(1, true);
  auto id = min_distortion(p, p);
  CHECK(id.optimal);
  CHECK(id.breakdown.dis == 0);
  // both bijections are isometries; the tie-break picks the smaller membership string 0110
  CHECK(id.correspondence.relation() == Relation{{0, 1}, {1, 0}});

  auto forced = min_distortion(two_one_x(1, false), point_pair());
  CHECK(forced.optimal);
  CHECK(forced.breakdown.dis == q(1, 2));

  MetricPair a(uniform(3, 1), {0}), b(uniform(3, 2), {0});
  auto best = min_distortion(a, b);
  CHECK(best.optimal);
  CHECK(best.breakdown.dis == q(1, 2));
}

TEST_CASE("exhaustive min_distortion equals brute-force enumeration") {
  std::mt19937_64 rng(33);
  for (int iter = 0; iter < 120; ++iter) {
    auto p = random_pair(rng), r = random_pair(rng);
    if (p.size() * r.size() > 9) continue;
    Rational best_pair = -1, best_full = -1;
    for (const auto& c : all_correspondences(p, r)) {
      const Rational d = brute_dis(c), f = brute_sup(c.relation(), p.space(), r.space());
      if (best_pair < 0 || d < best_pair) best_pair = d;
      if (best_full < 0 || f < best_full) best_full = f;
    }
    auto got = min_distortion(p, r);
    CHECK(got.optimal);
    CHECK(got.breakdown.dis == best_pair);
    SearchConfig cfg;
    cfg.objective = DistortionObjective::kClassical;
    CHECK(min_distortion(p, r, cfg).breakdown.s_full == best_full);
  }
}

TEST_CASE("min_distortion is thread-count independent") {
  std::mt19937_64 rng(34);
  for (int iter = 0; iter < 30; ++iter) {
    MetricPair p(random_space(rng, 4), random_subset(rng, 4)), r(random_space(rng, 4), random_subset(rng, 4));
    SearchConfig one, many;
    many.threads = 4;
    auto a = min_distortion(p, r, one), b = min_distortion(p, r, many);
    CHECK(a.correspondence.relation() == b.correspondence.relation());
    CHECK(a.breakdown.dis == b.breakdown.dis);
  }
}

TEST_CASE("heuristic mode gives an upper bound") {
  std::mt19937_64 rng(35);
  for (int iter = 0; iter < 20; ++iter) {
    MetricPair p(random_space(rng, 4), random_subset(rng, 4)), r(random_space(rng, 4), random_subset(rng, 4));
    SearchConfig h;
    h.exhaustive_limit = 0;
    auto approx = min_distortion(p, r, h);
    CHECK_FALSE(approx.optimal);
    CHECK(min_distortion(p, r).breakdown.dis <= approx.breakdown.dis);
  }
}

TEST_CASE("min_distortion works in float mode") {
  Matrix<double> two{{0, 1}, {1, 0}}, one{{0}};
  BasicMetricPair<double> p(BasicMetricSpace<double>::make(two), {0}), r(BasicMetricSpace<double>::make(one), {0});
  auto best = min_distortion(p, r);
  CHECK(best.breakdown.dis == doctest::Approx(0.5));
}

TEST_CASE("paper_delta examples") {
  // Identity correspondence on a pair with itself, small radius: valid.
  auto x = two_one_x(2, true);
  auto id = PairCorrespondence::make(identity_relation(2), x, x);
  for (const Rational& r : {q(1, 2), q(1), q(3)}) {
    auto probe = paper_delta(id, r);
    CHECK(probe.delta(0, 0) == r / 2);
    CHECK(probe.violations.empty());
    REQUIRE(probe.pair_hausdorff);
    CHECK(*probe.pair_hausdorff == r);
  }

  // Two points at distance 1 against one point with r = 1/2: delta = 1/4 on both, spans fail.
  auto forced = PairCorrespondence::make(full_relation(2, 1), two_one_x(1, true), point_pair());
  auto probe = paper_delta(forced, q(1, 2));
  CHECK(probe.delta(0, 0) == q(1, 4));
  CHECK(probe.delta(1, 0) == q(1, 4));
  REQUIRE_FALSE(probe.violations.empty());
  CHECK(probe.violations.front().kind == CrossViolation::Kind::kLeftSpan);
  CHECK_FALSE(probe.pair_hausdorff);

  auto pt = PairCorrespondence::make({{0, 0}}, point_pair(), point_pair());
  auto single = paper_delta(pt, q(1));
  CHECK(single.delta(0, 0) == q(1, 2));
  CHECK(*single.pair_hausdorff == 1);
}

TEST_CASE("classical_delta examples") {
  auto pt = PairCorrespondence::make({{0, 0}}, point_pair(), point_pair());
  auto d = classical_delta(pt, q(1));
  CHECK(d.valid());
  CHECK(pair_hausdorff(d, pt.left(), pt.right()) == 2);

  auto forced = PairCorrespondence::make(full_relation(2, 1), two_one_x(1, true), point_pair());
  auto g = classical_delta(forced, q(1, 2));
  CHECK(g(0, 0) == q(1, 2));
  CHECK(g(1, 0) == q(1, 2));
  CHECK(g.valid());
  CHECK(pair_hausdorff(g, forced.left(), forced.right()) == 1);

  CHECK_THROWS_AS(classical_delta(forced, q(1, 4)), InputError);
  CHECK_THROWS_AS(classical_delta(pt, q(0)), InputError);
  const Rational eta = classical_eta(pt);
  CHECK(eta > 0);
  CHECK(classical_delta(pt, eta).valid());
}

TEST_CASE("classical_delta always certifies pair_hausdorff <= 2 eta") {
  std::mt19937_64 rng(36);
  for (int iter = 0; iter < 300; ++iter) {
    auto p = random_pair(rng), r = random_pair(rng);
    auto c = random_correspondence(rng, p, r);
    const Rational eta = classical_eta(c);
    auto d = classical_delta(c, eta);
    CHECK(d.valid());
    CHECK(validate_metric<Rational>(d.union_matrix()).ok());
    CHECK(pair_hausdorff(d, p, r) <= 2 * eta);
  }
}

TEST_CASE("distortion stability") {
  std::mt19937_64 rng(37);
  auto p = two_one_x(1, true), r = point_pair();
  auto forced = PairCorrespondence::make(full_relation(2, 1), p, r);
  auto same = distortion_stability(forced, forced);
  CHECK(same.lhs == 0);

  auto pt = PairCorrespondence::make({{0, 0}}, point_pair(), point_pair());
  auto pts = distortion_stability(pt, pt);
  CHECK(pts.lhs == 0);
  CHECK(pts.rhs == 0);

  // R ⊂ S with one far pair added.
  auto x = MetricPair(space({{0, 1, 3}, {1, 0, 3}, {3, 3, 0}}), {0});
  auto y = MetricPair(space({{0, 1, 3}, {1, 0, 3}, {3, 3, 0}}), {0});
  auto small = PairCorrespondence::make(identity_relation(3), x, y);
  auto big = PairCorrespondence::make({{0, 0}, {1, 1}, {2, 2}, {0, 2}}, x, y);
  auto grow = distortion_stability(small, big);
  CHECK(grow.lhs > 0);
  CHECK(grow.rhs > 0);
  CHECK(grow.constant_four_holds());

  for (int iter = 0; iter < 300; ++iter) {
    auto a = random_pair(rng, 4), b = random_pair(rng, 4);
    auto c1 = random_correspondence(rng, a, b), c2 = random_correspondence(rng, a, b);
    CHECK(distortion_stability(c1, c2).constant_four_holds());
  }
  CHECK_THROWS_AS(distortion_stability(forced, pt), InputError);
}
