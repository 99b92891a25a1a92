#pragma once

#include <random>
#include <vector>

#include "mpgh/correspondence.hpp"
#include "mpgh/metric_space.hpp"

namespace testing {

using namespace mpgh;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline MetricSpace space(const std::vector<std::vector<long>>& m) {
  Matrix<Rational> r;
  for (const auto& row : m) {
    r.emplace_back();
    for (long v : row) r.back().push_back(Rational(v));
  }
  return MetricSpace::make(r);
}

inline MetricSpace two_points(const Rational& d) {
  return MetricSpace::make({{Rational(0), d}, {d, Rational(0)}});
}

inline MetricSpace one_point() { return MetricSpace::make({{Rational(0)}}); }

inline MetricSpace uniform(std::size_t n, long d) {
  std::vector<std::vector<long>> m(n, std::vector<long>(n, d));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return space(m);
}

/// Random metric on n points with integer distances in [1, top], by rejection.
inline MetricSpace random_space(std::mt19937_64& rng, std::size_t n, long top = 3) {
  std::uniform_int_distribution<long> pick(1, top);
  for (;;) {
    Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = Rational(pick(rng));
    auto v = validate_metric<Rational>(m);
    if (v.ok()) return *v.space;
  }
}

inline IndexSet random_subset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<unsigned> pick(1, (1u << n) - 1);
  const unsigned mask = pick(rng);
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

inline MetricPair random_pair(std::mt19937_64& rng, std::size_t max_points = 3, long top = 3) {
  std::uniform_int_distribution<std::size_t> size(1, max_points);
  const std::size_t n = size(rng);
  return MetricPair(random_space(rng, n, top), random_subset(rng, n));
}

/// Random pair correspondence: every point paired once, then extra random cells.
inline PairCorrespondence random_correspondence(std::mt19937_64& rng, const MetricPair& p, const MetricPair& q) {
  const std::size_t n = p.size(), m = q.size();
  for (;;) {
    Relation r;
    std::bernoulli_distribution coin(0.35);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < m; ++y)
        if (coin(rng)) r.emplace_back(x, y);
    // force coverage
    std::uniform_int_distribution<Index> px(0, n - 1), py(0, m - 1);
    for (Index a : p.subset()) r.emplace_back(a, q.subset()[std::uniform_int_distribution<std::size_t>(0, q.subset().size() - 1)(rng)]);
    for (Index b : q.subset()) r.emplace_back(p.subset()[std::uniform_int_distribution<std::size_t>(0, p.subset().size() - 1)(rng)], b);
    for (Index x = 0; x < n; ++x) r.emplace_back(x, py(rng));
    for (Index y = 0; y < m; ++y) r.emplace_back(px(rng), y);
    auto v = validate_correspondence<Rational>(r, p, q);
    if (v.ok()) return *v.correspondence;
  }
}

/// Every pair correspondence between p and q, by enumerating all relations.
inline std::vector<PairCorrespondence> all_correspondences(const MetricPair& p, const MetricPair& q) {
  const std::size_t cells = p.size() * q.size();
  std::vector<PairCorrespondence> out;
  for (unsigned long mask = 1; mask < (1ul << cells); ++mask) {
    Relation r;
    for (std::size_t c = 0; c < cells; ++c)
      if (mask >> c & 1ul) r.emplace_back(c / q.size(), c % q.size());
    auto v = validate_correspondence<Rational>(r, p, q);
    if (v.ok()) out.push_back(*v.correspondence);
  }
  return out;
}

/// Max over elements of |d_X - d_Y|, written out independently of the library.
inline Rational brute_sup(const Relation& r, const MetricSpace& x, const MetricSpace& y) {
  Rational best = 0;
  for (const auto& [a, b] : r)
    for (const auto& [c, d] : r) {
      Rational g = abs(x(a, c) - y(b, d));
      if (g > best) best = g;
    }
  return best;
}

inline Rational brute_dis(const PairCorrespondence& c) {
  Relation sub;
  for (const auto& e : c.relation())
    if (c.left().in_subset(e.first) && c.right().in_subset(e.second)) sub.push_back(e);
  return (brute_sup(c.relation(), c.left().space(), c.right().space()) +
          brute_sup(sub, c.left().space(), c.right().space())) /
         2;
}

}  // namespace testing
