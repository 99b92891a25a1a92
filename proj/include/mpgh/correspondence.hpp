#pragma once

// Pair and tuple correspondences, their distortions, the two gluing
// constructions of a cross metric from a correspondence, the distortion
// stability check, and exact minimization of pair distortion.

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "mpgh/metric_space.hpp"

namespace mpgh {

/// Sorted, duplicate-free list of (left index, right index) pairs.
using Relation = std::vector<std::pair<Index, Index>>;

Relation normalize_relation(Relation r);
Relation full_relation(std::size_t n, std::size_t m);
Relation identity_relation(std::size_t n);
/// Elements of r lying in s × t.
Relation restrict_relation(const Relation& r, const IndexSet& s, const IndexSet& t);

struct CoverageViolation {
  enum class Side { kLeft, kRight, kLeftSubset, kRightSubset };
  Side side;
  std::size_t level = 0;  // 0 for the full spaces, i for chain level i-1
  Index point = 0;
};

std::string describe(const CoverageViolation& v);

/// The four (or 2k+2) surjectivity conditions; empty when r is a tuple correspondence.
std::vector<CoverageViolation> coverage_violations(const Relation& r, std::size_t n, std::size_t m,
                                                   const std::vector<IndexSet>& left_chain,
                                                   const std::vector<IndexSet>& right_chain);

template <class T>
struct DistortionBreakdown {
  T s_full;                 // sup over R of |d_X - d_Y|
  std::vector<T> s_levels;  // same sup over each restricted level
  T dis;                    // (s_full + sum s_levels) / (k+1)
};

template <class T>
struct CorrespondenceValidation;

template <class T>
class BasicPairCorrespondence {
 public:
  const Relation& relation() const { return relation_; }
  const BasicMetricPair<T>& left() const { return left_; }
  const BasicMetricPair<T>& right() const { return right_; }
  Relation restricted() const { return restrict_relation(relation_, left_.subset(), right_.subset()); }

  /// Throws InputError when r is not a pair correspondence.
  static BasicPairCorrespondence make(Relation r, BasicMetricPair<T> p, BasicMetricPair<T> q);

 private:
  BasicPairCorrespondence(Relation r, BasicMetricPair<T> p, BasicMetricPair<T> q)
      : relation_(std::move(r)), left_(std::move(p)), right_(std::move(q)) {}
  template <class U>
  friend CorrespondenceValidation<U> validate_correspondence(Relation, const BasicMetricPair<U>&,
                                                             const BasicMetricPair<U>&);
  Relation relation_;
  BasicMetricPair<T> left_, right_;
};

template <class T>
struct CorrespondenceValidation {
  std::optional<BasicPairCorrespondence<T>> correspondence;
  std::vector<CoverageViolation> violations;
  bool ok() const { return correspondence.has_value(); }
};

template <class T>
CorrespondenceValidation<T> validate_correspondence(Relation r, const BasicMetricPair<T>& p,
                                                    const BasicMetricPair<T>& q) {
  if (r.empty()) throw InputError("correspondence relation is empty");
  r = normalize_relation(std::move(r));
  for (const auto& [x, y] : r)
    if (x >= p.size() || y >= q.size()) throw InputError("correspondence index out of range");
  CorrespondenceValidation<T> out;
  out.violations = coverage_violations(r, p.size(), q.size(), {p.subset()}, {q.subset()});
  if (out.violations.empty()) out.correspondence = BasicPairCorrespondence<T>(std::move(r), p, q);
  return out;
}

template <class T>
BasicPairCorrespondence<T> BasicPairCorrespondence<T>::make(Relation r, BasicMetricPair<T> p, BasicMetricPair<T> q) {
  auto v = validate_correspondence<T>(std::move(r), p, q);
  if (!v.ok()) throw InputError("not a pair correspondence: " + describe(v.violations.front()));
  return std::move(*v.correspondence);
}

template <class T>
class BasicTupleCorrespondence {
 public:
  static BasicTupleCorrespondence make(Relation r, BasicMetricTuple<T> p, BasicMetricTuple<T> q) {
    if (r.empty()) throw InputError("correspondence relation is empty");
    if (p.length() != q.length()) throw InputError("tuple correspondence: length mismatch");
    r = normalize_relation(std::move(r));
    for (const auto& [x, y] : r)
      if (x >= p.size() || y >= q.size()) throw InputError("correspondence index out of range");
    auto v = coverage_violations(r, p.size(), q.size(), p.chain(), q.chain());
    if (!v.empty()) throw InputError("not a tuple correspondence: " + describe(v.front()));
    return BasicTupleCorrespondence(std::move(r), std::move(p), std::move(q));
  }
  const Relation& relation() const { return relation_; }
  const BasicMetricTuple<T>& left() const { return left_; }
  const BasicMetricTuple<T>& right() const { return right_; }

 private:
  BasicTupleCorrespondence(Relation r, BasicMetricTuple<T> p, BasicMetricTuple<T> q)
      : relation_(std::move(r)), left_(std::move(p)), right_(std::move(q)) {}
  Relation relation_;
  BasicMetricTuple<T> left_, right_;
};

using PairCorrespondence = BasicPairCorrespondence<Rational>;
using TupleCorrespondence = BasicTupleCorrespondence<Rational>;

// ---------------------------------------------------------------------------
// Distortion

namespace detail {

template <class T>
T relation_sup(const Relation& r, const BasicMetricSpace<T>& x, const BasicMetricSpace<T>& y) {
  T best = T(0);
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = a + 1; b < r.size(); ++b) {
      T diff = x(r[a].first, r[b].first) - y(r[a].second, r[b].second);
      if (diff < T(0)) diff = -diff;
      if (diff > best) best = diff;
    }
  return best;
}

template <class T>
DistortionBreakdown<T> combine(T s_full, std::vector<T> levels) {
  T sum = s_full;
  for (const T& s : levels) sum += s;
  T dis = sum / T(static_cast<long>(levels.size() + 1));
  return {std::move(s_full), std::move(levels), std::move(dis)};
}

}  // namespace detail

/// sup of |d_X - d_Y| over all pairs of elements of r.
template <class T>
T relation_distortion(const Relation& r, const BasicMetricSpace<T>& x, const BasicMetricSpace<T>& y) {
  return detail::relation_sup(r, x, y);
}

template <class T>
DistortionBreakdown<T> distortion(const BasicPairCorrespondence<T>& r) {
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  return detail::combine<T>(detail::relation_sup(r.relation(), x, y), {detail::relation_sup(r.restricted(), x, y)});
}

template <class T>
DistortionBreakdown<T> distortion(const BasicTupleCorrespondence<T>& r) {
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  std::vector<T> levels;
  for (std::size_t i = 0; i < r.left().length(); ++i)
    levels.push_back(
        detail::relation_sup(restrict_relation(r.relation(), r.left().chain()[i], r.right().chain()[i]), x, y));
  return detail::combine<T>(detail::relation_sup(r.relation(), x, y), std::move(levels));
}

// ---------------------------------------------------------------------------
// Minimization over pair correspondences

enum class DistortionObjective {
  kPair,       // (s_full + s_restricted) / 2
  kClassical,  // s_full alone
};

struct SearchConfig {
  std::size_t exhaustive_limit = 16;  // max |X|*|Y| for the exact search
  std::size_t heuristic_iterations = 200;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  DistortionObjective objective = DistortionObjective::kPair;
};

template <class T>
struct MinDistortionResult {
  BasicPairCorrespondence<T> correspondence;
  DistortionBreakdown<T> breakdown;
  bool optimal;
};

namespace detail {

/// Grid-indexed view of a pair-of-pairs problem; cell c = x*m + y.
template <class T>
struct DistortionGrid {
  std::size_t n, m, cells;
  std::vector<T> diff;         // |d_X - d_Y| for cells (c, c'), cells x cells
  std::vector<char> in_sub;    // cell lies in A x B
  std::vector<char> left_sub;  // x in A
  std::vector<char> right_sub;

  DistortionGrid(const BasicMetricPair<T>& p, const BasicMetricPair<T>& q)
      : n(p.size()), m(q.size()), cells(p.size() * q.size()) {
    diff.resize(cells * cells);
    for (std::size_t c = 0; c < cells; ++c)
      for (std::size_t d = 0; d < cells; ++d) {
        T v = p.space()(c / m, d / m) - q.space()(c % m, d % m);
        if (v < T(0)) v = -v;
        diff[c * cells + d] = v;
      }
    left_sub.assign(n, 0);
    right_sub.assign(m, 0);
    for (Index a : p.subset()) left_sub[a] = 1;
    for (Index b : q.subset()) right_sub[b] = 1;
    in_sub.resize(cells);
    for (std::size_t c = 0; c < cells; ++c) in_sub[c] = left_sub[c / m] && right_sub[c % m];
  }

  const T& d(std::size_t c, std::size_t e) const { return diff[c * cells + e]; }

  T objective(const T& s_full, const T& s_sub, DistortionObjective obj) const {
    return obj == DistortionObjective::kPair ? T((s_full + s_sub) / 2) : s_full;
  }

  bool covers(const std::vector<char>& in) const {
    for (std::size_t x = 0; x < n; ++x) {
      bool any = false, any_sub = !left_sub[x];
      for (std::size_t y = 0; y < m; ++y)
        if (in[x * m + y]) {
          any = true;
          if (in_sub[x * m + y]) any_sub = true;
        }
      if (!any || !any_sub) return false;
    }
    for (std::size_t y = 0; y < m; ++y) {
      bool any = false, any_sub = !right_sub[y];
      for (std::size_t x = 0; x < n; ++x)
        if (in[x * m + y]) {
          any = true;
          if (in_sub[x * m + y]) any_sub = true;
        }
      if (!any || !any_sub) return false;
    }
    return true;
  }

  std::pair<T, T> sups(const std::vector<char>& in) const {
    T s_full = T(0), s_sub = T(0);
    for (std::size_t c = 0; c < cells; ++c) {
      if (!in[c]) continue;
      for (std::size_t e = c + 1; e < cells; ++e) {
        if (!in[e]) continue;
        if (d(c, e) > s_full) s_full = d(c, e);
        if (in_sub[c] && in_sub[e] && d(c, e) > s_sub) s_sub = d(c, e);
      }
    }
    return {s_full, s_sub};
  }
};

/// Lexicographic order on cell-membership strings, '0' < '1'.
inline bool lex_less(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

template <class T>
struct SearchBest {
  std::optional<T> value;
  std::vector<char> cells;
  void offer(const T& v, const std::vector<char>& c) {
    if (!value || v < *value || (v == *value && lex_less(c, cells))) {
      value = v;
      cells = c;
    }
  }
};

/// Depth-first include/exclude search with forced-coverage propagation and
/// pruning on the monotone partial-distortion bound.
template <class T>
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const DistortionGrid<T>& g, DistortionObjective obj, T bound) : g_(g), obj_(obj), bound_(bound) {}

  struct Node {
    std::vector<signed char> state;  // -1 undecided, 0 out, 1 in
    T s_full, s_sub;
  };

  Node root() const { return Node{std::vector<signed char>(g_.cells, -1), T(0), T(0)}; }

  /// Includes cell c, updating the running sups.
  void include(Node& node, std::size_t c) const {
    for (std::size_t e = 0; e < g_.cells; ++e) {
      if (node.state[e] != 1) continue;
      if (g_.d(c, e) > node.s_full) node.s_full = g_.d(c, e);
      if (g_.in_sub[c] && g_.in_sub[e] && g_.d(c, e) > node.s_sub) node.s_sub = g_.d(c, e);
    }
    node.state[c] = 1;
  }

  /// Applies forced inclusions; false when some point can no longer be covered.
  bool propagate(Node& node) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int pass = 0; pass < 4; ++pass) {
        const bool rows = pass % 2 == 0, sub = pass >= 2;
        const std::size_t outer = rows ? g_.n : g_.m, inner = rows ? g_.m : g_.n;
        for (std::size_t a = 0; a < outer; ++a) {
          if (sub && !(rows ? g_.left_sub[a] : g_.right_sub[a])) continue;
          bool covered = false;
          std::size_t candidates = 0, last = 0;
          for (std::size_t b = 0; b < inner; ++b) {
            std::size_t c = rows ? a * g_.m + b : b * g_.m + a;
            if (sub && !g_.in_sub[c]) continue;
            if (node.state[c] == 1) covered = true;
            if (node.state[c] == -1) {
              ++candidates;
              last = c;
            }
          }
          if (covered) continue;
          if (candidates == 0) return false;
          if (candidates == 1) {
            include(node, last);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void run(Node node, SearchBest<T>& best) const {
    if (!propagate(node)) return;
    T lb = g_.objective(node.s_full, node.s_sub, obj_);
    if (lb > bound_) return;
    if (best.value && lb > *best.value) return;
    std::size_t next = g_.cells;
    for (std::size_t c = 0; c < g_.cells; ++c)
      if (node.state[c] == -1) {
        next = c;
        break;
      }
    if (next == g_.cells) {
      std::vector<char> cells(g_.cells);
      for (std::size_t c = 0; c < g_.cells; ++c) cells[c] = node.state[c] == 1;
      best.offer(lb, cells);
      return;
    }
    Node out = node;
    out.state[next] = 0;
    run(std::move(out), best);
    include(node, next);
    run(std::move(node), best);
  }

  /// Splits the tree into independent subproblems by fixing leading cells.
  std::vector<Node> frontier(std::size_t depth) const {
    std::vector<Node> layer{root()};
    for (std::size_t c = 0; c < std::min(depth, g_.cells); ++c) {
      std::vector<Node> next;
      for (auto& node : layer) {
        if (node.state[c] != -1) {
          next.push_back(node);
          continue;
        }
        Node out = node;
        out.state[c] = 0;
        next.push_back(std::move(out));
        include(node, c);
        next.push_back(std::move(node));
      }
      layer = std::move(next);
    }
    return layer;
  }

 private:
  const DistortionGrid<T>& g_;
  DistortionObjective obj_;
  T bound_;
};

template <class T>
Relation cells_to_relation(const std::vector<char>& cells, std::size_t m) {
  Relation r;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c]) r.emplace_back(c / m, c % m);
  return r;
}

/// Greedy covering maps in both directions, then first-improvement
/// add/remove local search.
template <class T>
std::vector<char> heuristic_cells(const DistortionGrid<T>& g, const SearchConfig& cfg) {
  std::vector<char> in(g.cells, 0);
  auto add_cost = [&](std::size_t c) {
    T worst = T(0);
    for (std::size_t e = 0; e < g.cells; ++e)
      if (in[e] && g.d(c, e) > worst) worst = g.d(c, e);
    return worst;
  };
  auto cover = [&](bool rows, bool sub) {
    const std::size_t outer = rows ? g.n : g.m, inner = rows ? g.m : g.n;
    for (std::size_t a = 0; a < outer; ++a) {
      if (sub && !(rows ? g.left_sub[a] : g.right_sub[a])) continue;
      bool covered = false;
      std::optional<std::size_t> pick;
      T pick_cost;
      for (std::size_t b = 0; b < inner; ++b) {
        std::size_t c = rows ? a * g.m + b : b * g.m + a;
        if (sub && !g.in_sub[c]) continue;
        if (in[c]) covered = true;
        T cost = add_cost(c);
        if (!pick || cost < pick_cost) {
          pick = c;
          pick_cost = cost;
        }
      }
      if (!covered) in[*pick] = 1;
    }
  };
  cover(true, true);
  cover(false, true);
  cover(true, false);
  cover(false, false);

  auto score = [&](const std::vector<char>& cells) {
    auto [f, s] = g.sups(cells);
    return g.objective(f, s, cfg.objective);
  };
  T current = score(in);
  std::vector<std::size_t> order(g.cells);
  for (std::size_t c = 0; c < g.cells; ++c) order[c] = c;
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t it = 0; it < cfg.heuristic_iterations; ++it) {
    std::shuffle(order.begin(), order.end(), rng);
    bool improved = false;
    for (std::size_t c : order) {
      std::vector<char> trial = in;
      trial[c] = !trial[c];
      if (!g.covers(trial)) continue;
      T s = score(trial);
      if (s < current || (s == current && !trial[c])) {
        in = std::move(trial);
        current = s;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return in;
}

}  // namespace detail

/// Global minimizer of the distortion over all pair correspondences when
/// |X|*|Y| is within the exhaustive limit (ties broken toward the
/// lexicographically smallest membership string), otherwise a heuristic
/// upper bound with optimal = false.
template <class T>
MinDistortionResult<T> min_distortion(const BasicMetricPair<T>& p, const BasicMetricPair<T>& q,
                                      const SearchConfig& cfg = {}) {
  if (cfg.exhaustive_limit > 24) throw InputError("min_distortion: exhaustive limit above 24 cells is not supported");
  if (cfg.threads == 0) throw InputError("min_distortion: thread count must be positive");
  detail::DistortionGrid<T> grid(p, q);
  std::vector<char> cells = detail::heuristic_cells(grid, cfg);
  bool optimal = false;

  if (grid.cells <= cfg.exhaustive_limit) {
    auto [f, s] = grid.sups(cells);
    detail::ExhaustiveSearch<T> search(grid, cfg.objective, grid.objective(f, s, cfg.objective));
    auto tasks = search.frontier(cfg.threads > 1 ? std::min<std::size_t>(grid.cells, 6) : 0);
    std::vector<detail::SearchBest<T>> results(tasks.size());
    if (cfg.threads > 1 && tasks.size() > 1) {
      std::vector<std::thread> pool;
      std::mutex mu;
      std::size_t next = 0;
      for (unsigned t = 0; t < cfg.threads; ++t)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t job;
            {
              std::lock_guard lock(mu);
              if (next >= tasks.size()) return;
              job = next++;
            }
            search.run(tasks[job], results[job]);
          }
        });
      for (auto& th : pool) th.join();
    } else {
      for (std::size_t i = 0; i < tasks.size(); ++i) search.run(tasks[i], results[i]);
    }
    detail::SearchBest<T> best;
    for (const auto& r : results)
      if (r.value) best.offer(*r.value, r.cells);
    if (best.value) cells = best.cells;
    optimal = true;
  }

  auto corr = BasicPairCorrespondence<T>::make(detail::cells_to_relation<T>(cells, grid.m), p, q);
  auto breakdown = distortion(corr);
  return {std::move(corr), std::move(breakdown), optimal};
}

// ---------------------------------------------------------------------------
// Cross metrics from correspondences

template <class T>
struct DeltaProbe {
  BasicCrossMetric<T> delta;
  std::vector<CrossViolation> violations;
  std::optional<T> pair_hausdorff;  // only when violations is empty
};

/// delta(x,y) = r/2 + min over (x',y') in R of d_X(x,x') + d_Y(y,y').
template <class T>
DeltaProbe<T> paper_delta(const BasicPairCorrespondence<T>& r, const T& radius, double tol = kDefaultTolerance) {
  if (!(radius > T(0))) throw InputError("paper_delta: r must be positive");
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  Matrix<T> cross(x.size(), std::vector<T>(y.size()));
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < y.size(); ++j) {
      std::optional<T> best;
      for (const auto& [a, b] : r.relation()) {
        T v = x(i, a) + y(j, b);
        if (!best || v < *best) best = v;
      }
      cross[i][j] = radius / 2 + *best;
    }
  DeltaProbe<T> out{BasicCrossMetric<T>(x, y, std::move(cross)), {}, std::nullopt};
  out.violations = out.delta.violations(tol);
  if (out.violations.empty()) out.pair_hausdorff = pair_hausdorff(out.delta, r.left(), r.right());
  return out;
}

/// delta(x,y) = min over (x',y') in R of d_X(x,x') + eta + d_Y(y',y); admissible when eta >= s_full/2 > 0.
template <class T>
BasicCrossMetric<T> classical_delta(const BasicPairCorrespondence<T>& r, const T& eta) {
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  if (!(eta > T(0))) throw InputError("classical_delta: eta must be positive");
  T s_full = relation_distortion(r.relation(), x, y);
  if (eta < s_full / 2) throw InputError("classical_delta: eta below s_full/2");
  Matrix<T> cross(x.size(), std::vector<T>(y.size()));
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < y.size(); ++j) {
      std::optional<T> best;
      for (const auto& [a, b] : r.relation()) {
        T v = x(i, a) + eta + y(b, j);
        if (!best || v < *best) best = v;
      }
      cross[i][j] = *best;
    }
  return BasicCrossMetric<T>(x, y, std::move(cross));
}

/// The smallest admissible eta for classical_delta: s_full/2, or a tiny
/// positive value (1e-9 times the smallest positive distance) when R is an isometry.
template <class T>
T classical_eta(const BasicPairCorrespondence<T>& r) {
  T s_full = relation_distortion(r.relation(), r.left().space(), r.right().space());
  if (s_full > T(0)) return s_full / 2;
  std::optional<T> smallest;
  for (const auto* s : {&r.left().space(), &r.right().space()})
    for (Index i = 0; i < s->size(); ++i)
      for (Index j = i + 1; j < s->size(); ++j)
        if (!smallest || (*s)(i, j) < *smallest) smallest = (*s)(i, j);
  T base = smallest ? *smallest : T(1);
  return base / T(1000000000);
}

// ---------------------------------------------------------------------------
// Distortion stability

template <class T>
struct StabilityReport {
  T lhs;             // |dis(R) - dis(S)|
  T rhs;             // Hausdorff distance of R and S in the product max-metric
  T rhs_restricted;  // same for the restrictions to A x B
  bool constant_one_holds() const { return lhs <= rhs; }
  bool constant_four_holds() const { return lhs <= T(4) * (rhs + rhs_restricted); }
};

namespace detail {

template <class T>
T product_hausdorff(const Relation& r, const Relation& s, const BasicMetricSpace<T>& x, const BasicMetricSpace<T>& y) {
  auto dist = [&](const std::pair<Index, Index>& a, const std::pair<Index, Index>& b) {
    const T& dx = x(a.first, b.first);
    const T& dy = y(a.second, b.second);
    return dx > dy ? dx : dy;
  };
  auto directed = [&](const Relation& from, const Relation& to) {
    T worst = T(0);
    for (const auto& a : from) {
      T best = dist(a, to.front());
      for (const auto& b : to)
        if (dist(a, b) < best) best = dist(a, b);
      if (best > worst) worst = best;
    }
    return worst;
  };
  T ab = directed(r, s), ba = directed(s, r);
  return ab > ba ? ab : ba;
}

}  // namespace detail

template <class T>
StabilityReport<T> distortion_stability(const BasicPairCorrespondence<T>& r, const BasicPairCorrespondence<T>& s) {
  if (!(r.left() == s.left()) || !(r.right() == s.right()))
    throw InputError("distortion_stability: correspondences relate different pairs");
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  T lhs = distortion(r).dis - distortion(s).dis;
  if (lhs < T(0)) lhs = -lhs;
  return {lhs, detail::product_hausdorff(r.relation(), s.relation(), x, y),
          detail::product_hausdorff(r.restricted(), s.restricted(), x, y)};
}

}  // namespace mpgh
