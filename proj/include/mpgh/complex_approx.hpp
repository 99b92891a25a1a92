#pragma once

// Finite-sample version of the 1-complex approximation of a length-space
// pair: nets, the complexes (L, K), their graph metrics, the edge-length
// scaling inequality d_L < 2^mu d_X + 5^-n, the closed-form bound and a
// matched-net pipeline.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mpgh/metric_space.hpp"

namespace mpgh {

struct ApproxParams {
  int n = 2;
  Rational nu;        // 10^-n
  Rational theta;     // 5^-n, the edge threshold
  double mu = 0;      // n - log2(2^n - 2) + slack
  double mu_slack = 0;
  Rational tau_a;     // relative tolerance of the geodesic-in-A proxy (0 in exact mode)

  /// Throws for n < 2 (the scaling condition has no solution there).
  static ApproxParams make(int n, double mu_slack = 1.0 / (1 << 20), Rational tau_a = 0);
  bool condition_holds() const;  // 2^(n-mu) + 2 < 2^n and nu < theta
};

struct ComplexEdge {
  std::size_t u, v;  // vertex positions, u < v
  Rational length;
  bool in_k;
};

struct WeightedComplex {
  std::vector<Index> vertices;  // sample indices; A-net members first
  std::vector<bool> in_a;       // vertex belongs to the A-net
  std::vector<ComplexEdge> edges;
  std::size_t a_count() const;
  std::size_t k_components() const;  // components of K over the A-net vertices
  std::size_t l_components() const;
};

struct BuiltComplex {
  WeightedComplex complex;
  NetResult<Rational> net_x;
  NetResult<Rational> net_a;
  bool degenerate = false;  // nu >= diam X: the complex is a point
};

/// Shortest-path metric over `domain` where two points are adjacent when
/// d_X < threshold. nullopt entries are unreachable.
std::vector<std::vector<std::optional<Rational>>> hop_metric(const MetricSpace& x, const IndexSet& domain,
                                                             const Rational& threshold);

BuiltComplex build_complex(const MetricPair& p, const ApproxParams& params);

struct GraphMetric {
  std::optional<MetricPair> pair;  // (L, K) on vertex positions; nullopt when L is disconnected
  std::vector<std::vector<std::optional<Rational>>> dist;
  std::vector<std::pair<std::size_t, std::size_t>> unreachable;
};

/// Dijkstra from every vertex over the edges of L (or of K only when `k_only`).
GraphMetric graph_metric(const WeightedComplex& c, const std::vector<std::string>& labels = {}, bool k_only = false);

struct ScalingReport {
  bool skipped = false;  // L disconnected
  std::size_t pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> lemma_violations;  // d_L >= 2^mu d_X + 5^-n
  std::vector<std::pair<std::size_t, std::size_t>> below_metric;     // d_L < d_X (never expected)
};

ScalingReport lemma23_check(const MetricPair& p, const BuiltComplex& built, const GraphMetric& gm,
                            const ApproxParams& params);

/// (2^mu - 1) diam + 5^-n.
double coro_bound(const Rational& diameter, const ApproxParams& params);

struct PipelineRow {
  int n;
  double mu;
  double coro;
  std::optional<Rational> epsilon;   // max |d_X - d_L| over net pairs + nu
  std::optional<Rational> estimate;  // 4 eps when the matched-net hypotheses verify
  std::string status;                // "ok", "disconnected", "uncovered", "mismatch"
  std::size_t vertices = 0, l_edges = 0, k_edges = 0, k_components = 0;
  bool metric_dominates = true;      // d_L >= d_X on all net pairs
  std::size_t lemma_violations = 0;
};

std::vector<PipelineRow> approx_pipeline(const MetricPair& p, const std::vector<int>& ns);

// Sample generators

/// `count` equally spaced points on a circle of the given circumference, arc metric.
MetricSpace circle_samples(std::size_t count, const Rational& circumference);
/// Indices 0..count/4 inclusive: one closed quarter arc.
IndexSet quarter_arc(std::size_t count);
/// w x h grid with the given spacing and its 4-neighbour graph metric (Manhattan).
MetricSpace grid_samples(std::size_t w, std::size_t h, const Rational& spacing);
/// Boundary of a square with `per_side` samples per side (4 per_side points, cycle graph metric).
MetricSpace square_boundary(std::size_t per_side, const Rational& side);
/// Shortest-path metric of a weighted undirected graph; throws when disconnected.
MetricSpace weighted_graph_metric(std::size_t n, const std::vector<std::tuple<Index, Index, Rational>>& edges);

}  // namespace mpgh
