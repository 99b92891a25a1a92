#include "mpgh/complex_approx.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include "mpgh/bounds.hpp"

namespace mpgh {

namespace {

Rational pow_frac(long base, int n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(n));
  return Rational(mpz_class(1), den);
}

using Adjacency = std::vector<std::vector<std::pair<std::size_t, Rational>>>;

std::vector<std::optional<Rational>> dijkstra(const Adjacency& adj, std::size_t source) {
  using Item = std::pair<Rational, std::size_t>;
  auto later = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
  std::vector<std::optional<Rational>> dist(adj.size());
  std::vector<char> done(adj.size(), 0);
  dist[source] = Rational(0);
  heap.emplace(Rational(0), source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, w] : adj[u]) {
      Rational nd = d + w;
      if (!dist[v] || nd < *dist[v]) {
        dist[v] = nd;
        heap.emplace(std::move(nd), v);
      }
    }
  }
  return dist;
}

std::size_t components(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       const std::vector<bool>& keep) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) count += keep[v];
  for (auto [u, v] : edges) {
    std::size_t a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

}  // namespace

ApproxParams ApproxParams::make(int n, double mu_slack, Rational tau_a) {
  if (n < 2) throw InputError("approximation scale n must be at least 2");
  if (n > 60) throw InputError("approximation scale n above 60 is not supported");
  if (!(mu_slack > 0)) throw InputError("mu slack must be positive");
  if (tau_a < 0) throw InputError("tau_A must be nonnegative");
  ApproxParams p;
  p.n = n;
  p.nu = pow_frac(10, n);
  p.theta = pow_frac(5, n);
  p.mu_slack = mu_slack;
  p.mu = n - std::log2(std::ldexp(1.0, n) - 2) + mu_slack;
  p.tau_a = std::move(tau_a);
  return p;
}

bool ApproxParams::condition_holds() const {
  return std::pow(2.0, n - mu) + 2 < std::ldexp(1.0, n) && nu < theta;
}

std::size_t WeightedComplex::a_count() const {
  return static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), true));
}

std::size_t WeightedComplex::k_components() const {
  std::vector<std::pair<std::size_t, std::size_t>> k;
  for (const auto& e : edges)
    if (e.in_k) k.emplace_back(e.u, e.v);
  return components(vertices.size(), k, in_a);
}

std::size_t WeightedComplex::l_components() const {
  std::vector<std::pair<std::size_t, std::size_t>> l;
  for (const auto& e : edges) l.emplace_back(e.u, e.v);
  return components(vertices.size(), l, std::vector<bool>(vertices.size(), true));
}

std::vector<std::vector<std::optional<Rational>>> hop_metric(const MetricSpace& x, const IndexSet& domain,
                                                             const Rational& threshold) {
  Adjacency adj(domain.size());
  for (std::size_t a = 0; a < domain.size(); ++a)
    for (std::size_t b = 0; b < domain.size(); ++b)
      if (a != b && x(domain[a], domain[b]) < threshold) adj[a].emplace_back(b, x(domain[a], domain[b]));
  std::vector<std::vector<std::optional<Rational>>> out;
  for (std::size_t a = 0; a < domain.size(); ++a) out.push_back(dijkstra(adj, a));
  return out;
}

BuiltComplex build_complex(const MetricPair& p, const ApproxParams& params) {
  const MetricSpace& x = p.space();
  auto net_a = greedy_net(x, params.nu, {}, p.subset());
  auto net_x = greedy_net(x, params.nu, net_a.members);
  BuiltComplex out{{}, std::move(net_x), std::move(net_a), !(params.nu < x.diameter())};

  WeightedComplex& c = out.complex;
  c.vertices = out.net_x.members;
  for (std::size_t v = 0; v < c.vertices.size(); ++v) c.in_a.push_back(v < out.net_a.members.size());

  // A-intrinsic distances between A samples, used as the geodesic-within-A proxy.
  const IndexSet& a_set = p.subset();
  auto d_a = hop_metric(x, a_set, params.theta);
  auto a_pos = [&](Index i) { return static_cast<std::size_t>(std::lower_bound(a_set.begin(), a_set.end(), i) - a_set.begin()); };

  for (std::size_t u = 0; u < c.vertices.size(); ++u)
    for (std::size_t v = u + 1; v < c.vertices.size(); ++v) {
      const Rational& len = x(c.vertices[u], c.vertices[v]);
      if (!(len < params.theta)) continue;
      bool in_k = false;
      if (c.in_a[u] && c.in_a[v]) {
        const auto& intrinsic = d_a[a_pos(c.vertices[u])][a_pos(c.vertices[v])];
        in_k = intrinsic && *intrinsic <= len * (1 + params.tau_a);
      }
      c.edges.push_back({u, v, len, in_k});
    }
  return out;
}

GraphMetric graph_metric(const WeightedComplex& c, const std::vector<std::string>& labels, bool k_only) {
  const std::size_t n = c.vertices.size();
  if (n == 0) throw InputError("graph_metric: empty complex");
  Adjacency adj(n);
  for (const auto& e : c.edges) {
    if (k_only && !e.in_k) continue;
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  GraphMetric out;
  for (std::size_t s = 0; s < n; ++s) out.dist.push_back(dijkstra(adj, s));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!out.dist[a][b]) out.unreachable.emplace_back(a, b);
  if (out.unreachable.empty()) {
    std::vector<Rational> flat;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) flat.push_back(*out.dist[a][b]);
    std::vector<std::string> names;
    for (Index v : c.vertices) names.push_back(v < labels.size() ? labels[v] : "v" + std::to_string(v));
    std::vector<Index> subset;
    for (std::size_t v = 0; v < n; ++v)
      if (c.in_a[v]) subset.push_back(v);
    out.pair = MetricPair(MetricSpace::trusted(n, std::move(flat), std::move(names)), std::move(subset));
  }
  return out;
}

ScalingReport lemma23_check(const MetricPair& p, const BuiltComplex& built, const GraphMetric& gm,
                            const ApproxParams& params) {
  ScalingReport out;
  if (!gm.pair) {
    out.skipped = true;
    return out;
  }
  const auto& verts = built.complex.vertices;
  const double scale = std::pow(2.0, params.mu), slack = to_double(params.theta);
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (std::size_t b = a + 1; b < verts.size(); ++b) {
      ++out.pairs;
      const Rational& dx = p.space()(verts[a], verts[b]);
      const Rational& dl = (*gm.pair).space()(a, b);
      if (dl < dx) out.below_metric.emplace_back(a, b);
      if (!(to_double(dl) < scale * to_double(dx) + slack)) out.lemma_violations.emplace_back(a, b);
    }
  return out;
}

double coro_bound(const Rational& diameter, const ApproxParams& params) {
  return (std::pow(2.0, params.mu) - 1) * to_double(diameter) + to_double(params.theta);
}

std::vector<PipelineRow> approx_pipeline(const MetricPair& p, const std::vector<int>& ns) {
  std::vector<PipelineRow> rows;
  for (int n : ns) {
    const ApproxParams params = ApproxParams::make(n);
    PipelineRow row{n, params.mu, coro_bound(p.space().diameter(), params), {}, {}, "ok"};
    BuiltComplex built = build_complex(p, params);
    const auto& c = built.complex;
    row.vertices = c.vertices.size();
    row.l_edges = c.edges.size();
    row.k_edges = static_cast<std::size_t>(std::count_if(c.edges.begin(), c.edges.end(), [](const ComplexEdge& e) { return e.in_k; }));
    row.k_components = c.k_components();
    GraphMetric gm = graph_metric(c, p.space().labels());
    if (!gm.pair) {
      row.status = "disconnected";
      rows.push_back(std::move(row));
      continue;
    }
    ScalingReport lemma = lemma23_check(p, built, gm, params);
    row.metric_dominates = lemma.below_metric.empty();
    row.lemma_violations = lemma.lemma_violations.size();

    Rational worst = 0;
    Relation match;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      match.emplace_back(c.vertices[v], v);
      for (std::size_t w = v + 1; w < c.vertices.size(); ++w) {
        Rational gap = abs((*gm.pair).space()(v, w) - p.space()(c.vertices[v], c.vertices[w]));
        if (gap > worst) worst = gap;
      }
    }
    row.epsilon = worst + params.nu;
    auto report = petersen_upper_bound(p, *gm.pair, match, c.a_count(), *row.epsilon);
    row.status = status_name(report.status);
    if (report.ok()) row.estimate = *report.bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

MetricSpace circle_samples(std::size_t count, const Rational& circumference) {
  if (count == 0) throw InputError("circle_samples: need at least one point");
  if (!(circumference > 0)) throw InputError("circle_samples: circumference must be positive");
  const Rational step = circumference / Rational(static_cast<long>(count));
  std::vector<Rational> flat(count * count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      flat[i * count + j] = step * Rational(static_cast<long>(std::min(gap, count - gap)));
    }
  return MetricSpace::trusted(count, std::move(flat));
}

IndexSet quarter_arc(std::size_t count) { return full_index_set(count / 4 + 1); }

MetricSpace grid_samples(std::size_t w, std::size_t h, const Rational& spacing) {
  if (w == 0 || h == 0) throw InputError("grid_samples: empty grid");
  if (!(spacing > 0)) throw InputError("grid_samples: spacing must be positive");
  const std::size_t n = w * h;
  std::vector<Rational> flat(n * n);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("g" + std::to_string(a % w) + "_" + std::to_string(a / w));
    for (std::size_t b = 0; b < n; ++b) {
      long dx = std::labs(static_cast<long>(a % w) - static_cast<long>(b % w));
      long dy = std::labs(static_cast<long>(a / w) - static_cast<long>(b / w));
      flat[a * n + b] = spacing * Rational(dx + dy);
    }
  }
  return MetricSpace::trusted(n, std::move(flat), std::move(labels));
}

MetricSpace square_boundary(std::size_t per_side, const Rational& side) {
  if (per_side == 0) throw InputError("square_boundary: need at least one sample per side");
  return circle_samples(4 * per_side, side * 4);
}

MetricSpace weighted_graph_metric(std::size_t n, const std::vector<std::tuple<Index, Index, Rational>>& edges) {
  if (n == 0) throw InputError("weighted_graph_metric: empty graph");
  Adjacency adj(n);
  for (const auto& [u, v, w] : edges) {
    if (u >= n || v >= n) throw InputError("weighted_graph_metric: vertex out of range");
    if (u == v) throw InputError("weighted_graph_metric: self-loop");
    if (!(w > 0)) throw InputError("weighted_graph_metric: edge lengths must be positive");
    adj[u].emplace_back(v, w);
    adj[v].emplace_back(u, w);
  }
  std::vector<Rational> flat;
  for (std::size_t s = 0; s < n; ++s) {
    auto dist = dijkstra(adj, s);
    for (std::size_t t = 0; t < n; ++t) {
      if (!dist[t]) throw InputError("weighted_graph_metric: graph is disconnected");
      flat.push_back(*dist[t]);
    }
  }
  return MetricSpace::trusted(n, std::move(flat));
}

}  // namespace mpgh
