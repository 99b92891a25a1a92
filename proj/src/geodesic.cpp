#include "mpgh/geodesic.hpp"

#include <thread>

namespace mpgh {

namespace {

void check_unit(const Rational& t, bool open, const char* what) {
  const bool bad = open ? (t <= 0 || t >= 1) : (t < 0 || t > 1);
  if (bad) throw InputError(std::string(what) + ": parameter " + to_string(t) + " outside " + (open ? "(0,1)" : "[0,1]"));
}

Rational abs_diff(const Rational& a, const Rational& b) { return abs(a - b); }

}  // namespace

InterpolatedPair interpolate(const PairCorrespondence& r, const Rational& t) {
  check_unit(t, false, "interpolate");
  if (t == 0) return {{}, t, r.left()};
  if (t == 1) return {{}, t, r.right()};
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  const Relation& rel = r.relation();
  const std::size_t n = rel.size();
  std::vector<Rational> flat(n * n);
  std::vector<std::string> labels;
  std::vector<Index> subset;
  const Rational s = 1 - t;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back("(" + x.labels()[rel[a].first] + "," + y.labels()[rel[a].second] + ")");
    if (r.left().in_subset(rel[a].first) && r.right().in_subset(rel[a].second)) subset.push_back(a);
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = s * x(rel[a].first, rel[b].first) + t * y(rel[a].second, rel[b].second);
  }
  return {rel, t, MetricPair(MetricSpace::trusted(n, std::move(flat), std::move(labels)), std::move(subset))};
}

PairCorrespondence interpolation_correspondence(const PairCorrespondence& r, const InterpolatedPair& a,
                                                const InterpolatedPair& b) {
  const Relation& rel = r.relation();
  Relation out;
  for (std::size_t k = 0; k < rel.size(); ++k) {
    auto side = [&](const InterpolatedPair& g) -> Index {
      if (!g.endpoint()) return k;
      return g.t == 0 ? rel[k].first : rel[k].second;
    };
    out.emplace_back(side(a), side(b));
  }
  return PairCorrespondence::make(std::move(out), a.pair, b.pair);
}

IdentityCheck diagonal_distortion(const PairCorrespondence& r, const Rational& s, const Rational& t) {
  check_unit(s, true, "diagonal_distortion");
  check_unit(t, true, "diagonal_distortion");
  auto gs = interpolate(r, s), gt = interpolate(r, t);
  auto delta = PairCorrespondence::make(identity_relation(r.relation().size()), gs.pair, gt.pair);
  return {distortion(delta).dis, abs_diff(t, s) * distortion(r).dis};
}

IdentityCheck endpoint_distortion(const PairCorrespondence& r, const Rational& t, End end) {
  check_unit(t, true, "endpoint_distortion");
  auto g = interpolate(r, t);
  const InterpolatedPair edge{{}, Rational(end == End::kLeft ? 0 : 1), end == End::kLeft ? r.left() : r.right()};
  auto corr = end == End::kLeft ? interpolation_correspondence(r, edge, g) : interpolation_correspondence(r, g, edge);
  const Rational factor = end == End::kLeft ? t : Rational(1 - t);
  return {distortion(corr).dis, factor * distortion(r).dis};
}

std::size_t AuditReport::discrepancies() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += !e.equal();
  return n;
}

AuditReport geodesicity_audit(const PairCorrespondence& r, std::vector<Rational> grid, const OracleConfig& cfg,
                              const SearchConfig& search) {
  if (grid.empty()) throw InputError("geodesicity_audit: empty grid");
  for (const auto& t : grid) check_unit(t, false, "geodesicity_audit");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  AuditReport report;
  OracleConfig inner = cfg;
  inner.threads = 1;
  report.base = exact_pair_gh(r.left(), r.right(), inner).value;
  report.dis = distortion(r).dis;
  if (r.left().size() * r.right().size() <= search.exhaustive_limit) {
    auto best = min_distortion(r.left(), r.right(), search);
    report.optimal = best.breakdown.dis == report.dis;
  }

  std::vector<InterpolatedPair> gammas;
  for (const auto& t : grid) gammas.push_back(interpolate(r, t));
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) jobs.emplace_back(i, j);
  report.entries.resize(jobs.size());

  auto work = [&](std::size_t job) {
    auto [i, j] = jobs[job];
    AuditEntry& e = report.entries[job];
    e.s = grid[i];
    e.t = grid[j];
    e.gh = exact_pair_gh(gammas[i].pair, gammas[j].pair, inner).value;
    e.expected = abs_diff(grid[j], grid[i]) * report.base;
    e.certified = distortion(interpolation_correspondence(r, gammas[i], gammas[j])).s_full;
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < jobs.size(); k += threads) work(k);
      });
    for (auto& th : pool) th.join();
  }
  return report;
}

}  // namespace mpgh
