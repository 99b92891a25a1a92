#include "mpgh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "mpgh/simplex.hpp"

namespace mpgh {

namespace {

using Pattern = std::vector<std::pair<unsigned char, unsigned char>>;

const std::vector<Pattern>& minimal_patterns(std::size_t a, std::size_t b) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Pattern>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({a, b});
  if (it != cache.end()) return it->second;

  std::set<Pattern> found;
  std::vector<std::size_t> f(a, 0), g(b, 0);
  // Odometer over all f: [a] -> [b] and g: [b] -> [a].
  for (;;) {
    Pattern r;
    for (std::size_t i = 0; i < a; ++i) r.emplace_back(i, f[i]);
    for (std::size_t j = 0; j < b; ++j) r.emplace_back(g[j], j);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    std::vector<int> deg_l(a, 0), deg_r(b, 0);
    for (auto [x, y] : r) ++deg_l[x], ++deg_r[y];
    bool minimal = true;
    for (auto [x, y] : r)
      if (deg_l[x] > 1 && deg_r[y] > 1) minimal = false;
    if (minimal) found.insert(std::move(r));

    std::size_t pos = 0;
    for (; pos < a + b; ++pos) {
      auto& digit = pos < a ? f[pos] : g[pos - a];
      const std::size_t radix = pos < a ? b : a;
      if (++digit < radix) break;
      digit = 0;
    }
    if (pos == a + b) break;
  }
  return cache.emplace(std::make_pair(a, b), std::vector<Pattern>(found.begin(), found.end())).first->second;
}

bool preserves(const MetricSpace& x, const std::vector<IndexSet>& lx, const MetricSpace& y,
               const std::vector<IndexSet>& ly, const std::vector<Index>& perm) {
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = i + 1; j < x.size(); ++j)
      if (x(i, j) != y(perm[i], perm[j])) return false;
  for (std::size_t l = 0; l < lx.size(); ++l) {
    IndexSet image;
    for (Index i : lx[l]) image.push_back(perm[i]);
    if (normalize_index_set(std::move(image)) != ly[l]) return false;
  }
  return true;
}

/// Levels of a tuple as the oracle sees them: the full space first, then the chain.
std::vector<IndexSet> levels_of(const MetricTuple& p) {
  std::vector<IndexSet> out{full_index_set(p.size())};
  out.insert(out.end(), p.chain().begin(), p.chain().end());
  return out;
}

struct Problem {
  const MetricSpace& x;
  const MetricSpace& y;
  std::vector<IndexSet> lx, ly;
  OracleObjective objective;
  std::size_t n, m, cells;
  std::vector<Rational> diff;            // |d_X - d_Y| between grid cells
  std::vector<std::vector<Relation>> candidates;  // minimal correspondences per level
  std::vector<Rational> half_dis_flat;   // per level, per candidate
  std::vector<std::size_t> level_offset;

  Problem(const MetricSpace& xs, const MetricSpace& ys, std::vector<IndexSet> lxs, std::vector<IndexSet> lys,
          OracleObjective obj)
      : x(xs), y(ys), lx(std::move(lxs)), ly(std::move(lys)), objective(obj), n(xs.size()), m(ys.size()),
        cells(n * m) {
    diff.resize(cells * cells);
    for (std::size_t c = 0; c < cells; ++c)
      for (std::size_t e = 0; e < cells; ++e) diff[c * cells + e] = abs(x(c / m, e / m) - y(c % m, e % m));
    for (std::size_t l = 0; l < lx.size(); ++l) {
      std::vector<Relation> list;
      for (const auto& pat : minimal_patterns(lx[l].size(), ly[l].size())) {
        Relation r;
        for (auto [a, b] : pat) r.emplace_back(lx[l][a], ly[l][b]);
        list.push_back(normalize_relation(std::move(r)));
      }
      level_offset.push_back(half_dis_flat.size());
      for (const auto& r : list) half_dis_flat.push_back(cross(r, r) / 2);
      candidates.push_back(std::move(list));
    }
  }

  std::size_t levels() const { return lx.size(); }
  const Rational& d(std::size_t c, std::size_t e) const { return diff[c * cells + e]; }
  const Rational& half_dis(std::size_t l, std::size_t i) const { return half_dis_flat[level_offset[l] + i]; }

  Rational cross(const Relation& r, const Relation& s) const {
    Rational best = 0;
    for (const auto& [a, b] : r)
      for (const auto& [c, e] : s) {
        const Rational& v = d(a * m + b, c * m + e);
        if (v > best) best = v;
      }
    return best;
  }
};

/// min sum t_l subject to t_l >= a_l and t_l + t_m >= c_lm; returns the radii.
std::vector<Rational> radii_lp(const std::vector<Rational>& a, const std::vector<std::vector<Rational>>& c) {
  const std::size_t k = a.size();
  LinearProgram lp;
  for (std::size_t l = 0; l < k; ++l) {
    lp.add_variable("t" + std::to_string(l));
    lp.objective[l] = 1;
  }
  for (std::size_t l = 0; l < k; ++l) {
    lp.add_constraint({{l, Rational(1)}}, Sense::kGreaterEqual, a[l]);
    for (std::size_t q = l + 1; q < k; ++q)
      lp.add_constraint({{l, Rational(1)}, {q, Rational(1)}}, Sense::kGreaterEqual, c[l][q]);
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) throw std::logic_error("radius program not optimal");
  return res.point;
}

struct Evaluation {
  Rational value;
  std::vector<Rational> radii;
};

/// Optimal radii for one tuple of correspondences (reduced engine).
Evaluation evaluate_reduced(const Problem& pb, const std::vector<std::size_t>& pick) {
  const std::size_t k = pb.levels();
  std::vector<Rational> a(k);
  for (std::size_t l = 0; l < k; ++l) a[l] = pb.half_dis(l, pick[l]);
  std::vector<std::vector<Rational>> c(k, std::vector<Rational>(k));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t q = l + 1; q < k; ++q)
      c[l][q] = c[q][l] = pb.cross(pb.candidates[l][pick[l]], pb.candidates[q][pick[q]]);

  Evaluation ev;
  if (pb.objective == OracleObjective::kMax) {
    Rational t = 0;
    for (std::size_t l = 0; l < k; ++l) {
      if (a[l] > t) t = a[l];
      for (std::size_t q = l + 1; q < k; ++q)
        if (c[l][q] / 2 > t) t = c[l][q] / 2;
    }
    ev.value = t;
    ev.radii.assign(k, t);
  } else if (k <= 2) {
    ev.radii = a;
    if (k == 2 && a[0] + a[1] < c[0][1]) ev.radii[0] = c[0][1] - a[1];
    for (const auto& r : ev.radii) ev.value += r;
  } else {
    ev.radii = radii_lp(a, c);
    for (const auto& r : ev.radii) ev.value += r;
  }
  return ev;
}

/// Lower bound used for pruning: the diagonal terms alone.
Rational reduced_lower_bound(const Problem& pb, const std::vector<std::size_t>& pick) {
  Rational lb = 0;
  for (std::size_t l = 0; l < pb.levels(); ++l) {
    const Rational& a = pb.half_dis(l, pick[l]);
    if (pb.objective == OracleObjective::kSum)
      lb += a;
    else if (a > lb)
      lb = a;
  }
  return lb;
}

struct LpEvaluation {
  Evaluation ev;
  Matrix<Rational> delta;
};

/// The full program: every cross distance is a variable.
LpEvaluation evaluate_lp(const Problem& pb, const std::vector<std::size_t>& pick) {
  const std::size_t n = pb.n, m = pb.m, k = pb.levels();
  LinearProgram lp;
  for (std::size_t c = 0; c < pb.cells; ++c) lp.add_variable("d" + std::to_string(c / m) + "_" + std::to_string(c % m));
  std::vector<std::size_t> t(k);
  for (std::size_t l = 0; l < k; ++l) t[l] = lp.add_variable("t" + std::to_string(l));
  std::optional<std::size_t> top;
  if (pb.objective == OracleObjective::kMax) {
    top = lp.add_variable("T");
    lp.objective[*top] = 1;
  } else {
    for (std::size_t l = 0; l < k; ++l) lp.objective[t[l]] = 1;
  }
  const Rational one(1), minus(-1);
  auto v = [&](Index i, Index j) { return i * m + j; };
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i)
      for (Index i2 = 0; i2 < n; ++i2) {
        if (i == i2) continue;
        lp.add_constraint({{v(i, j), one}, {v(i2, j), minus}}, Sense::kLessEqual, pb.x(i, i2));
        if (i < i2) lp.add_constraint({{v(i, j), one}, {v(i2, j), one}}, Sense::kGreaterEqual, pb.x(i, i2));
      }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index j2 = 0; j2 < m; ++j2) {
        if (j == j2) continue;
        lp.add_constraint({{v(i, j), one}, {v(i, j2), minus}}, Sense::kLessEqual, pb.y(j, j2));
        if (j < j2) lp.add_constraint({{v(i, j), one}, {v(i, j2), one}}, Sense::kGreaterEqual, pb.y(j, j2));
      }
  for (std::size_t l = 0; l < k; ++l) {
    for (const auto& [a, b] : pb.candidates[l][pick[l]])
      lp.add_constraint({{v(a, b), one}, {t[l], minus}}, Sense::kLessEqual, Rational(0));
    if (top) lp.add_constraint({{*top, one}, {t[l], minus}}, Sense::kGreaterEqual, Rational(0));
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) throw std::logic_error("witness program not optimal");
  LpEvaluation out;
  out.ev.value = res.value;
  for (std::size_t l = 0; l < k; ++l) out.ev.radii.push_back(res.point[t[l]]);
  out.delta.assign(n, std::vector<Rational>(m));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) out.delta[i][j] = res.point[v(i, j)];
  return out;
}

/// Gluing of the chosen correspondences with edge weights u(e) = min t_l over levels containing e.
Matrix<Rational> glue(const Problem& pb, const std::vector<std::size_t>& pick, const std::vector<Rational>& radii) {
  std::map<std::pair<Index, Index>, Rational> weight;
  for (std::size_t l = 0; l < pb.levels(); ++l)
    for (const auto& e : pb.candidates[l][pick[l]]) {
      auto it = weight.find(e);
      if (it == weight.end())
        weight.emplace(e, radii[l]);
      else if (radii[l] < it->second)
        it->second = radii[l];
    }
  Matrix<Rational> delta(pb.n, std::vector<Rational>(pb.m));
  for (Index i = 0; i < pb.n; ++i)
    for (Index j = 0; j < pb.m; ++j) {
      std::optional<Rational> best;
      for (const auto& [e, u] : weight) {
        Rational val = pb.x(i, e.first) + u + pb.y(e.second, j);
        if (!best || val < *best) best = std::move(val);
      }
      delta[i][j] = *best;
    }
  return delta;
}

struct Best {
  std::optional<Rational> value;
  std::vector<std::size_t> pick;
  std::size_t evaluated = 0;
  void offer(const Rational& v, const std::vector<std::size_t>& p) {
    if (!value || v < *value || (v == *value && p < pick)) {
      value = v;
      pick = p;
    }
  }
};

OracleResult solve(const MetricSpace& x, const MetricSpace& y, std::vector<IndexSet> lx, std::vector<IndexSet> ly,
                   const std::vector<std::vector<Index>>& aut_x, const std::vector<std::vector<Index>>& aut_y,
                   double space_size, const OracleConfig& cfg, OracleObjective objective) {
  if (cfg.threads == 0) throw InputError("oracle: thread count must be positive");
  if (!(space_size <= cfg.budget))
    throw BudgetExceeded("witness enumeration size " + std::to_string(space_size) + " exceeds budget " +
                         std::to_string(cfg.budget));
  Problem pb(x, y, std::move(lx), std::move(ly), objective);
  const std::size_t k = pb.levels();

  // Symmetry: the value is invariant under (sigma, tau) acting on all levels at
  // once, so the first level may be restricted to orbit representatives.
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < pb.candidates[0].size(); ++i) {
    const Relation& r = pb.candidates[0][i];
    bool canonical = true;
    if (cfg.symmetry_reduction)
      for (const auto& s : aut_x) {
        for (const auto& t : aut_y) {
          Relation img;
          for (const auto& [a, b] : r) img.emplace_back(s[a], t[b]);
          if (normalize_relation(std::move(img)) < r) {
            canonical = false;
            break;
          }
        }
        if (!canonical) break;
      }
    if (canonical) roots.push_back(i);
  }

  auto run_root = [&](std::size_t root, Best& best) {
    std::vector<std::size_t> pick(k, 0);
    pick[0] = root;
    for (;;) {
      bool skip = false;
      if (cfg.engine == OracleEngine::kReduced && best.value && !(reduced_lower_bound(pb, pick) < *best.value))
        skip = true;
      if (!skip) {
        ++best.evaluated;
        Rational value = cfg.engine == OracleEngine::kReduced ? evaluate_reduced(pb, pick).value
                                                               : evaluate_lp(pb, pick).ev.value;
        best.offer(value, pick);
      }
      std::size_t l = k - 1;
      for (; l >= 1; --l) {
        if (++pick[l] < pb.candidates[l].size()) break;
        pick[l] = 0;
      }
      if (l == 0) return;
    }
  };

  // Each root is searched on its own, seeded with the same incumbent, so the
  // pruning and the work counts do not depend on the thread count.
  Best seed;
  {
    std::vector<std::size_t> first(k, 0);
    first[0] = roots.front();
    seed.offer(cfg.engine == OracleEngine::kReduced ? evaluate_reduced(pb, first).value
                                                    : evaluate_lp(pb, first).ev.value,
               first);
  }
  std::vector<Best> partial(roots.size(), seed);
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(roots.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) run_root(roots[i], partial[i]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < roots.size(); i += threads) run_root(roots[i], partial[i]);
      });
    for (auto& th : pool) th.join();
  }
  Best best = seed;
  best.evaluated = 1;
  for (const auto& b : partial) {
    best.evaluated += b.evaluated;
    if (b.value) best.offer(*b.value, b.pick);
  }

  Evaluation ev;
  Matrix<Rational> delta;
  if (cfg.engine == OracleEngine::kReduced) {
    ev = evaluate_reduced(pb, best.pick);
    delta = glue(pb, best.pick, ev.radii);
  } else {
    auto lp = evaluate_lp(pb, best.pick);
    ev = std::move(lp.ev);
    delta = std::move(lp.delta);
  }

  OracleResult out{ev.value, CrossMetric(x, y, delta), {}, {}, {}, best.evaluated, space_size};
  auto nearest = [&](Index i, const IndexSet& targets, bool row) {
    std::size_t pos = 0;
    for (std::size_t c = 1; c < targets.size(); ++c) {
      const Rational& cur = row ? delta[i][targets[c]] : delta[targets[c]][i];
      const Rational& bst = row ? delta[i][targets[pos]] : delta[targets[pos]][i];
      if (cur < bst) pos = c;
    }
    return pos;
  };
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Index> phi, psi;
    for (Index a : pb.lx[l]) phi.push_back(nearest(a, pb.ly[l], true));
    for (Index b : pb.ly[l]) psi.push_back(nearest(b, pb.lx[l], false));
    if (l == 0) {
      out.witness.f = phi;
      out.witness.g = psi;
    } else {
      out.witness.phi.push_back(std::move(phi));
      out.witness.psi.push_back(std::move(psi));
    }
    out.radii.push_back(cross_hausdorff(out.delta, pb.lx[l], pb.ly[l]));
    out.correspondences.push_back(pb.candidates[l][best.pick[l]]);
  }
  return out;
}

double raw_space(const std::vector<IndexSet>& lx, const std::vector<IndexSet>& ly) {
  double total = 1;
  for (std::size_t l = 0; l < lx.size(); ++l) {
    const double a = static_cast<double>(lx[l].size()), b = static_cast<double>(ly[l].size());
    total *= std::pow(b, a) * std::pow(a, b);
  }
  return total;
}

}  // namespace

std::vector<Relation> minimal_correspondences(const IndexSet& s, const IndexSet& t) {
  if (s.empty() || t.empty()) throw InputError("minimal_correspondences: empty set");
  std::vector<Relation> out;
  for (const auto& pat : minimal_patterns(s.size(), t.size())) {
    Relation r;
    for (auto [a, b] : pat) r.emplace_back(s[a], t[b]);
    out.push_back(normalize_relation(std::move(r)));
  }
  return out;
}

std::vector<std::vector<Index>> automorphisms(const MetricTuple& p, std::size_t limit) {
  std::vector<Index> perm = full_index_set(p.size());
  if (p.size() > limit) return {perm};
  const auto levels = p.chain();
  std::vector<std::vector<Index>> out;
  do {
    if (preserves(p.space(), levels, p.space(), levels, perm)) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool isomorphic(const MetricTuple& p, const MetricTuple& q) {
  if (p.size() != q.size() || p.length() != q.length()) return false;
  std::vector<Index> perm = full_index_set(p.size());
  do {
    if (preserves(p.space(), p.chain(), q.space(), q.chain(), perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

double witness_space_size(const MetricTuple& p, const MetricTuple& q, bool symmetry_reduction) {
  double total = raw_space(levels_of(p), levels_of(q));
  if (symmetry_reduction)
    total /= static_cast<double>(automorphisms(p).size() * automorphisms(q).size());
  return total;
}

OracleResult exact_tuple_gh(const MetricTuple& p, const MetricTuple& q, const OracleConfig& cfg,
                            OracleObjective objective) {
  if (p.length() != q.length()) throw InputError("exact_tuple_gh: tuple length mismatch");
  std::vector<std::vector<Index>> ax{full_index_set(p.size())}, ay{full_index_set(q.size())};
  if (cfg.symmetry_reduction) {
    ax = automorphisms(p);
    ay = automorphisms(q);
  }
  const double size = raw_space(levels_of(p), levels_of(q)) / static_cast<double>(ax.size() * ay.size());
  return solve(p.space(), q.space(), levels_of(p), levels_of(q), ax, ay, size, cfg, objective);
}

OracleResult exact_pair_gh(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg) {
  return exact_tuple_gh(MetricTuple(p), MetricTuple(q), cfg, OracleObjective::kSum);
}

OracleResult exact_tilde_gh(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg) {
  return exact_tuple_gh(MetricTuple(p), MetricTuple(q), cfg, OracleObjective::kMax);
}

OracleResult exact_space_gh(const MetricSpace& x, const MetricSpace& y, const OracleConfig& cfg) {
  std::vector<IndexSet> lx{full_index_set(x.size())}, ly{full_index_set(y.size())};
  std::vector<std::vector<Index>> ax{lx[0]}, ay{ly[0]};
  if (cfg.symmetry_reduction) {
    ax = automorphisms(MetricTuple(x, {lx[0]}));
    ay = automorphisms(MetricTuple(y, {ly[0]}));
  }
  const double size = raw_space(lx, ly) / static_cast<double>(ax.size() * ay.size());
  return solve(x, y, lx, ly, ax, ay, size, cfg, OracleObjective::kSum);
}

}  // namespace mpgh
