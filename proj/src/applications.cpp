#include "mpgh/applications.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mpgh/kernels/kernels.hpp"

namespace mpgh {

Rational hypernet_weight(const MetricSpace& x, Index a, Index b, Index a2, Index b2) {
  return (x(a, a2) + x(b, b2)) / 2;
}

HypernetResult hypernet_distortion(const PairCorrespondence& r) {
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  const Relation& full = r.relation();
  const Relation sub = r.restricted();
  HypernetResult out;
  out.product_size = full.size() * sub.size();
  for (const auto& [x1, y1] : full)
    for (const auto& [a1, b1] : sub)
      for (const auto& [x2, y2] : full)
        for (const auto& [a2, b2] : sub) {
          Rational gap = abs(hypernet_weight(x, x1, a1, x2, a2) - hypernet_weight(y, y1, b1, y2, b2));
          if (gap > out.dis_net) out.dis_net = gap;
        }
  out.dis = distortion(r).dis;
  return out;
}

namespace {

/// Largest d_X - d_Y and largest d_Y - d_X over pairs of elements of r.
std::pair<Rational, Rational> signed_sups(const Relation& r, const MetricSpace& x, const MetricSpace& y) {
  Rational up = 0, down = 0;
  for (const auto& [a, b] : r)
    for (const auto& [c, d] : r) {
      Rational g = x(a, c) - y(b, d);
      if (g > up) up = g;
      if (-g > down) down = -g;
    }
  return {up, down};
}

}  // namespace

HypernetResult hypernet_distortion(const TupleCorrespondence& r) {
  const auto& x = r.left().space();
  const auto& y = r.right().space();
  HypernetResult out;
  out.dis = distortion(r).dis;
  auto [up, down] = signed_sups(r.relation(), x, y);
  out.product_size = r.relation().size();
  const std::size_t k = r.left().length();
  for (std::size_t l = 0; l < k; ++l) {
    const Relation level = restrict_relation(r.relation(), r.left().chain()[l], r.right().chain()[l]);
    auto [u, d] = signed_sups(level, x, y);
    up += u;
    down += d;
    out.product_size *= level.size();
  }
  out.dis_net = std::max(up, down) / Rational(static_cast<long>(k));
  return out;
}

std::optional<Rational> TildeSandwich::ratio() const {
  if (sgn(tilde) == 0) return std::nullopt;
  return Rational(sum / tilde);
}

TildeSandwich tilde_sandwich(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg) {
  return {exact_tilde_gh(p, q, cfg).value, exact_pair_gh(p, q, cfg).value};
}

// ---------------------------------------------------------------------------

void EmbeddedComplex::validate() const {
  if (dim == 0) throw InputError("embedded complex: dimension must be positive");
  if (dim > 16) throw InputError("embedded complex: ambient dimension above 16 is not supported");
  if (simplices.empty()) throw InputError("embedded complex: no simplices");
  for (const auto& c : coords) {
    if (c.size() != dim) throw InputError("embedded complex: coordinate length does not match dim");
    for (double v : c)
      if (!std::isfinite(v)) throw InputError("embedded complex: non-finite coordinate");
  }
  for (const auto& s : simplices) {
    if (s.empty() || s.size() > 3) throw InputError("embedded complex: only simplices of dimension 0..2 are supported");
    for (Index v : s)
      if (v >= coords.size()) throw InputError("embedded complex: simplex vertex out of range");
  }
  for (std::size_t l = 0; l < filtration.size(); ++l) {
    if (filtration[l].empty()) throw InputError("embedded complex: empty filtration level");
    for (std::size_t s : filtration[l])
      if (s >= simplices.size()) throw InputError("embedded complex: filtration simplex out of range");
    if (l > 0) {
      std::vector<std::size_t> prev = filtration[l - 1], cur = filtration[l];
      std::sort(prev.begin(), prev.end());
      std::sort(cur.begin(), cur.end());
      if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
        throw InputError("embedded complex: filtration level " + std::to_string(l) + " does not contain level " +
                         std::to_string(l - 1));
    }
  }
}

EmbeddedComplex EmbeddedComplex::level(std::size_t l) const {
  if (l >= filtration.size()) throw InputError("embedded complex: filtration level out of range");
  EmbeddedComplex out{dim, coords, {}, {}};
  for (std::size_t s : filtration[l]) out.simplices.push_back(simplices[s]);
  return out;
}

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double simplex_diameter(const EmbeddedComplex& c, const std::vector<Index>& s) {
  double d = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) d = std::max(d, distance(c.coords[s[i]], c.coords[s[j]]));
  return d;
}

/// Level at which lattice coordinate i (out of 2^depth) first appears under halving.
std::size_t first_level(std::size_t i, std::size_t depth) {
  if (i == 0) return 0;
  const std::size_t tz = static_cast<std::size_t>(std::countr_zero(i));
  return tz >= depth ? 0 : depth - tz;
}

/// Structure-of-arrays samples with the refinement level each one first appears at.
struct Samples {
  std::vector<std::vector<double>> coords;  // dim rows
  std::vector<std::size_t> level;

  void add(const std::vector<double>& p, std::size_t lvl) {
    for (std::size_t k = 0; k < p.size(); ++k) coords[k].push_back(p[k]);
    level.push_back(lvl);
  }
};

Samples sample(const EmbeddedComplex& c, std::size_t depth) {
  Samples s;
  s.coords.resize(c.dim);
  const std::size_t n = std::size_t{1} << depth;
  std::vector<double> p(c.dim);
  for (const auto& simplex : c.simplices) {
    const auto& a = c.coords[simplex[0]];
    if (simplex.size() == 1) {
      s.add(a, 0);
      continue;
    }
    const auto& b = c.coords[simplex[1]];
    if (simplex.size() == 2) {
      for (std::size_t i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n);
        for (std::size_t k = 0; k < c.dim; ++k) p[k] = a[k] + t * (b[k] - a[k]);
        s.add(p, first_level(i, depth));
      }
      continue;
    }
    const auto& cc = c.coords[simplex[2]];
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) {
        const double u = static_cast<double>(i) / static_cast<double>(n), v = static_cast<double>(j) / static_cast<double>(n);
        for (std::size_t k = 0; k < c.dim; ++k) p[k] = a[k] + u * (b[k] - a[k]) + v * (cc[k] - a[k]);
        s.add(p, std::max(first_level(i, depth), first_level(j, depth)));
      }
  }
  return s;
}

/// Per-level maxima of the distance from samples of `from` to the realization of `to`.
std::vector<double> directed_levels(const EmbeddedComplex& from, const EmbeddedComplex& to, std::size_t depth) {
  Samples s = sample(from, depth);
  const std::size_t count = s.level.size();
  std::vector<const double*> rows;
  for (const auto& r : s.coords) rows.push_back(r.data());
  const kernels::PointBatch batch{rows.data(), from.dim, count};
  std::vector<double> best(count, std::numeric_limits<double>::infinity());
  for (const auto& simplex : to.simplices) {
    const double* a = to.coords[simplex[0]].data();
    if (simplex.size() == 1)
      kernels::min_dist2_point(batch, a, best.data());
    else if (simplex.size() == 2)
      kernels::min_dist2_segment(batch, a, to.coords[simplex[1]].data(), best.data());
    else
      kernels::min_dist2_triangle(batch, a, to.coords[simplex[1]].data(), to.coords[simplex[2]].data(), best.data());
  }
  std::vector<double> out(depth + 1, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = std::sqrt(best[i]);
    for (std::size_t l = s.level[i]; l <= depth; ++l) out[l] = std::max(out[l], d);
  }
  return out;
}

}  // namespace

HausdorffInterval realization_hausdorff(const EmbeddedComplex& a, const EmbeddedComplex& b, double h) {
  if (!(h > 0) || !std::isfinite(h)) throw InputError("realization_hausdorff: mesh must be positive");
  a.validate();
  b.validate();
  if (a.dim != b.dim) throw InputError("realization_hausdorff: ambient dimensions differ");
  double diam = 0;
  for (const auto* c : {&a, &b})
    for (const auto& s : c->simplices) diam = std::max(diam, simplex_diameter(*c, s));
  std::size_t depth = 0;
  while (std::ldexp(diam, -static_cast<int>(depth)) > h) {
    if (++depth > 24) throw InputError("realization_hausdorff: mesh too fine for the complex size");
  }
  const auto ab = directed_levels(a, b, depth);
  const auto ba = directed_levels(b, a, depth);
  HausdorffInterval out;
  out.levels = depth + 1;
  out.upper = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l <= depth; ++l) {
    const double lower = std::max(ab[l], ba[l]);
    out.lower = std::max(out.lower, lower);
    out.upper = std::min(out.upper, lower + std::ldexp(diam, -static_cast<int>(l)));
  }
  out.samples = sample(a, depth).level.size() + sample(b, depth).level.size();
  return out;
}

HausdorffInterval filtration_distance(const EmbeddedComplex& a, const EmbeddedComplex& b, double h) {
  a.validate();
  b.validate();
  if (a.filtration.empty() || b.filtration.empty()) throw InputError("filtration_distance: missing filtration");
  if (a.filtration.size() != b.filtration.size()) throw InputError("filtration_distance: filtration lengths differ");
  HausdorffInterval total;
  for (std::size_t l = 0; l < a.filtration.size(); ++l) {
    auto part = realization_hausdorff(a.level(l), b.level(l), h);
    total.lower += part.lower;
    total.upper += part.upper;
    total.levels = std::max(total.levels, part.levels);
    total.samples += part.samples;
  }
  return total;
}

// ---------------------------------------------------------------------------

Densified rational_densify(const MetricPair& p, unsigned long q) {
  if (q == 0) throw InputError("rational_densify: q must be positive");
  const MetricSpace& x = p.space();
  const std::size_t n = x.size();
  const mpz_class qz(q);
  std::vector<Rational> flat(n * n);
  Rational s_full = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      // ceil((d + 1/q) q) / q
      Rational scaled = x(i, j) * Rational(qz) + 1;
      mpz_class up;
      mpz_cdiv_q(up.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      flat[i * n + j] = Rational(up, qz);
      flat[i * n + j].canonicalize();
    }
  MetricSpace out = MetricSpace::trusted(n, std::move(flat), x.labels());
  // s_full of the identity correspondence.
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      Rational gap = out(i, k) - x(i, k);
      if (gap > s_full) s_full = gap;
    }
  Rational bound = n > 1 ? Rational(4, q) : Rational(0);
  bound.canonicalize();
  return {MetricPair(std::move(out), p.subset()), bound, s_full};
}

Densified rational_densify(const BasicMetricPair<double>& p, unsigned long q) {
  const auto& x = p.space();
  Matrix<Rational> m(x.size(), std::vector<Rational>(x.size()));
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = 0; j < x.size(); ++j) m[i][j] = from_double(x(i, j));
  // Exact conversion can expose float-level asymmetry or triangle slack; validate after symmetrizing.
  for (Index i = 0; i < x.size(); ++i)
    for (Index j = i + 1; j < x.size(); ++j) m[i][j] = m[j][i] = m[i][j] > m[j][i] ? m[i][j] : m[j][i];
  auto space = MetricSpace::trusted(x.size(), [&] {
    std::vector<Rational> flat;
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
  }(), x.labels());
  return rational_densify(MetricPair(std::move(space), p.subset()), q);
}

}  // namespace mpgh
