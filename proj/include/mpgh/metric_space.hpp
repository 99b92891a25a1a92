#pragma once

// Finite metric spaces, metric pairs and tuples, admissible cross metrics on
// disjoint unions, Hausdorff distances, greedy nets and the product max-metric.
//
// Everything is templated on the scalar type: mpgh::Rational for exact work,
// double for the approximate mode. Objects are immutable after construction.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpgh/kernels/kernels.hpp"
#include "mpgh/scalar.hpp"

namespace mpgh {

using Index = std::size_t;
/// Sorted, duplicate-free list of point indices.
using IndexSet = std::vector<Index>;

template <class T>
using Matrix = std::vector<std::vector<T>>;

IndexSet normalize_index_set(std::vector<Index> indices);
IndexSet full_index_set(std::size_t n);
bool is_subset(const IndexSet& inner, const IndexSet& outer);
bool contains(const IndexSet& set, Index i);

struct MetricViolation {
  enum class Kind { kAsymmetric, kNonzeroDiagonal, kNonpositive, kTriangle };
  Kind kind;
  Index i = 0, j = 0, k = 0;
};

std::string describe(const MetricViolation& v);

template <class T>
class BasicMetricSpace;

template <class T>
struct MetricValidation {
  std::optional<BasicMetricSpace<T>> space;
  std::vector<MetricViolation> violations;
  bool ok() const { return space.has_value(); }
};

template <class T>
MetricValidation<T> validate_metric(const Matrix<T>& m, std::vector<std::string> labels = {},
                                    double tol = kDefaultTolerance);

template <class T>
class BasicMetricSpace {
 public:
  /// Validates and throws InputError listing the first violations.
  static BasicMetricSpace make(const Matrix<T>& m, std::vector<std::string> labels = {},
                               double tol = kDefaultTolerance) {
    auto result = validate_metric<T>(m, std::move(labels), tol);
    if (!result.ok()) {
      std::string msg = "invalid metric:";
      for (std::size_t i = 0; i < result.violations.size() && i < 5; ++i)
        msg += " " + describe(result.violations[i]) + ";";
      throw InputError(msg);
    }
    return std::move(*result.space);
  }

  /// Builds without checking; callers guarantee the metric axioms.
  static BasicMetricSpace trusted(std::size_t n, std::vector<T> flat, std::vector<std::string> labels = {}) {
    BasicMetricSpace s;
    s.n_ = n;
    s.dist_ = std::move(flat);
    s.labels_ = labels.empty() ? default_labels(n) : std::move(labels);
    return s;
  }

  std::size_t size() const { return n_; }
  const T& operator()(Index i, Index j) const { return dist_[i * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<T>& flat() const { return dist_; }

  Matrix<T> matrix() const {
    Matrix<T> m(n_, std::vector<T>(n_));
    for (Index i = 0; i < n_; ++i)
      for (Index j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
    return m;
  }

  T diameter(const IndexSet& subset) const {
    T best = T(0);
    for (Index a : subset)
      for (Index b : subset)
        if ((*this)(a, b) > best) best = (*this)(a, b);
    return best;
  }
  T diameter() const { return diameter(full_index_set(n_)); }

  /// The subspace on `subset`, relabeled 0..|subset|-1.
  BasicMetricSpace restrict_to(const IndexSet& subset) const {
    std::vector<T> flat;
    flat.reserve(subset.size() * subset.size());
    std::vector<std::string> labels;
    for (Index a : subset) {
      labels.push_back(labels_[a]);
      for (Index b : subset) flat.push_back((*this)(a, b));
    }
    return trusted(subset.size(), std::move(flat), std::move(labels));
  }

  /// Relabeling: point i of the result is point perm[i] of this space.
  BasicMetricSpace permuted(std::span<const Index> perm) const { return restrict_to_ordered(perm); }

  friend bool operator==(const BasicMetricSpace& a, const BasicMetricSpace& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_;
  }

  static std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
    return out;
  }

 private:
  BasicMetricSpace restrict_to_ordered(std::span<const Index> order) const {
    std::vector<T> flat;
    std::vector<std::string> labels;
    for (Index a : order) {
      labels.push_back(labels_[a]);
      for (Index b : order) flat.push_back((*this)(a, b));
    }
    return trusted(order.size(), std::move(flat), std::move(labels));
  }

  std::size_t n_ = 0;
  std::vector<T> dist_;
  std::vector<std::string> labels_;
};

template <class T>
MetricValidation<T> validate_metric(const Matrix<T>& m, std::vector<std::string> labels, double tol) {
  using Ops = ScalarOps<T>;
  const std::size_t n = m.size();
  if (n == 0) throw InputError("metric matrix is empty");
  for (const auto& row : m)
    if (row.size() != n) throw InputError("metric matrix is not square");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (m[i][j] < T(0)) throw InputError("negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (!labels.empty() && labels.size() != n) throw InputError("label count does not match matrix size");

  MetricValidation<T> out;
  auto& v = out.violations;
  for (Index i = 0; i < n; ++i) {
    if (!Ops::is_zero(m[i][i], tol)) v.push_back({MetricViolation::Kind::kNonzeroDiagonal, i, i, 0});
    for (Index j = i + 1; j < n; ++j) {
      if (!Ops::eq(m[i][j], m[j][i], tol)) v.push_back({MetricViolation::Kind::kAsymmetric, i, j, 0});
      if (!Ops::positive(m[i][j], tol) || !Ops::positive(m[j][i], tol))
        v.push_back({MetricViolation::Kind::kNonpositive, i, j, 0});
    }
  }
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        if (i == k || i == j || j == k) continue;
        if (!Ops::le(m[i][k], m[i][j] + m[j][k], tol)) v.push_back({MetricViolation::Kind::kTriangle, i, j, k});
      }
  if (v.empty()) {
    std::vector<T> flat;
    flat.reserve(n * n);
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    out.space = BasicMetricSpace<T>::trusted(n, std::move(flat), std::move(labels));
  }
  return out;
}

/// A space with one distinguished nonempty subset.
template <class T>
class BasicMetricPair {
 public:
  BasicMetricPair(BasicMetricSpace<T> space, std::vector<Index> subset)
      : space_(std::move(space)), subset_(normalize_index_set(std::move(subset))) {
    if (subset_.empty()) throw InputError("metric pair subset must be nonempty");
    if (subset_.back() >= space_.size()) throw InputError("metric pair subset index out of range");
  }

  const BasicMetricSpace<T>& space() const { return space_; }
  const IndexSet& subset() const { return subset_; }
  std::size_t size() const { return space_.size(); }
  bool in_subset(Index i) const { return contains(subset_, i); }

  friend bool operator==(const BasicMetricPair& a, const BasicMetricPair& b) {
    return a.space_ == b.space_ && a.subset_ == b.subset_;
  }

 private:
  BasicMetricSpace<T> space_;
  IndexSet subset_;
};

/// A space with a nested chain chain[0] ⊇ chain[1] ⊇ ... of nonempty subsets.
template <class T>
class BasicMetricTuple {
 public:
  BasicMetricTuple(BasicMetricSpace<T> space, std::vector<std::vector<Index>> chain) : space_(std::move(space)) {
    if (chain.empty()) throw InputError("metric tuple needs at least one subset");
    for (auto& level : chain) {
      IndexSet s = normalize_index_set(std::move(level));
      if (s.empty()) throw InputError("metric tuple subsets must be nonempty");
      if (s.back() >= space_.size()) throw InputError("metric tuple index out of range");
      if (!chain_.empty() && !is_subset(s, chain_.back()))
        throw InputError("metric tuple chain is not nested (level " + std::to_string(chain_.size()) + ")");
      chain_.push_back(std::move(s));
    }
  }

  explicit BasicMetricTuple(const BasicMetricPair<T>& pair) : BasicMetricTuple(pair.space(), {pair.subset()}) {}

  const BasicMetricSpace<T>& space() const { return space_; }
  const std::vector<IndexSet>& chain() const { return chain_; }
  std::size_t length() const { return chain_.size(); }
  std::size_t size() const { return space_.size(); }

 private:
  BasicMetricSpace<T> space_;
  std::vector<IndexSet> chain_;
};

struct CrossViolation {
  enum class Kind { kNonpositive, kLeftTriangle, kRightTriangle, kLeftSpan, kRightSpan };
  Kind kind;
  // left indices i, i2 and right indices j, j2 as relevant to the kind
  Index i = 0, i2 = 0, j = 0, j2 = 0;
};

std::string describe(const CrossViolation& v);

/// Candidate admissible metric on left ⊔ right, stored as the cross block.
template <class T>
class BasicCrossMetric {
 public:
  BasicCrossMetric(BasicMetricSpace<T> left, BasicMetricSpace<T> right, Matrix<T> cross)
      : left_(std::move(left)), right_(std::move(right)) {
    if (cross.size() != left_.size()) throw InputError("cross block row count mismatch");
    for (const auto& row : cross) {
      if (row.size() != right_.size()) throw InputError("cross block column count mismatch");
      cross_.insert(cross_.end(), row.begin(), row.end());
    }
  }

  const BasicMetricSpace<T>& left() const { return left_; }
  const BasicMetricSpace<T>& right() const { return right_; }
  const T& operator()(Index i, Index j) const { return cross_[i * right_.size() + j]; }

  Matrix<T> cross() const {
    Matrix<T> m(left_.size(), std::vector<T>(right_.size()));
    for (Index i = 0; i < left_.size(); ++i)
      for (Index j = 0; j < right_.size(); ++j) m[i][j] = (*this)(i, j);
    return m;
  }

  /// Every mixed triangle inequality plus strict positivity. With
  /// `allow_zero`, zero cross entries are accepted (admissible semimetric).
  std::vector<CrossViolation> violations(double tol = kDefaultTolerance, bool allow_zero = false) const {
    using Ops = ScalarOps<T>;
    std::vector<CrossViolation> out;
    const std::size_t n = left_.size(), m = right_.size();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j) {
        const T& c = (*this)(i, j);
        if (c < T(0) || (!allow_zero && !Ops::positive(c, tol)))
          out.push_back({CrossViolation::Kind::kNonpositive, i, 0, j, 0});
      }
    for (Index j = 0; j < m; ++j)
      for (Index i = 0; i < n; ++i)
        for (Index i2 = 0; i2 < n; ++i2) {
          if (i == i2) continue;
          if (!Ops::le((*this)(i, j), left_(i, i2) + (*this)(i2, j), tol))
            out.push_back({CrossViolation::Kind::kLeftTriangle, i, i2, j, 0});
          if (i < i2 && !Ops::le(left_(i, i2), (*this)(i, j) + (*this)(i2, j), tol))
            out.push_back({CrossViolation::Kind::kLeftSpan, i, i2, j, 0});
        }
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < m; ++j)
        for (Index j2 = 0; j2 < m; ++j2) {
          if (j == j2) continue;
          if (!Ops::le((*this)(i, j), right_(j, j2) + (*this)(i, j2), tol))
            out.push_back({CrossViolation::Kind::kRightTriangle, i, 0, j, j2});
          if (j < j2 && !Ops::le(right_(j, j2), (*this)(i, j) + (*this)(i, j2), tol))
            out.push_back({CrossViolation::Kind::kRightSpan, i, 0, j, j2});
        }
    return out;
  }

  bool valid(double tol = kDefaultTolerance, bool allow_zero = false) const {
    return violations(tol, allow_zero).empty();
  }

  /// The full (|left|+|right|)-square matrix of the disjoint union; left points first.
  Matrix<T> union_matrix() const {
    const std::size_t n = left_.size(), m = right_.size();
    Matrix<T> u(n + m, std::vector<T>(n + m, T(0)));
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) u[a][b] = left_(a, b);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) u[n + a][n + b] = right_(a, b);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < m; ++b) u[a][n + b] = u[n + b][a] = (*this)(a, b);
    return u;
  }

 private:
  BasicMetricSpace<T> left_, right_;
  std::vector<T> cross_;
};

using MetricSpace = BasicMetricSpace<Rational>;
using MetricPair = BasicMetricPair<Rational>;
using MetricTuple = BasicMetricTuple<Rational>;
using CrossMetric = BasicCrossMetric<Rational>;

// ---------------------------------------------------------------------------
// Hausdorff distances

namespace detail {

template <class T, class Dist>
T directed_hausdorff(const IndexSet& from, const IndexSet& to, Dist&& d) {
  T worst = T(0);
  for (Index s : from) {
    T best = d(s, to.front());
    for (Index t : to)
      if (d(s, t) < best) best = d(s, t);
    if (best > worst) worst = best;
  }
  return worst;
}

template <class Dist>
double directed_hausdorff_f64(const IndexSet& from, const IndexSet& to, Dist&& d) {
  std::vector<double> block;
  block.reserve(from.size() * to.size());
  for (Index s : from)
    for (Index t : to) block.push_back(d(s, t));
  return kernels::directed_hausdorff(block.data(), from.size(), to.size());
}

template <class T, class Dist>
T symmetric_hausdorff(const IndexSet& s, const IndexSet& t, Dist&& d) {
  if constexpr (std::is_same_v<T, double>) {
    double a = directed_hausdorff_f64(s, t, d);
    double b = directed_hausdorff_f64(t, s, [&](Index x, Index y) { return d(y, x); });
    return std::max(a, b);
  } else {
    T a = directed_hausdorff<T>(s, t, d);
    T b = directed_hausdorff<T>(t, s, [&](Index x, Index y) -> const T& { return d(y, x); });
    return a > b ? a : b;
  }
}

}  // namespace detail

template <class T>
T hausdorff(const BasicMetricSpace<T>& space, const IndexSet& s, const IndexSet& t) {
  if (s.empty() || t.empty()) throw InputError("hausdorff: empty subset");
  for (Index i : s)
    if (i >= space.size()) throw InputError("hausdorff: index out of range");
  for (Index i : t)
    if (i >= space.size()) throw InputError("hausdorff: index out of range");
  return detail::symmetric_hausdorff<T>(s, t, [&](Index a, Index b) -> const T& { return space(a, b); });
}

/// Hausdorff distance in left ⊔ right between S ⊆ left and T ⊆ right.
template <class T>
T cross_hausdorff(const BasicCrossMetric<T>& delta, const IndexSet& s, const IndexSet& t) {
  if (s.empty() || t.empty()) throw InputError("hausdorff: empty subset");
  return detail::symmetric_hausdorff<T>(s, t, [&](Index a, Index b) -> const T& { return delta(a, b); });
}

template <class T>
T tuple_hausdorff(const BasicCrossMetric<T>& delta, const BasicMetricTuple<T>& p, const BasicMetricTuple<T>& q) {
  if (!(p.space() == delta.left()) || !(q.space() == delta.right()))
    throw InputError("tuple_hausdorff: spaces do not match the cross metric");
  if (p.length() != q.length()) throw InputError("tuple_hausdorff: tuple length mismatch");
  T total = cross_hausdorff(delta, full_index_set(p.size()), full_index_set(q.size()));
  for (std::size_t level = 0; level < p.length(); ++level)
    total += cross_hausdorff(delta, p.chain()[level], q.chain()[level]);
  return total;
}

template <class T>
T pair_hausdorff(const BasicCrossMetric<T>& delta, const BasicMetricPair<T>& p, const BasicMetricPair<T>& q) {
  if (!(p.space() == delta.left()) || !(q.space() == delta.right()))
    throw InputError("pair_hausdorff: spaces do not match the cross metric");
  return cross_hausdorff(delta, full_index_set(p.size()), full_index_set(q.size())) +
         cross_hausdorff(delta, p.subset(), q.subset());
}

// ---------------------------------------------------------------------------
// Greedy minimal nets

template <class T>
struct NetResult {
  std::vector<Index> members;     // greedy order, seed members first
  std::vector<Index> nearest;     // per point: index into `members` of its closest member
  std::vector<T> radius;          // per point: distance to that member
  std::vector<bool> strict;       // per point: radius < nu (false means only radius <= nu)
  bool all_strict() const { return std::all_of(strict.begin(), strict.end(), [](bool b) { return b; }); }
};

/// Greedy net over `domain` (all points when empty): points are scanned in
/// index order, seed points first, and accepted when strictly farther than
/// nu from every accepted point (nu*(1-tol) in float mode).
template <class T>
NetResult<T> greedy_net(const BasicMetricSpace<T>& space, const T& nu, const IndexSet& seed,
                        const IndexSet& domain = {}, double tol = kDefaultTolerance) {
  using Ops = ScalarOps<T>;
  if (!(nu > T(0))) throw InputError("greedy_net: nu must be positive");
  const IndexSet scope = domain.empty() ? full_index_set(space.size()) : domain;
  const T threshold = Ops::kExact ? nu : T(nu * (1 - tol));

  NetResult<T> out;
  auto consider = [&](Index p) {
    if (std::find(out.members.begin(), out.members.end(), p) != out.members.end()) return;
    for (Index q : out.members)
      if (!(space(p, q) > threshold)) return;
    out.members.push_back(p);
  };
  for (Index p : seed) {
    if (p >= space.size()) throw InputError("greedy_net: seed index out of range");
    consider(p);
  }
  for (Index p : scope) consider(p);

  for (Index p : scope) {
    Index best = 0;
    for (Index m = 1; m < out.members.size(); ++m)
      if (space(p, out.members[m]) < space(p, out.members[best])) best = m;
    out.nearest.push_back(best);
    out.radius.push_back(space(p, out.members[best]));
    out.strict.push_back(out.radius.back() < nu);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Product max-metric

template <class T>
struct BasicProductSpace {
  BasicMetricSpace<T> space;
  std::size_t left_size = 0, right_size = 0;
  Index index(Index x, Index y) const { return x * right_size + y; }
  std::pair<Index, Index> coords(Index p) const { return {p / right_size, p % right_size}; }
};

template <class T>
BasicProductSpace<T> product_max_metric(const BasicMetricSpace<T>& x, const BasicMetricSpace<T>& y) {
  const std::size_t n = x.size(), m = y.size(), total = n * m;
  std::vector<T> flat(total * total);
  std::vector<std::string> labels;
  for (Index a = 0; a < total; ++a) {
    labels.push_back("(" + x.labels()[a / m] + "," + y.labels()[a % m] + ")");
    for (Index b = 0; b < total; ++b) {
      const T& dx = x(a / m, b / m);
      const T& dy = y(a % m, b % m);
      flat[a * total + b] = dx > dy ? dx : dy;
    }
  }
  return {BasicMetricSpace<T>::trusted(total, std::move(flat), std::move(labels)), n, m};
}

}  // namespace mpgh
