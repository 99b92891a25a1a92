#pragma once

// Cheap bounds on the pair Gromov-Hausdorff distance.

#include <optional>
#include <string>
#include <vector>

#include "mpgh/correspondence.hpp"
#include "mpgh/metric_space.hpp"

namespace mpgh {

template <class T>
struct DiameterBound {
  T space_term;   // |diam X - diam Y| / 2
  T subset_term;  // |diam A - diam B| / 2
  T sum() const { return space_term + subset_term; }
  T max() const { return space_term > subset_term ? space_term : subset_term; }
};

/// Both terms are lower bounds on their own Hausdorff term for every
/// admissible metric, so their sum bounds the pair distance from below.
template <class T>
DiameterBound<T> diameter_lower_bound(const BasicMetricPair<T>& p, const BasicMetricPair<T>& q) {
  using Ops = ScalarOps<T>;
  return {T(Ops::abs(T(p.space().diameter() - q.space().diameter())) / 2),
          T(Ops::abs(T(p.space().diameter(p.subset()) - q.space().diameter(q.subset()))) / 2)};
}

template <class T>
struct BoundReport {
  T lower;
  T upper;
  std::vector<std::string> methods;
  Relation lower_correspondence;     // minimizer of dis (when exhaustive)
  Relation upper_correspondence;     // correspondence whose s_full is `upper`
  std::optional<BasicCrossMetric<T>> certificate;  // classical gluing of upper_correspondence
  T certified_hausdorff;             // pair Hausdorff distance under the certificate
  bool exhaustive = false;
};

/// lower: max of the diameter bound and, when the search was exhaustive, half
/// the minimal pair distortion. upper: the smallest classical distortion found.
template <class T>
BoundReport<T> correspondence_upper_bound(const BasicMetricPair<T>& p, const BasicMetricPair<T>& q,
                                          SearchConfig cfg = {}) {
  BoundReport<T> out;
  const DiameterBound<T> diam = diameter_lower_bound(p, q);
  out.lower = diam.sum();
  out.methods.push_back("diameter");

  cfg.objective = DistortionObjective::kPair;
  auto pair_best = min_distortion(p, q, cfg);
  out.exhaustive = pair_best.optimal;
  out.lower_correspondence = pair_best.correspondence.relation();
  if (pair_best.optimal) {
    T half = pair_best.breakdown.dis / 2;
    if (half > out.lower) out.lower = half;
    out.methods.push_back("half-min-distortion");
  }

  cfg.objective = DistortionObjective::kClassical;
  auto classical_best = min_distortion(p, q, cfg);
  out.upper = classical_best.breakdown.s_full;
  out.upper_correspondence = classical_best.correspondence.relation();
  const T eta = classical_eta(classical_best.correspondence);
  out.certificate = classical_delta(classical_best.correspondence, eta);
  out.certified_hausdorff = pair_hausdorff(*out.certificate, p, q);
  out.methods.push_back("classical-gluing");
  return out;
}

enum class PetersenStatus { kOk, kUncovered, kMismatch };
const char* status_name(PetersenStatus s);

template <class T>
struct PetersenReport {
  using Status = PetersenStatus;
  Status status = Status::kOk;
  std::optional<T> bound;  // 4 eps when the hypotheses verify
  // kUncovered: which side ("X", "A", "Y", "B") and the uncovered point
  std::string side;
  Index point = 0;
  // kMismatch: positions in the match list
  std::size_t i = 0, j = 0;
  T worst_mismatch;  // max |d_X(v_i,v_j) - d_Y(w_i,w_j)| over the match
  bool ok() const { return status == Status::kOk; }
};

/// Matched eps-nets: v_i = match[i].first, w_i = match[i].second; the first
/// `prefix` entries must net A and B. Returns 2 eps per component, 4 eps in all.
template <class T>
PetersenReport<T> petersen_upper_bound(const BasicMetricPair<T>& p, const BasicMetricPair<T>& q,
                                       const Relation& match, std::size_t prefix, const T& eps,
                                       double tol = kDefaultTolerance) {
  using Ops = ScalarOps<T>;
  if (!(eps > T(0))) throw InputError("petersen_upper_bound: eps must be positive");
  if (match.empty() || prefix == 0 || prefix > match.size())
    throw InputError("petersen_upper_bound: need a nonempty match with a nonempty prefix");
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i].first >= p.size() || match[i].second >= q.size())
      throw InputError("petersen_upper_bound: match index out of range");
    if (i < prefix && (!p.in_subset(match[i].first) || !q.in_subset(match[i].second)))
      throw InputError("petersen_upper_bound: prefix entry " + std::to_string(i) + " lies outside the subsets");
  }
  auto below = [&](const T& a, const T& b) { return Ops::kExact ? a < b : a < b + tol; };

  PetersenReport<T> out;
  out.worst_mismatch = T(0);
  auto dense = [&](const BasicMetricSpace<T>& s, const IndexSet& domain, bool left, std::size_t count,
                   const char* name) {
    for (Index x : domain) {
      bool hit = false;
      for (std::size_t i = 0; i < count && !hit; ++i)
        hit = below(s(x, left ? match[i].first : match[i].second), eps);
      if (!hit) {
        out.status = PetersenReport<T>::Status::kUncovered;
        out.side = name;
        out.point = x;
        return false;
      }
    }
    return true;
  };
  if (!dense(p.space(), full_index_set(p.size()), true, match.size(), "X") ||
      !dense(p.space(), p.subset(), true, prefix, "A") ||
      !dense(q.space(), full_index_set(q.size()), false, match.size(), "Y") ||
      !dense(q.space(), q.subset(), false, prefix, "B"))
    return out;

  for (std::size_t i = 0; i < match.size(); ++i)
    for (std::size_t j = i + 1; j < match.size(); ++j) {
      T gap = Ops::abs(T(p.space()(match[i].first, match[j].first) - q.space()(match[i].second, match[j].second)));
      if (gap > out.worst_mismatch) out.worst_mismatch = gap;
      if (!below(gap, eps) && out.status == PetersenReport<T>::Status::kOk) {
        out.status = PetersenReport<T>::Status::kMismatch;
        out.i = i;
        out.j = j;
      }
    }
  if (out.ok()) out.bound = T(4) * eps;
  return out;
}

}  // namespace mpgh
