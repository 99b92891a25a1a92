#pragma once

// Hypernetwork weights, the max-combination sandwich, Hausdorff distances
// between geometric realizations of embedded complexes, and rational
// densification of a metric pair.

#include <optional>
#include <vector>

#include "mpgh/correspondence.hpp"
#include "mpgh/oracle.hpp"

namespace mpgh {

// ---------------------------------------------------------------------------
// Hypernetworks

/// omega_X((x,a),(x',a')) = (d_X(x,x') + d_X(a,a')) / 2.
Rational hypernet_weight(const MetricSpace& x, Index a, Index b, Index a2, Index b2);

struct HypernetResult {
  Rational dis_net;  // sup of |omega_X - omega_Y| over the induced product relation
  Rational dis;      // dis(R)
  std::size_t product_size = 0;
};

/// Pair version, by direct enumeration of R x R|_{AxB}.
HypernetResult hypernet_distortion(const PairCorrespondence& r);

/// k-tuple version, weight normalized by k (not k+1). The product relation is
/// never materialized: the sup of |sum of independent per-level differences|
/// is the larger of the summed signed sups in either direction.
HypernetResult hypernet_distortion(const TupleCorrespondence& r);

// ---------------------------------------------------------------------------
// Max-combination sandwich

struct TildeSandwich {
  Rational tilde;
  Rational sum;
  bool lower_holds() const { return tilde <= sum; }
  bool upper_holds() const { return sum <= 2 * tilde; }
  std::optional<Rational> ratio() const;  // sum / tilde when tilde > 0
};

TildeSandwich tilde_sandwich(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg = {});

// ---------------------------------------------------------------------------
// Embedded complexes

struct EmbeddedComplex {
  std::size_t dim = 0;
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<Index>> simplices;       // 1 to 3 vertex indices each
  std::vector<std::vector<std::size_t>> filtration;  // nested lists of simplex indices

  /// Throws InputError on bad indices, unsupported dimension, or non-nested filtration.
  void validate() const;
  /// The sub-complex made of the simplices listed at filtration level `level`.
  EmbeddedComplex level(std::size_t level) const;
};

struct HausdorffInterval {
  double lower = 0;
  double upper = 0;
  std::size_t levels = 0;   // dyadic refinement levels intersected
  std::size_t samples = 0;  // sample points at the finest level, both sides
  double width() const { return upper - lower; }
};

/// Hausdorff distance between the geometric realizations, bracketed by
/// sampling each simplex on nested dyadic grids of cell diameter D/2^j down to
/// <= h and intersecting the per-level certificates [max sample distance,
/// that + cell diameter]. The nesting makes intervals shrink under refinement.
HausdorffInterval realization_hausdorff(const EmbeddedComplex& a, const EmbeddedComplex& b, double h);

/// Sum over filtration levels of realization_hausdorff.
HausdorffInterval filtration_distance(const EmbeddedComplex& a, const EmbeddedComplex& b, double h);

// ---------------------------------------------------------------------------
// Rational densification

struct Densified {
  MetricPair pair;
  Rational bound;   // 4/q certificate on s_full of the identity correspondence (0 for one point)
  Rational s_full;  // the actual s_full, always below the bound
};

/// Adds 1/q to every off-diagonal entry and rounds up to a multiple of 1/q.
Densified rational_densify(const MetricPair& p, unsigned long q);
/// Float input: every double is converted exactly before densifying.
Densified rational_densify(const BasicMetricPair<double>& p, unsigned long q);

}  // namespace mpgh
