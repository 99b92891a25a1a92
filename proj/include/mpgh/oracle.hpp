#pragma once

// Exact Gromov-Hausdorff distance of tiny metric pairs and tuples.
//
// For every admissible delta the sets R_l = {(x,y) in X_l x Y_l : delta(x,y) <= t_l}
// are correspondences, and conversely correspondences R_l with
// |d_X(x,x') - d_Y(y,y')| <= t_l + t_m for all (x,y) in R_l, (x',y') in R_m
// glue into an admissible semimetric with d_H(X_l,Y_l) <= t_l. So the infimum
// is a minimum over tuples of minimal correspondences (the witness-map graphs
// f ∪ g^T), each a small linear program in the radii t_l. The kLp engine
// instead solves the full program with every cross distance as a variable and
// all mixed triangle inequalities; it is slower and serves as the cross-check.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mpgh/correspondence.hpp"
#include "mpgh/metric_space.hpp"

namespace mpgh {

enum class OracleEngine { kReduced, kLp };
enum class OracleObjective { kSum, kMax };

struct OracleConfig {
  double budget = 1e6;  // max witness tuples (after symmetry reduction)
  unsigned threads = 1;
  OracleEngine engine = OracleEngine::kReduced;
  bool symmetry_reduction = true;
};

/// Thrown when the witness enumeration would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nearest-point maps realizing each Hausdorff term. phi[l][i] is the image
/// of chain[l][i] (positions within the level, not point indices).
struct WitnessTuple {
  std::vector<Index> f;  // X -> Y
  std::vector<Index> g;  // Y -> X
  std::vector<std::vector<Index>> phi, psi;
};

struct OracleResult {
  Rational value;
  CrossMetric delta;                     // an optimal admissible semimetric (zeros allowed)
  WitnessTuple witness;                  // nearest-point maps of delta
  std::vector<Rational> radii;           // t_0 (full spaces), t_1..t_k
  std::vector<Relation> correspondences; // the optimal minimal correspondence per level
  std::size_t evaluated = 0;             // correspondence tuples solved
  double witness_tuples = 0;             // size of the witness-map space after symmetry reduction
};

/// Raw witness-tuple count prod_l |Y_l|^|X_l| |X_l|^|Y_l|, divided by the
/// automorphism group orders when symmetry reduction applies.
double witness_space_size(const MetricTuple& p, const MetricTuple& q, bool symmetry_reduction);

OracleResult exact_tuple_gh(const MetricTuple& p, const MetricTuple& q, const OracleConfig& cfg = {},
                            OracleObjective objective = OracleObjective::kSum);
OracleResult exact_pair_gh(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg = {});
/// Max-combination variant: inf over delta of max(d_H(X,Y), d_H(A,B)).
OracleResult exact_tilde_gh(const MetricPair& p, const MetricPair& q, const OracleConfig& cfg = {});

/// Plain Gromov-Hausdorff distance of two spaces (no distinguished subsets).
OracleResult exact_space_gh(const MetricSpace& x, const MetricSpace& y, const OracleConfig& cfg = {});

/// All minimal correspondences between index sets s and t, in a fixed order.
std::vector<Relation> minimal_correspondences(const IndexSet& s, const IndexSet& t);

/// Permutations of the points preserving the metric and every chain level;
/// only computed for at most `limit` points (identity alone otherwise).
std::vector<std::vector<Index>> automorphisms(const MetricTuple& p, std::size_t limit = 7);

/// True when some bijection X -> Y is an isometry mapping each chain level onto its partner.
bool isomorphic(const MetricTuple& p, const MetricTuple& q);

}  // namespace mpgh
