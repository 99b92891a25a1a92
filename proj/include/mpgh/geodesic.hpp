#pragma once

// Interpolated metric pairs on a correspondence and the distortion identities
// along them. Exact arithmetic only.

#include <vector>

#include "mpgh/correspondence.hpp"
#include "mpgh/oracle.hpp"

namespace mpgh {

struct InterpolatedPair {
  Relation carrier;  // empty at t = 0 and t = 1
  Rational t;
  MetricPair pair;   // the original (X,A) or (Y,B) at the endpoints
  bool endpoint() const { return carrier.empty(); }
};

/// Metric (1-t) d_X + t d_Y on the relation, subset R ∩ (A x B).
InterpolatedPair interpolate(const PairCorrespondence& r, const Rational& t);

struct IdentityCheck {
  Rational value;     // computed distortion
  Rational expected;  // closed form
  bool holds() const { return value == expected; }
};

/// Distortion of the diagonal between interpolate(R,s) and interpolate(R,t); expected |t-s| dis(R).
IdentityCheck diagonal_distortion(const PairCorrespondence& r, const Rational& s, const Rational& t);

enum class End { kLeft, kRight };

/// Distortion of {(x,(x,y))} against (X,A) (expected t dis R), or of
/// {((x,y),y)} against (Y,B) (expected (1-t) dis R).
IdentityCheck endpoint_distortion(const PairCorrespondence& r, const Rational& t, End end);

/// The natural correspondence between two interpolated pairs of the same R.
PairCorrespondence interpolation_correspondence(const PairCorrespondence& r, const InterpolatedPair& a,
                                                const InterpolatedPair& b);

struct AuditEntry {
  Rational s, t;
  Rational gh;           // exact_pair_gh(gamma(s), gamma(t))
  Rational expected;     // |s-t| exact_pair_gh(P,Q)
  Rational certified;    // s_full of the natural correspondence; gh never exceeds it
  bool equal() const { return gh == expected; }
};

struct AuditReport {
  Rational base;                 // exact_pair_gh(P,Q)
  Rational dis;                  // dis(R)
  std::optional<bool> optimal;   // whether R minimizes dis (when the search was exhaustive)
  std::vector<AuditEntry> entries;
  std::size_t discrepancies() const;
};

/// Every pair s < t of grid values (sorted, duplicates removed) is audited.
AuditReport geodesicity_audit(const PairCorrespondence& r, std::vector<Rational> grid, const OracleConfig& cfg = {},
                              const SearchConfig& search = {});

}  // namespace mpgh
