#include "mpgh/metric_space.hpp"

namespace mpgh {

IndexSet normalize_index_set(std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

IndexSet full_index_set(std::size_t n) {
  IndexSet out(n);
  for (Index i = 0; i < n; ++i) out[i] = i;
  return out;
}

bool is_subset(const IndexSet& inner, const IndexSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

bool contains(const IndexSet& set, Index i) { return std::binary_search(set.begin(), set.end(), i); }

std::string describe(const MetricViolation& v) {
  const std::string ij = "(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")";
  switch (v.kind) {
    case MetricViolation::Kind::kAsymmetric:
      return "asymmetric at " + ij;
    case MetricViolation::Kind::kNonzeroDiagonal:
      return "nonzero diagonal at " + ij;
    case MetricViolation::Kind::kNonpositive:
      return "nonpositive off-diagonal at " + ij;
    case MetricViolation::Kind::kTriangle:
      return "triangle violated at (" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) +
             "): d(i,k) > d(i,j) + d(j,k)";
  }
  return "unknown violation";
}

std::string describe(const CrossViolation& v) {
  auto s = [](Index i) { return std::to_string(i); };
  switch (v.kind) {
    case CrossViolation::Kind::kNonpositive:
      return "cross(" + s(v.i) + "," + s(v.j) + ") not positive";
    case CrossViolation::Kind::kLeftTriangle:
      return "cross(" + s(v.i) + "," + s(v.j) + ") > left(" + s(v.i) + "," + s(v.i2) + ") + cross(" + s(v.i2) + "," +
             s(v.j) + ")";
    case CrossViolation::Kind::kRightTriangle:
      return "cross(" + s(v.i) + "," + s(v.j) + ") > right(" + s(v.j) + "," + s(v.j2) + ") + cross(" + s(v.i) + "," +
             s(v.j2) + ")";
    case CrossViolation::Kind::kLeftSpan:
      return "left(" + s(v.i) + "," + s(v.i2) + ") > cross(" + s(v.i) + "," + s(v.j) + ") + cross(" + s(v.i2) + "," +
             s(v.j) + ")";
    case CrossViolation::Kind::kRightSpan:
      return "right(" + s(v.j) + "," + s(v.j2) + ") > cross(" + s(v.i) + "," + s(v.j) + ") + cross(" + s(v.i) + "," +
             s(v.j2) + ")";
  }
  return "unknown violation";
}

}  // namespace mpgh
