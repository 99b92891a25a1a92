#include "mpgh/correspondence.hpp"

namespace mpgh {

Relation normalize_relation(Relation r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

Relation full_relation(std::size_t n, std::size_t m) {
  Relation r;
  r.reserve(n * m);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < m; ++y) r.emplace_back(x, y);
  return r;
}

Relation identity_relation(std::size_t n) {
  Relation r;
  for (Index x = 0; x < n; ++x) r.emplace_back(x, x);
  return r;
}

Relation restrict_relation(const Relation& r, const IndexSet& s, const IndexSet& t) {
  Relation out;
  for (const auto& e : r)
    if (contains(s, e.first) && contains(t, e.second)) out.push_back(e);
  return out;
}

std::vector<CoverageViolation> coverage_violations(const Relation& r, std::size_t n, std::size_t m,
                                                   const std::vector<IndexSet>& left_chain,
                                                   const std::vector<IndexSet>& right_chain) {
  using Side = CoverageViolation::Side;
  std::vector<CoverageViolation> out;
  auto check = [&](const Relation& rel, const IndexSet& left, const IndexSet& right, std::size_t level) {
    std::vector<char> hit_l(n, 0), hit_r(m, 0);
    for (const auto& [x, y] : rel) {
      hit_l[x] = 1;
      hit_r[y] = 1;
    }
    for (Index x : left)
      if (!hit_l[x]) out.push_back({level == 0 ? Side::kLeft : Side::kLeftSubset, level, x});
    for (Index y : right)
      if (!hit_r[y]) out.push_back({level == 0 ? Side::kRight : Side::kRightSubset, level, y});
  };
  check(r, full_index_set(n), full_index_set(m), 0);
  for (std::size_t i = 0; i < left_chain.size() && i < right_chain.size(); ++i)
    check(restrict_relation(r, left_chain[i], right_chain[i]), left_chain[i], right_chain[i], i + 1);
  return out;
}

std::string describe(const CoverageViolation& v) {
  const std::string p = std::to_string(v.point);
  switch (v.side) {
    case CoverageViolation::Side::kLeft:
      return "left point " + p + " is not related to any right point";
    case CoverageViolation::Side::kRight:
      return "right point " + p + " is not related to any left point";
    case CoverageViolation::Side::kLeftSubset:
      return "left subset point " + p + " (level " + std::to_string(v.level) + ") uncovered by the restriction";
    case CoverageViolation::Side::kRightSubset:
      return "right subset point " + p + " (level " + std::to_string(v.level) + ") uncovered by the restriction";
  }
  return "unknown violation";
}

}  // namespace mpgh
