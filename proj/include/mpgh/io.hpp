#pragma once

// JSON and CSV ingestion and serialization.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpgh/applications.hpp"
#include "mpgh/correspondence.hpp"
#include "mpgh/metric_space.hpp"

namespace mpgh::io {

using Json = nlohmann::ordered_json;

/// A space document before numeric conversion; distances kept as text so
/// exact mode never sees a binary float.
struct SpaceDoc {
  std::vector<std::string> labels;
  Matrix<std::string> dist;
  std::vector<std::vector<Index>> chain;
  bool has_chain = false;
  std::string source;  // path, for error messages
};

/// Reads a whole file ("-" is stdin).
std::string read_text(const std::string& path);
Json parse_json(const std::string& text, const std::string& source);

SpaceDoc space_doc_from_json(const Json& j, const std::string& source);
/// Headerless square matrix, comma or whitespace separated.
SpaceDoc space_doc_from_csv(const std::string& text, const std::string& source);
/// Picks CSV for *.csv files or text not starting with '{'.
SpaceDoc read_space_doc(const std::string& path);

/// JSON numbers are taken at their shortest round-trip decimal spelling.
std::string json_scalar_text(const Json& v, const std::string& where);

template <class T>
T parse_scalar(const std::string& text, const std::string& where);
template <>
Rational parse_scalar<Rational>(const std::string& text, const std::string& where);
template <>
double parse_scalar<double>(const std::string& text, const std::string& where);

template <class T>
Matrix<T> to_matrix(const SpaceDoc& doc) {
  Matrix<T> m(doc.dist.size());
  for (std::size_t i = 0; i < doc.dist.size(); ++i)
    for (std::size_t j = 0; j < doc.dist[i].size(); ++j)
      m[i].push_back(parse_scalar<T>(doc.dist[i][j], doc.source + ": dist[" + std::to_string(i) + "][" +
                                                         std::to_string(j) + "]"));
  return m;
}

template <class T>
BasicMetricSpace<T> to_space(const SpaceDoc& doc, double tol) {
  return BasicMetricSpace<T>::make(to_matrix<T>(doc), doc.labels, tol);
}

/// The first chain level is the subset; a document without a chain gives A = X.
template <class T>
BasicMetricPair<T> to_pair(const SpaceDoc& doc, double tol) {
  auto space = to_space<T>(doc, tol);
  if (doc.has_chain && doc.chain.size() != 1)
    throw InputError(doc.source + ": a pair needs exactly one chain level, found " + std::to_string(doc.chain.size()));
  std::vector<Index> subset = doc.has_chain ? doc.chain[0] : full_index_set(space.size());
  return BasicMetricPair<T>(std::move(space), std::move(subset));
}

template <class T>
BasicMetricTuple<T> to_tuple(const SpaceDoc& doc, double tol) {
  auto space = to_space<T>(doc, tol);
  if (!doc.has_chain || doc.chain.empty()) throw InputError(doc.source + ": a tuple needs a chain");
  // Documents list the chain outermost first (X_k ⊇ ... ⊇ X_1).
  return BasicMetricTuple<T>(std::move(space), doc.chain);
}

std::string scalar_text(const Rational& v);
std::string scalar_text(double v);

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(scalar_text(v));
    out.push_back(std::move(r));
  }
  return out;
}

template <class T>
Json space_json(const BasicMetricSpace<T>& s, const std::vector<IndexSet>& chain) {
  Json out;
  out["labels"] = s.labels();
  out["dist"] = matrix_json(s.matrix());
  if (!chain.empty()) out["chain"] = chain;
  return out;
}

template <class T>
Json pair_json(const BasicMetricPair<T>& p) {
  return space_json(p.space(), {p.subset()});
}

template <class T>
Json tuple_json(const BasicMetricTuple<T>& p) {
  return space_json(p.space(), p.chain());
}

Json relation_json(const Relation& r);
Relation relation_from_json(const Json& j, const std::string& source);

EmbeddedComplex complex_from_json(const Json& j, const std::string& source);
Json complex_json(const EmbeddedComplex& c);

/// Comma separated list of indices, e.g. "0,2,3".
std::vector<Index> parse_index_list(const std::string& text);
/// Comma separated rationals, e.g. "0,1/2,1".
std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace mpgh::io
