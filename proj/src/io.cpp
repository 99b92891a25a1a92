#include "mpgh/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mpgh::io {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Index json_index(const Json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<Index>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<Index>(v.get<long long>());
  throw InputError(where + ": expected a nonnegative integer index");
}

std::vector<Index> json_indices(const Json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array of indices");
  std::vector<Index> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(json_index(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

bool looks_like_csv(const std::string& path, const std::string& text) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) return c != '{';
  return false;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

std::string json_scalar_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) {
    // Shortest spelling that round-trips, e.g. 0.1 stays "0.1".
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(where + ": non-finite number");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
  }
  throw InputError(where + ": expected a number or numeric string");
}

template <>
Rational parse_scalar<Rational>(const std::string& text, const std::string& where) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
}

template <>
double parse_scalar<double>(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t.find('/') != std::string::npos) {
    // A fraction in float mode: exact parse, then a 40-digit decimal for strtod.
    const Rational r = parse_scalar<Rational>(t, where);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, 40);
    mpz_class q = r.get_num() * scale / r.get_den();
    return std::strtod((q.get_str() + "e-40").c_str(), nullptr);
  }
  char* end = nullptr;
  const double d = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(d))
    throw InputError(where + ": not a finite number: '" + text + "'");
  return d;
}

SpaceDoc space_doc_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": expected a JSON object");
  if (!j.contains("dist")) throw InputError(source + ": missing field \"dist\"");
  SpaceDoc doc;
  doc.source = source;
  const Json& dist = j["dist"];
  if (!dist.is_array()) throw InputError(source + ": \"dist\" must be an array of rows");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::string row_where = source + ": dist[" + std::to_string(i) + "]";
    if (!dist[i].is_array()) throw InputError(row_where + ": expected an array");
    if (dist[i].size() != dist.size())
      throw InputError(row_where + ": row has " + std::to_string(dist[i].size()) + " entries, expected " +
                       std::to_string(dist.size()));
    std::vector<std::string> row;
    for (std::size_t k = 0; k < dist[i].size(); ++k)
      row.push_back(json_scalar_text(dist[i][k], row_where + "[" + std::to_string(k) + "]"));
    doc.dist.push_back(std::move(row));
  }
  if (j.contains("labels")) {
    const Json& labels = j["labels"];
    if (!labels.is_array()) throw InputError(source + ": \"labels\" must be an array");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].is_string())
        doc.labels.push_back(labels[i].get<std::string>());
      else
        doc.labels.push_back(labels[i].dump());
    }
  }
  if (j.contains("chain")) {
    const Json& chain = j["chain"];
    if (!chain.is_array()) throw InputError(source + ": \"chain\" must be an array of index arrays");
    doc.has_chain = true;
    for (std::size_t l = 0; l < chain.size(); ++l)
      doc.chain.push_back(json_indices(chain[l], source + ": chain[" + std::to_string(l) + "]"));
  } else if (j.contains("subset")) {
    doc.has_chain = true;
    doc.chain.push_back(json_indices(j["subset"], source + ": subset"));
  }
  return doc;
}

SpaceDoc space_doc_from_csv(const std::string& text, const std::string& source) {
  SpaceDoc doc;
  doc.source = source;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    const bool commas = line.find(',') != std::string::npos;
    auto flush = [&] {
      fields.push_back(trim(cur));
      cur.clear();
    };
    if (commas) {
      for (char c : line) {
        if (c == ',')
          flush();
        else
          cur += c;
      }
      flush();
    } else {
      std::istringstream ws(line);
      while (ws >> cur) fields.push_back(cur);
      cur.clear();
    }
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (fields[f].empty())
        throw InputError(source + ":" + std::to_string(line_no) + ": field " + std::to_string(f + 1) + " is empty");
      // Validate now so the error names the line and field.
      parse_scalar<Rational>(fields[f], source + ":" + std::to_string(line_no) + ": field " + std::to_string(f + 1));
    }
    if (!doc.dist.empty() && fields.size() != doc.dist.front().size())
      throw InputError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(doc.dist.front().size()) + " fields, found " + std::to_string(fields.size()));
    doc.dist.push_back(std::move(fields));
  }
  if (doc.dist.empty()) throw InputError(source + ": empty CSV matrix");
  if (doc.dist.size() != doc.dist.front().size())
    throw InputError(source + ": CSV matrix has " + std::to_string(doc.dist.size()) + " rows and " +
                     std::to_string(doc.dist.front().size()) + " columns");
  return doc;
}

SpaceDoc read_space_doc(const std::string& path) {
  const std::string source = path == "-" ? "<stdin>" : path;
  const std::string text = read_text(path);
  if (looks_like_csv(path, text)) return space_doc_from_csv(text, source);
  return space_doc_from_json(parse_json(text, source), source);
}

std::string scalar_text(const Rational& v) { return to_string(v); }

std::string scalar_text(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json relation_json(const Relation& r) {
  Json out = Json::array();
  for (const auto& [x, y] : r) out.push_back(Json::array({x, y}));
  return out;
}

Relation relation_from_json(const Json& j, const std::string& source) {
  const Json& arr = j.is_object() && j.contains("correspondence") ? j["correspondence"] : j;
  if (!arr.is_array()) throw InputError(source + ": a correspondence is an array of [x, y] pairs");
  Relation r;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = source + ": pair " + std::to_string(i);
    if (!arr[i].is_array() || arr[i].size() != 2) throw InputError(where + ": expected [x, y]");
    r.emplace_back(json_index(arr[i][0], where), json_index(arr[i][1], where));
  }
  return normalize_relation(std::move(r));
}

EmbeddedComplex complex_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": expected a JSON object");
  for (const char* key : {"dim", "coords", "simplices"})
    if (!j.contains(key)) throw InputError(source + ": missing field \"" + std::string(key) + "\"");
  EmbeddedComplex c;
  c.dim = json_index(j["dim"], source + ": dim");
  const Json& coords = j["coords"];
  if (!coords.is_array()) throw InputError(source + ": \"coords\" must be an array");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string where = source + ": coords[" + std::to_string(i) + "]";
    if (!coords[i].is_array()) throw InputError(where + ": expected an array");
    std::vector<double> p;
    for (std::size_t k = 0; k < coords[i].size(); ++k)
      p.push_back(parse_scalar<double>(json_scalar_text(coords[i][k], where), where + "[" + std::to_string(k) + "]"));
    c.coords.push_back(std::move(p));
  }
  const Json& simplices = j["simplices"];
  if (!simplices.is_array()) throw InputError(source + ": \"simplices\" must be an array");
  for (std::size_t i = 0; i < simplices.size(); ++i)
    c.simplices.push_back(json_indices(simplices[i], source + ": simplices[" + std::to_string(i) + "]"));
  if (j.contains("filtration")) {
    const Json& f = j["filtration"];
    if (!f.is_array()) throw InputError(source + ": \"filtration\" must be an array");
    for (std::size_t l = 0; l < f.size(); ++l)
      c.filtration.push_back(json_indices(f[l], source + ": filtration[" + std::to_string(l) + "]"));
  }
  try {
    c.validate();
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return c;
}

Json complex_json(const EmbeddedComplex& c) {
  Json out;
  out["dim"] = c.dim;
  Json coords = Json::array();
  for (const auto& p : c.coords) {
    Json row = Json::array();
    for (double v : p) row.push_back(scalar_text(v));
    coords.push_back(std::move(row));
  }
  out["coords"] = std::move(coords);
  out["simplices"] = c.simplices;
  if (!c.filtration.empty()) out["filtration"] = c.filtration;
  return out;
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    Index v = 0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw InputError("bad index '" + item + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_scalar<Rational>(item, "list '" + text + "'"));
  }
  return out;
}

}  // namespace mpgh::io
