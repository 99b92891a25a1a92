#include "mpgh/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpgh/applications.hpp"
#include "mpgh/bounds.hpp"
#include "mpgh/complex_approx.hpp"
#include "mpgh/geodesic.hpp"
#include "mpgh/io.hpp"

namespace mpgh::cli {

namespace {

using io::Json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json report;
  int code = kOk;
};

void need_inputs(const RunConfig& cfg, std::size_t n) {
  if (cfg.inputs.size() != n)
    throw UsageError(cfg.command + (cfg.subcommand.empty() ? "" : " " + cfg.subcommand) + ": expected " +
                     std::to_string(n) + " input(s), got " + std::to_string(cfg.inputs.size()));
  std::size_t stdin_count = std::count(cfg.inputs.begin(), cfg.inputs.end(), "-");
  if (stdin_count > 0 && n > 1) throw UsageError("stdin is accepted only for single-input commands");
}

SearchConfig search_config(const RunConfig& cfg) {
  SearchConfig s;
  s.threads = cfg.threads;
  s.seed = cfg.seed;
  return s;
}

OracleConfig oracle_config(const RunConfig& cfg) {
  OracleConfig o;
  o.budget = cfg.budget;
  o.threads = cfg.threads;
  o.engine = cfg.engine;
  return o;
}

/// Exact-only commands: float inputs are validated with the tolerance, then
/// every double is taken at its exact value.
MetricPair exact_pair(const io::SpaceDoc& doc, const RunConfig& cfg) {
  if (cfg.mode == ArithmeticMode::kExact) return io::to_pair<Rational>(doc, cfg.tol);
  const auto p = io::to_pair<double>(doc, cfg.tol);
  const std::size_t n = p.size();
  std::vector<Rational> flat(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) flat[i * n + j] = from_double(std::max(p.space()(i, j), p.space()(j, i)));
  return MetricPair(MetricSpace::trusted(n, std::move(flat), p.space().labels()), p.subset());
}

MetricTuple exact_tuple(const io::SpaceDoc& doc, const RunConfig& cfg) {
  if (cfg.mode == ArithmeticMode::kExact) return io::to_tuple<Rational>(doc, cfg.tol);
  const auto p = io::to_tuple<double>(doc, cfg.tol);
  const std::size_t n = p.size();
  std::vector<Rational> flat(n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) flat[i * n + j] = from_double(std::max(p.space()(i, j), p.space()(j, i)));
  return MetricTuple(MetricSpace::trusted(n, std::move(flat), p.space().labels()), p.chain());
}

std::vector<io::SpaceDoc> read_docs(const RunConfig& cfg) {
  std::vector<io::SpaceDoc> docs;
  for (const auto& path : cfg.inputs) docs.push_back(io::read_space_doc(path));
  return docs;
}

Relation read_relation(const RunConfig& cfg) {
  if (cfg.corr.empty()) throw UsageError(cfg.command + " " + cfg.subcommand + ": --corr FILE is required");
  return io::relation_from_json(io::parse_json(io::read_text(cfg.corr), cfg.corr), cfg.corr);
}

const char* kind_name(MetricViolation::Kind k) {
  switch (k) {
    case MetricViolation::Kind::kAsymmetric: return "asymmetric";
    case MetricViolation::Kind::kNonzeroDiagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::kNonpositive: return "nonpositive";
    case MetricViolation::Kind::kTriangle: return "triangle";
  }
  return "?";
}

const char* side_name(CoverageViolation::Side s) {
  switch (s) {
    case CoverageViolation::Side::kLeft: return "left";
    case CoverageViolation::Side::kRight: return "right";
    case CoverageViolation::Side::kLeftSubset: return "left-subset";
    case CoverageViolation::Side::kRightSubset: return "right-subset";
  }
  return "?";
}

Json coverage_json(const std::vector<CoverageViolation>& v) {
  Json out = Json::array();
  for (const auto& c : v)
    out.push_back({{"side", side_name(c.side)}, {"level", c.level}, {"point", c.point}, {"message", describe(c)}});
  return out;
}

template <class T>
Json breakdown_json(const DistortionBreakdown<T>& b) {
  Json levels = Json::array();
  for (const auto& s : b.s_levels) levels.push_back(io::scalar_text(s));
  return {{"dis", io::scalar_text(b.dis)}, {"s_full", io::scalar_text(b.s_full)}, {"s_levels", levels}};
}

// ---------------------------------------------------------------------------

template <class T>
Json validate_one(const io::SpaceDoc& doc, const RunConfig& cfg, bool& ok) {
  Json entry;
  entry["source"] = doc.source;
  auto result = validate_metric<T>(io::to_matrix<T>(doc), doc.labels, cfg.tol);
  Json violations = Json::array();
  for (const auto& v : result.violations)
    violations.push_back({{"kind", kind_name(v.kind)}, {"i", v.i}, {"j", v.j}, {"k", v.k}, {"message", describe(v)}});
  if (result.ok() && doc.has_chain) {
    try {
      BasicMetricTuple<T>(*result.space, doc.chain);
    } catch (const InputError& e) {
      violations.push_back({{"kind", "chain"}, {"message", e.what()}});
    }
  }
  entry["points"] = doc.dist.size();
  entry["valid"] = violations.empty();
  entry["violations"] = std::move(violations);
  ok = ok && entry["valid"].get<bool>();
  return entry;
}

Outcome cmd_validate(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw UsageError("validate: expected at least one input");
  Outcome o;
  o.report["command"] = "validate";
  Json results = Json::array();
  bool ok = true;
  for (const auto& doc : read_docs(cfg))
    results.push_back(cfg.mode == ArithmeticMode::kExact ? validate_one<Rational>(doc, cfg, ok)
                                                         : validate_one<double>(doc, cfg, ok));
  o.report["valid"] = ok;
  o.report["inputs"] = std::move(results);
  o.code = ok ? kOk : kViolation;
  return o;
}

template <class T>
Json hausdorff_report(const io::SpaceDoc& doc, const RunConfig& cfg) {
  auto space = io::to_space<T>(doc, cfg.tol);
  const IndexSet s = normalize_index_set(io::parse_index_list(cfg.s));
  const IndexSet t = normalize_index_set(io::parse_index_list(cfg.t));
  return {{"command", "hausdorff"}, {"s", s}, {"t", t}, {"value", io::scalar_text(hausdorff(space, s, t))}};
}

Outcome cmd_hausdorff(const RunConfig& cfg) {
  need_inputs(cfg, 1);
  if (cfg.s.empty() || cfg.t.empty()) throw UsageError("hausdorff: --s and --t index lists are required");
  const auto doc = io::read_space_doc(cfg.inputs[0]);
  return {cfg.mode == ArithmeticMode::kExact ? hausdorff_report<Rational>(doc, cfg) : hausdorff_report<double>(doc, cfg)};
}

Json oracle_json(const OracleResult& r) {
  Json out;
  out["value"] = io::scalar_text(r.value);
  Json radii = Json::array();
  for (const auto& t : r.radii) radii.push_back(io::scalar_text(t));
  out["radii"] = std::move(radii);
  out["delta"] = io::matrix_json(r.delta.cross());
  out["witness"] = {{"f", r.witness.f}, {"g", r.witness.g}, {"phi", r.witness.phi}, {"psi", r.witness.psi}};
  Json corrs = Json::array();
  for (const auto& c : r.correspondences) corrs.push_back(io::relation_json(c));
  out["correspondences"] = std::move(corrs);
  out["evaluated"] = r.evaluated;
  out["witness_tuples"] = r.witness_tuples;
  return out;
}

Outcome cmd_gh_oracle(const RunConfig& cfg) {
  need_inputs(cfg, 2);
  const auto docs = read_docs(cfg);
  const OracleConfig oc = oracle_config(cfg);
  OracleResult r = [&] {
    if (cfg.subcommand == "tuple") return exact_tuple_gh(exact_tuple(docs[0], cfg), exact_tuple(docs[1], cfg), oc);
    const MetricPair p = exact_pair(docs[0], cfg), q = exact_pair(docs[1], cfg);
    return cfg.subcommand == "tilde" ? exact_tilde_gh(p, q, oc) : exact_pair_gh(p, q, oc);
  }();
  Json report;
  report["command"] = "gh " + cfg.subcommand;
  report["engine"] = cfg.engine == OracleEngine::kLp ? "lp" : "reduced";
  report.update(oracle_json(r));
  return {std::move(report)};
}

template <class T>
Outcome gh_corr(const std::vector<io::SpaceDoc>& docs, const RunConfig& cfg) {
  const auto p = io::to_pair<T>(docs[0], cfg.tol);
  const auto q = io::to_pair<T>(docs[1], cfg.tol);
  Outcome o;
  o.report["command"] = "gh corr";
  if (!cfg.corr.empty()) {
    auto v = validate_correspondence<T>(read_relation(cfg), p, q);
    if (!v.ok()) {
      o.report["valid"] = false;
      o.report["violations"] = coverage_json(v.violations);
      o.code = kViolation;
      return o;
    }
    o.report["valid"] = true;
    o.report["correspondence"] = io::relation_json(v.correspondence->relation());
    o.report["distortion"] = breakdown_json(distortion(*v.correspondence));
    return o;
  }
  auto best = min_distortion(p, q, search_config(cfg));
  o.report["optimal"] = best.optimal;
  o.report["correspondence"] = io::relation_json(best.correspondence.relation());
  o.report["distortion"] = breakdown_json(best.breakdown);
  return o;
}

template <class T>
Outcome gh_bounds(const std::vector<io::SpaceDoc>& docs, const RunConfig& cfg) {
  const auto p = io::to_pair<T>(docs[0], cfg.tol);
  const auto q = io::to_pair<T>(docs[1], cfg.tol);
  const auto b = correspondence_upper_bound(p, q, search_config(cfg));
  const auto diam = diameter_lower_bound(p, q);
  Outcome o;
  o.report["command"] = "gh bounds";
  o.report["lower"] = io::scalar_text(b.lower);
  o.report["upper"] = io::scalar_text(b.upper);
  o.report["methods"] = b.methods;
  o.report["exhaustive"] = b.exhaustive;
  o.report["diameter_sum"] = io::scalar_text(diam.sum());
  o.report["diameter_max"] = io::scalar_text(diam.max());
  o.report["lower_correspondence"] = io::relation_json(b.lower_correspondence);
  o.report["upper_correspondence"] = io::relation_json(b.upper_correspondence);
  o.report["certificate"] = io::matrix_json(b.certificate->cross());
  o.report["certified_hausdorff"] = io::scalar_text(b.certified_hausdorff);
  const bool ok = ScalarOps<T>::le(b.lower, b.upper, cfg.tol);
  o.report["consistent"] = ok;
  if (!ok) o.code = kViolation;
  return o;
}

Outcome cmd_gh(const RunConfig& cfg) {
  const auto& sub = cfg.subcommand;
  if (sub == "exact" || sub == "tilde" || sub == "tuple") return cmd_gh_oracle(cfg);
  need_inputs(cfg, 2);
  const auto docs = read_docs(cfg);
  const bool exact = cfg.mode == ArithmeticMode::kExact;
  if (sub == "corr") return exact ? gh_corr<Rational>(docs, cfg) : gh_corr<double>(docs, cfg);
  if (sub == "bounds") return exact ? gh_bounds<Rational>(docs, cfg) : gh_bounds<double>(docs, cfg);
  throw UsageError("gh: unknown subcommand '" + sub + "'");
}

PairCorrespondence read_pair_correspondence(const RunConfig& cfg, Outcome& fail) {
  need_inputs(cfg, 2);
  const auto docs = read_docs(cfg);
  MetricPair p = exact_pair(docs[0], cfg), q = exact_pair(docs[1], cfg);
  auto v = validate_correspondence<Rational>(read_relation(cfg), p, q);
  if (!v.ok()) {
    fail.report["valid"] = false;
    fail.report["violations"] = coverage_json(v.violations);
    fail.code = kViolation;
    throw fail;
  }
  return std::move(*v.correspondence);
}

Outcome cmd_geodesic(const RunConfig& cfg) {
  Outcome o;
  o.report["command"] = "geodesic " + cfg.subcommand;
  if (cfg.subcommand == "sample") {
    if (cfg.t_values.empty()) throw UsageError("geodesic sample: --t values are required");
    const auto r = read_pair_correspondence(cfg, o);
    Json samples = Json::array();
    for (const auto& t : io::parse_rational_list(cfg.t_values)) {
      const auto g = interpolate(r, t);
      Json entry = io::pair_json(g.pair);
      entry["t"] = io::scalar_text(t);
      if (!g.endpoint()) entry["carrier"] = io::relation_json(g.carrier);
      samples.push_back(std::move(entry));
    }
    o.report["samples"] = std::move(samples);
    return o;
  }
  if (cfg.subcommand == "audit") {
    const auto r = read_pair_correspondence(cfg, o);
    auto rep = geodesicity_audit(r, io::parse_rational_list(cfg.grid), oracle_config(cfg), search_config(cfg));
    o.report["base"] = io::scalar_text(rep.base);
    o.report["dis"] = io::scalar_text(rep.dis);
    o.report["optimal"] = rep.optimal ? Json(*rep.optimal) : Json(nullptr);
    Json entries = Json::array();
    for (const auto& e : rep.entries)
      entries.push_back({{"s", io::scalar_text(e.s)},
                         {"t", io::scalar_text(e.t)},
                         {"gh", io::scalar_text(e.gh)},
                         {"expected", io::scalar_text(e.expected)},
                         {"certified", io::scalar_text(e.certified)},
                         {"equal", e.equal()}});
    o.report["entries"] = std::move(entries);
    o.report["discrepancies"] = rep.discrepancies();
    return o;
  }
  throw UsageError("geodesic: unknown subcommand '" + cfg.subcommand + "'");
}

std::vector<int> parse_n_range(const std::string& text) {
  std::vector<int> out;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      for (Index v : io::parse_index_list(text)) out.push_back(static_cast<int>(v));
    }
  } catch (const std::logic_error&) {
    throw UsageError("cassorla: bad --n range '" + text + "'");
  }
  if (out.empty() || out.size() > 16) throw UsageError("cassorla: --n must name 1 to 16 values");
  return out;
}

Json complex_edges_json(const BuiltComplex& b, const MetricPair& p) {
  const auto& c = b.complex;
  Json vertices = Json::array();
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    vertices.push_back({{"index", c.vertices[v]}, {"label", p.space().labels()[c.vertices[v]]}, {"in_a", static_cast<bool>(c.in_a[v])}});
  Json edges = Json::array();
  for (const auto& e : c.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"length", io::scalar_text(e.length)}, {"in_k", e.in_k}});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Outcome cmd_cassorla(const RunConfig& cfg) {
  if (cfg.subcommand != "run") throw UsageError("cassorla: unknown subcommand '" + cfg.subcommand + "'");
  std::optional<MetricPair> pair;
  Json source;
  if (cfg.circle > 0) {
    if (!cfg.inputs.empty()) throw UsageError("cassorla run: --circle and --input are exclusive");
    pair.emplace(circle_samples(cfg.circle, 1), quarter_arc(cfg.circle));
    source = {{"generator", "circle"}, {"points", cfg.circle}, {"circumference", "1"}, {"subset", "quarter-arc"}};
  } else {
    need_inputs(cfg, 1);
    pair.emplace(exact_pair(io::read_space_doc(cfg.inputs[0]), cfg));
    source = {{"input", cfg.inputs[0]}};
  }
  const auto ns = parse_n_range(cfg.n_range);
  const auto rows = approx_pipeline(*pair, ns);
  Outcome o;
  o.report["command"] = "cassorla run";
  o.report["source"] = std::move(source);
  Json out_rows = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["n"] = r.n;
    row["mu"] = r.mu;
    row["coro_bound"] = r.coro;
    row["net_estimate"] = r.estimate ? Json(io::scalar_text(*r.estimate)) : Json(nullptr);
    row["epsilon"] = r.epsilon ? Json(io::scalar_text(*r.epsilon)) : Json(nullptr);
    row["status"] = r.status;
    row["vertices"] = r.vertices;
    row["l_edges"] = r.l_edges;
    row["k_edges"] = r.k_edges;
    row["k_components"] = r.k_components;
    row["metric_dominates"] = r.metric_dominates;
    row["lemma_violations"] = r.lemma_violations;
    if (cfg.complexes) row["complex"] = complex_edges_json(build_complex(*pair, ApproxParams::make(r.n)), *pair);
    if (!r.metric_dominates) o.code = kViolation;
    out_rows.push_back(std::move(row));
  }
  o.report["rows"] = std::move(out_rows);
  return o;
}

Outcome cmd_apps(const RunConfig& cfg) {
  Outcome o;
  o.report["command"] = "apps " + cfg.subcommand;
  const auto& sub = cfg.subcommand;
  if (sub == "hypernet") {
    need_inputs(cfg, 2);
    const auto docs = read_docs(cfg);
    const bool tuple = docs[0].has_chain && docs[0].chain.size() > 1;
    HypernetResult h;
    if (tuple) {
      h = hypernet_distortion(TupleCorrespondence::make(read_relation(cfg), exact_tuple(docs[0], cfg), exact_tuple(docs[1], cfg)));
    } else {
      auto v = validate_correspondence<Rational>(read_relation(cfg), exact_pair(docs[0], cfg), exact_pair(docs[1], cfg));
      if (!v.ok()) {
        o.report["valid"] = false;
        o.report["violations"] = coverage_json(v.violations);
        o.code = kViolation;
        return o;
      }
      h = hypernet_distortion(*v.correspondence);
    }
    o.report["dis_net"] = io::scalar_text(h.dis_net);
    o.report["dis"] = io::scalar_text(h.dis);
    o.report["product_size"] = h.product_size;
    o.report["holds"] = h.dis_net <= h.dis;
    if (!(h.dis_net <= h.dis)) o.code = kViolation;
    return o;
  }
  if (sub == "tilde") {
    need_inputs(cfg, 2);
    const auto docs = read_docs(cfg);
    const auto s = tilde_sandwich(exact_pair(docs[0], cfg), exact_pair(docs[1], cfg), oracle_config(cfg));
    o.report["tilde"] = io::scalar_text(s.tilde);
    o.report["sum"] = io::scalar_text(s.sum);
    const auto ratio = s.ratio();
    o.report["ratio"] = ratio ? Json(io::scalar_text(*ratio)) : Json(nullptr);
    o.report["lower_holds"] = s.lower_holds();
    o.report["upper_holds"] = s.upper_holds();
    if (!s.lower_holds() || !s.upper_holds()) o.code = kViolation;
    return o;
  }
  if (sub == "realize") {
    need_inputs(cfg, 2);
    std::vector<EmbeddedComplex> cs;
    for (const auto& path : cfg.inputs) {
      const std::string src = path == "-" ? "<stdin>" : path;
      cs.push_back(io::complex_from_json(io::parse_json(io::read_text(path), src), src));
    }
    const auto h = cfg.filtration ? filtration_distance(cs[0], cs[1], cfg.mesh) : realization_hausdorff(cs[0], cs[1], cfg.mesh);
    o.report["mesh"] = cfg.mesh;
    o.report["filtration"] = cfg.filtration;
    o.report["lower"] = h.lower;
    o.report["upper"] = h.upper;
    o.report["levels"] = h.levels;
    o.report["samples"] = h.samples;
    return o;
  }
  if (sub == "densify") {
    need_inputs(cfg, 1);
    if (cfg.q == 0) throw UsageError("apps densify: --q must be a positive integer");
    const auto doc = io::read_space_doc(cfg.inputs[0]);
    const Densified d = cfg.mode == ArithmeticMode::kExact ? rational_densify(io::to_pair<Rational>(doc, cfg.tol), cfg.q)
                                                           : rational_densify(io::to_pair<double>(doc, cfg.tol), cfg.q);
    const bool valid = validate_metric<Rational>(d.pair.space().matrix(), {}, 0).ok();
    o.report["q"] = cfg.q;
    o.report["pair"] = io::pair_json(d.pair);
    o.report["bound"] = io::scalar_text(d.bound);
    o.report["s_full"] = io::scalar_text(d.s_full);
    o.report["valid"] = valid;
    if (!valid || d.s_full > d.bound) o.code = kViolation;
    return o;
  }
  throw UsageError("apps: unknown subcommand '" + sub + "'");
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "validate") return cmd_validate(cfg);
  if (cfg.command == "hausdorff") return cmd_hausdorff(cfg);
  if (cfg.command == "gh") return cmd_gh(cfg);
  if (cfg.command == "geodesic") return cmd_geodesic(cfg);
  if (cfg.command == "cassorla") return cmd_cassorla(cfg);
  if (cfg.command == "apps") return cmd_apps(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Json& report, OutputFormat fmt, std::ostream& out) {
  switch (fmt) {
    case OutputFormat::kJson:
      out << report.dump(2) << '\n';
      return;
    case OutputFormat::kText:
      for (const auto& [key, value] : report.items()) out << key << ": " << cell(value) << '\n';
      return;
    case OutputFormat::kCsv:
      if (report.contains("rows") && report["rows"].is_array() && !report["rows"].empty()) {
        std::vector<std::string> keys;
        for (const auto& [key, value] : report["rows"][0].items())
          if (!value.is_structured()) keys.push_back(key);
        for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
        out << '\n';
        for (const auto& row : report["rows"]) {
          for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << cell(row[keys[i]]);
          out << '\n';
        }
        return;
      }
      out << "key,value\n";
      for (const auto& [key, value] : report.items())
        if (!value.is_structured()) out << key << ',' << cell(value) << '\n';
      return;
  }
}

int fail(std::ostream& out, std::ostream& err, const char* kind, const std::string& message, int code) {
  Json e;
  e["error"] = {{"kind", kind}, {"message", message}};
  out << e.dump(2) << '\n';
  err << "mpgh: " << message << '\n';
  return code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.threads == 0) throw UsageError("--threads must be positive");
    Outcome o = dispatch(cfg);
    emit(o.report, cfg.out, out);
    return o.code;
  } catch (const Outcome& o) {
    emit(o.report, cfg.out, out);
    return o.code;
  } catch (const UsageError& e) {
    return fail(out, err, "usage", e.what(), kUsage);
  } catch (const BudgetExceeded& e) {
    return fail(out, err, "budget", e.what(), kUsage);
  } catch (const InputError& e) {
    return fail(out, err, "input", e.what(), kUsage);
  } catch (const nlohmann::json::exception& e) {
    return fail(out, err, "input", e.what(), kUsage);
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Hausdorff and Gromov-Hausdorff distances of finite metric pairs", "mpgh"};
  app.require_subcommand(1);
  std::string mode = "exact", fmt = "json", engine = "reduced";
  app.add_option("--mode", mode, "Arithmetic: exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", cfg.tol, "Float-mode tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", cfg.budget, "Oracle witness-tuple budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized heuristics");
  app.add_option("--out", fmt, "Output format: json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--engine", engine, "Oracle engine: reduced or lp")->check(CLI::IsMember({"reduced", "lp"}));
  app.fallthrough();

  auto inputs = [&](CLI::App* sub) { sub->add_option("--input,-i", cfg.inputs, "Input files ('-' for stdin)"); };
  auto corr = [&](CLI::App* sub) { sub->add_option("--corr", cfg.corr, "Correspondence JSON file"); };

  auto* validate = app.add_subcommand("validate", "Check metric axioms and chain nesting");
  inputs(validate);
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two subsets of one space");
  inputs(haus);
  haus->add_option("--s", cfg.s, "First subset, e.g. 0,1");
  haus->add_option("--t", cfg.t, "Second subset");

  auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distances and bounds");
  gh->require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> gh_subs = {
      {"exact", "Exact pair distance from the witness-enumeration oracle"},
      {"tilde", "Exact max-combination distance"},
      {"tuple", "Exact distance of metric tuples (chains of subsets)"},
      {"corr", "Minimal distortion, or the distortion of --corr"},
      {"bounds", "Certified lower and upper bounds"}};
  for (const auto& [name, help] : gh_subs) {
    auto* sub = gh->add_subcommand(name, help);
    inputs(sub);
    if (std::string(name) == "corr") corr(sub);
  }

  auto* geo = app.add_subcommand("geodesic", "Interpolated pairs along a correspondence");
  geo->require_subcommand(1);
  auto* sample = geo->add_subcommand("sample", "Interpolated pairs at the --t values");
  inputs(sample);
  corr(sample);
  sample->add_option("--t", cfg.t_values, "Comma-separated rationals in [0,1]");
  auto* audit = geo->add_subcommand("audit", "Distortion identities and oracle distances along the grid");
  inputs(audit);
  corr(audit);
  audit->add_option("--grid", cfg.grid, "Comma-separated rationals");

  auto* cas = app.add_subcommand("cassorla", "1-complex approximation of a length-space sample");
  cas->require_subcommand(1);
  auto* cas_run = cas->add_subcommand("run", "Net, complex and bound table for each n");
  inputs(cas_run);
  cas_run->add_option("--n", cfg.n_range, "Range such as 2..6 or a list 2,3");
  cas_run->add_option("--circle", cfg.circle, "Use N samples of a unit-circumference circle with a quarter-arc subset");
  cas_run->add_flag("--complexes", cfg.complexes, "Include the complexes as edge lists");

  auto* apps = app.add_subcommand("apps", "Application-domain inequalities");
  apps->require_subcommand(1);
  const std::vector<std::pair<const char*, const char*>> app_subs = {
      {"hypernet", "Hypernetwork distortion of a correspondence"},
      {"tilde", "Max-combination sandwich"},
      {"realize", "Hausdorff interval between realizations of two complexes"},
      {"densify", "Rational densification with its 4/q certificate"}};
  for (const auto& [name, help] : app_subs) {
    auto* sub = apps->add_subcommand(name, help);
    inputs(sub);
    const std::string n = name;
    if (n == "hypernet") corr(sub);
    if (n == "realize") {
      sub->add_option("--mesh", cfg.mesh, "Sampling mesh h")->check(CLI::PositiveNumber);
      sub->add_flag("--filtration", cfg.filtration, "Sum over filtration levels");
    }
    if (n == "densify") sub->add_option("--q", cfg.q, "Denominator")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(out, err, "usage", e.what(), kUsage);
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) cfg.subcommand = inner->get_name();
  }
  cfg.mode = mode == "float" ? ArithmeticMode::kFloat : ArithmeticMode::kExact;
  cfg.out = fmt == "csv" ? OutputFormat::kCsv : fmt == "text" ? OutputFormat::kText : OutputFormat::kJson;
  cfg.engine = engine == "lp" ? OracleEngine::kLp : OracleEngine::kReduced;
  return run(cfg, out, err);
}

}  // namespace mpgh::cli
