#include "runner.hpp"

#include "mrnmf/errors.hpp"
#include "mrnmf/synthetic.hpp"

#include <fstream>
#include <initializer_list>
#include <ostream>
#include <set>

namespace mrnmf::cli {

using nlohmann::json;

namespace {

constexpr const char* kMethods[] = {"nmf", "gnmf", "multi_graph", "feature_select",
                                    "multi_kernel"};

// Typed access to one JSON object with dotted field paths in every error.
class Block {
 public:
  Block(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  void allow_only(std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj_.items()) {
      if (!allowed.count(key)) throw ConfigError(field(key), "unknown field");
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ConfigError(field(key), "expected a nonnegative integer");
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "missing");
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  Block child(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "missing");
    return Block(obj_.at(key), field(key));
  }

  const json& raw(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "missing");
    return obj_.at(key);
  }

 private:
  const json& obj_;
  std::string path_;
};

NmfConfig parse_base(const Block& b, double default_alpha, bool iterative) {
  NmfConfig cfg;
  cfg.m = b.count("m", cfg.m);
  cfg.alpha = default_alpha > 0.0 ? b.number("alpha", default_alpha) : 0.0;
  if (iterative) cfg.max_iter = b.count("max_iter", cfg.max_iter);
  cfg.tol = b.number("tol", cfg.tol);
  cfg.seed = b.count("seed", cfg.seed);
  cfg.restarts = b.count("restarts", cfg.restarts);
  return cfg;
}

json base_to_json(const NmfConfig& cfg, bool with_alpha, bool iterative) {
  json j{{"m", cfg.m}, {"tol", cfg.tol}, {"seed", cfg.seed}, {"restarts", cfg.restarts}};
  if (with_alpha) j["alpha"] = cfg.alpha;
  if (iterative) j["max_iter"] = cfg.max_iter;
  return j;
}

GraphSpec parse_graph(const Block& b) {
  b.allow_only({"k", "distance", "affinity", "bandwidth"});
  GraphSpec spec;
  spec.k = b.count("k", spec.k);
  const std::string distance = b.text("distance", "euclidean");
  if (distance == "euclidean") {
    spec.distance = Distance::euclidean;
  } else if (distance == "cosine") {
    spec.distance = Distance::cosine;
  } else {
    throw ConfigError(b.field("distance"), "expected 'euclidean' or 'cosine'");
  }
  const std::string affinity = b.text("affinity", "gaussian");
  if (affinity == "gaussian") {
    spec.affinity = AffinityKind::gaussian;
    if (b.has("bandwidth") && b.raw("bandwidth").is_string()) {
      if (b.text("bandwidth") != "local") {
        throw ConfigError(b.field("bandwidth"), "expected a number or \"local\"");
      }
      spec.local_scaling = true;
    } else {
      spec.bandwidth = b.number("bandwidth", spec.bandwidth);
    }
  } else if (affinity == "binary") {
    spec.affinity = AffinityKind::binary;
  } else if (affinity == "dot_product") {
    spec.affinity = AffinityKind::dot_product;
  } else {
    throw ConfigError(b.field("affinity"), "expected 'gaussian', 'binary' or 'dot_product'");
  }
  if (spec.k < 1) throw ConfigError(b.field("k"), "must be >= 1");
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(b.field("bandwidth"), e.what());
  }
  return spec;
}

json graph_to_json(const GraphSpec& spec) {
  json j{{"k", spec.k},
         {"distance", spec.distance == Distance::euclidean ? "euclidean" : "cosine"}};
  switch (spec.affinity) {
    case AffinityKind::gaussian:
      j["affinity"] = "gaussian";
      if (spec.local_scaling) {
        j["bandwidth"] = "local";
      } else {
        j["bandwidth"] = spec.bandwidth;
      }
      break;
    case AffinityKind::binary:
      j["affinity"] = "binary";
      break;
    case AffinityKind::dot_product:
      j["affinity"] = "dot_product";
      break;
  }
  return j;
}

KernelSpec parse_kernel(const Block& b) {
  b.allow_only({"kind", "degree", "offset", "bandwidth"});
  const std::string kind = b.text("kind");
  KernelSpec spec;
  if (kind == "linear") {
    spec = KernelSpec::linear();
  } else if (kind == "polynomial") {
    const auto degree = b.count("degree", 2);
    spec = KernelSpec::polynomial(static_cast<int>(degree), b.number("offset", 0.0));
  } else if (kind == "gaussian") {
    spec = KernelSpec::gaussian(b.number("bandwidth", 1.0));
  } else {
    throw ConfigError(b.field("kind"), "expected 'linear', 'polynomial' or 'gaussian'");
  }
  try {
    spec.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(b.field(kind == "gaussian" ? "bandwidth" : "degree"), e.what());
  }
  return spec;
}

json kernel_to_json(const KernelSpec& spec) {
  switch (spec.kind) {
    case KernelKind::linear:
      return {{"kind", "linear"}};
    case KernelKind::polynomial:
      return {{"kind", "polynomial"}, {"degree", spec.degree}, {"offset", spec.offset}};
    case KernelKind::gaussian:
      return {{"kind", "gaussian"}, {"bandwidth", spec.bandwidth}};
  }
  return {};
}

template <class Config>
void validate_block(const Config& cfg, const Block& b) {
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    // Messages start with the offending field name ("beta must be ...").
    std::string message = e.what();
    const auto stop = message.find_first_of(" :");
    throw ConfigError(b.field(message.substr(0, stop)), message);
  }
}

SolverConfig parse_solver(const std::string& method, const Block& b) {
  if (method == "nmf") {
    b.allow_only({"m", "max_iter", "tol", "seed", "restarts"});
    NmfConfig cfg = parse_base(b, 0.0, true);
    validate_block(cfg, b);
    return cfg;
  }
  if (method == "gnmf") {
    b.allow_only({"m", "alpha", "max_iter", "tol", "seed", "restarts", "graph"});
    GnmfConfig cfg{parse_base(b, 1.0, true), parse_graph(b.child("graph"))};
    validate_block(cfg.base, b);
    return cfg;
  }
  if (method == "multi_graph") {
    b.allow_only({"m", "alpha", "tol", "seed", "restarts", "beta", "outer_iters", "inner_iters",
                  "graphs"});
    MultiGraphConfig cfg;
    cfg.base = parse_base(b, 1.0, false);
    cfg.beta = b.number("beta", cfg.beta);
    cfg.outer_iters = b.count("outer_iters", cfg.outer_iters);
    cfg.inner_iters = b.count("inner_iters", cfg.inner_iters);
    const json& graphs = b.raw("graphs");
    if (!graphs.is_array()) throw ConfigError(b.field("graphs"), "expected an array");
    if (graphs.empty()) throw ConfigError(b.field("graphs"), "candidate pool is empty");
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      cfg.graphs.push_back(parse_graph(Block(graphs[i], b.field("graphs") + "[" +
                                                            std::to_string(i) + "]")));
    }
    validate_block(cfg, b);
    return cfg;
  }
  if (method == "feature_select") {
    b.allow_only({"m", "alpha", "tol", "seed", "restarts", "outer_iters", "inner_iters",
                  "u_floor", "graph"});
    FeatureSelectConfig cfg;
    cfg.base = parse_base(b, 1.0, false);
    cfg.graph = parse_graph(b.child("graph"));
    cfg.outer_iters = b.count("outer_iters", cfg.outer_iters);
    cfg.inner_iters = b.count("inner_iters", cfg.inner_iters);
    cfg.u_floor = b.number("u_floor", cfg.u_floor);
    validate_block(cfg, b);
    return cfg;
  }
  // multi_kernel
  b.allow_only({"m", "alpha", "tol", "seed", "restarts", "beta", "outer_iters", "inner_iters",
                "k_neighbors", "kernels"});
  MultiKernelConfig cfg;
  cfg.base = parse_base(b, 1.0, false);
  cfg.beta = b.number("beta", cfg.beta);
  cfg.outer_iters = b.count("outer_iters", cfg.outer_iters);
  cfg.inner_iters = b.count("inner_iters", cfg.inner_iters);
  cfg.k_neighbors = b.count("k_neighbors", cfg.k_neighbors);
  const json& kernels = b.raw("kernels");
  if (!kernels.is_array()) throw ConfigError(b.field("kernels"), "expected an array");
  if (kernels.empty()) throw ConfigError(b.field("kernels"), "candidate bank is empty");
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    cfg.kernels.push_back(parse_kernel(
        Block(kernels[i], b.field("kernels") + "[" + std::to_string(i) + "]")));
  }
  validate_block(cfg, b);
  return cfg;
}

struct SolverJson {
  json operator()(const NmfConfig& c) const { return base_to_json(c, false, true); }
  json operator()(const GnmfConfig& c) const {
    json j = base_to_json(c.base, true, true);
    j["graph"] = graph_to_json(c.graph);
    return j;
  }
  json operator()(const MultiGraphConfig& c) const {
    json j = base_to_json(c.base, true, false);
    j["beta"] = c.beta;
    j["outer_iters"] = c.outer_iters;
    j["inner_iters"] = c.inner_iters;
    j["graphs"] = json::array();
    for (const auto& g : c.graphs) j["graphs"].push_back(graph_to_json(g));
    return j;
  }
  json operator()(const FeatureSelectConfig& c) const {
    json j = base_to_json(c.base, true, false);
    j["graph"] = graph_to_json(c.graph);
    j["outer_iters"] = c.outer_iters;
    j["inner_iters"] = c.inner_iters;
    j["u_floor"] = c.u_floor;
    return j;
  }
  json operator()(const MultiKernelConfig& c) const {
    json j = base_to_json(c.base, true, false);
    j["beta"] = c.beta;
    j["outer_iters"] = c.outer_iters;
    j["inner_iters"] = c.inner_iters;
    j["k_neighbors"] = c.k_neighbors;
    j["kernels"] = json::array();
    for (const auto& k : c.kernels) j["kernels"].push_back(kernel_to_json(k));
    return j;
  }
};

json report_to_json(const SolveReport& report) {
  json phases = json::array();
  for (const auto& p : report.phase_trace) {
    phases.push_back({{"outer", p.outer}, {"phase", to_string(p.phase)}, {"objective", p.objective}});
  }
  return {{"objective_trace", report.objective_trace},
          {"iterations", report.iterations},
          {"termination", to_string(report.termination)},
          {"seed", report.seed},
          {"wall_seconds", report.wall_seconds},
          {"phase_trace", phases},
          {"warnings", report.warnings}};
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void write_weights(const SimplexWeights& weights, const std::vector<std::string>& labels,
                   const char* kind, const std::filesystem::path& dir) {
  json values = json::array();
  for (std::size_t i = 0; i < weights.size(); ++i) values.push_back(weights[i]);
  write_json({{"kind", kind}, {"labels", labels}, {"values", values}}, dir / "weights.json");
}

void write_factors(const Matrix& h, const Matrix& w, bool normalize, const char* h_name,
                   const std::filesystem::path& dir) {
  const Factors out = normalize ? normalize_basis(h, w) : Factors{h, w};
  save_matrix(NonNegMatrix(out.h), dir / h_name, MatrixFormat::csv);
  save_matrix(NonNegMatrix(out.w), dir / "W.csv", MatrixFormat::csv);
}

void check_neighbourhood(std::size_t k, std::size_t n, const std::string& field) {
  if (k >= n) {
    throw ConfigError(field, "k = " + std::to_string(k) + " must be smaller than the sample count " +
                                 std::to_string(n));
  }
}

}  // namespace

std::string RunConfig::method() const { return kMethods[solver.index()]; }

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  const Block top(doc, "");
  top.allow_only({"method", "input", "output_dir", "normalize", "nmf", "gnmf", "multi_graph",
                  "feature_select", "multi_kernel"});
  const std::string method = top.text("method");
  bool known = false;
  for (const char* m : kMethods) known = known || method == m;
  if (!known) {
    throw ConfigError("method",
                      "expected one of nmf, gnmf, multi_graph, feature_select, multi_kernel");
  }
  for (const char* m : kMethods) {
    if (m != method && top.has(m)) {
      throw ConfigError(m, "block does not match method '" + method + "'");
    }
  }

  RunConfig cfg;
  const Block input = top.child("input");
  input.allow_only({"path", "format"});
  cfg.input = input.text("path");
  if (cfg.input.is_relative() && !base_dir.empty()) cfg.input = base_dir / cfg.input;
  try {
    cfg.format = input.has("format") ? parse_matrix_format(input.text("format"))
                                     : format_from_extension(cfg.input);
  } catch (const ParameterError& e) {
    throw ConfigError("input.format", e.what());
  }
  cfg.output_dir = top.text("output_dir");
  if (cfg.output_dir.is_relative() && !base_dir.empty()) cfg.output_dir = base_dir / cfg.output_dir;
  cfg.normalize = top.boolean("normalize", false);
  cfg.solver = parse_solver(method, top.child(method));
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j{{"method", cfg.method()},
         {"input",
          {{"path", cfg.input.string()},
           {"format", cfg.format == MatrixFormat::csv ? "csv" : "matrix_market"}}},
         {"output_dir", cfg.output_dir.string()},
         {"normalize", cfg.normalize}};
  j[cfg.method()] = std::visit(SolverJson{}, cfg.solver);
  return j;
}

int run(const std::filesystem::path& config_path, std::ostream& log) {
  RunConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config", "cannot open '" + config_path.string() + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config", e.what());
    }
    cfg = parse_run_config(doc, config_path.parent_path());
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::optional<NonNegMatrix> x;
  try {
    x.emplace(load_matrix(cfg.input, cfg.format));
  } catch (const std::exception& e) {
    log << "data error: " << e.what() << '\n';
    return kDataError;
  }

  const std::size_t n = x->cols();
  try {
    const std::string method = cfg.method();
    if (const auto* c = std::get_if<GnmfConfig>(&cfg.solver)) {
      check_neighbourhood(c->graph.k, n, method + ".graph.k");
    } else if (const auto* c = std::get_if<FeatureSelectConfig>(&cfg.solver)) {
      check_neighbourhood(c->graph.k, n, method + ".graph.k");
    } else if (const auto* c = std::get_if<MultiGraphConfig>(&cfg.solver)) {
      for (std::size_t i = 0; i < c->graphs.size(); ++i) {
        check_neighbourhood(c->graphs[i].k, n, method + ".graphs[" + std::to_string(i) + "].k");
      }
    } else if (const auto* c = std::get_if<MultiKernelConfig>(&cfg.solver)) {
      check_neighbourhood(c->k_neighbors, n, method + ".k_neighbors");
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create '" + cfg.output_dir.string() + "': " + ec.message());
    const auto& dir = cfg.output_dir;

    SolveReport report;
    if (const auto* c = std::get_if<NmfConfig>(&cfg.solver)) {
      auto f = solve_nmf(*x, *c);
      write_factors(f.h.matrix(), f.w.matrix(), cfg.normalize, "H.csv", dir);
      report = std::move(f.report);
    } else if (const auto* c = std::get_if<GnmfConfig>(&cfg.solver)) {
      const AffinityGraph graph = build_knn_graph(*x, c->graph);
      auto f = solve_gnmf(*x, graph, c->base);
      write_factors(f.h.matrix(), f.w.matrix(), cfg.normalize, "H.csv", dir);
      report = std::move(f.report);
    } else if (const auto* c = std::get_if<MultiGraphConfig>(&cfg.solver)) {
      auto r = solve_multi_graph(*x, *c);
      write_factors(r.factorization.h.matrix(), r.factorization.w.matrix(), cfg.normalize,
                    "H.csv", dir);
      std::vector<std::string> labels;
      for (const auto& g : c->graphs) labels.push_back(g.label());
      write_weights(r.mu, labels, "mu", dir);
      report = std::move(r.factorization.report);
    } else if (const auto* c = std::get_if<FeatureSelectConfig>(&cfg.solver)) {
      auto r = solve_feature_select(*x, *c);
      write_factors(r.factorization.h.matrix(), r.factorization.w.matrix(), cfg.normalize,
                    "H.csv", dir);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < x->rows(); ++i) labels.push_back("feature_" + std::to_string(i));
      write_weights(r.u, labels, "u", dir);
      report = std::move(r.factorization.report);
    } else if (const auto* c = std::get_if<MultiKernelConfig>(&cfg.solver)) {
      auto r = solve_multi_kernel(*x, *c);
      save_matrix(r.g, dir / "G.csv", MatrixFormat::csv);
      save_matrix(r.w, dir / "W.csv", MatrixFormat::csv);
      if (r.linear_h) save_matrix(*r.linear_h, dir / "H_linear.csv", MatrixFormat::csv);
      std::vector<std::string> labels;
      for (const auto& k : c->kernels) labels.push_back(k.label());
      write_weights(r.mu, labels, "mu", dir);
      report = std::move(r.report);
    }

    json out = report_to_json(report);
    out["method"] = cfg.method();
    out["config"] = to_json(cfg);
    write_json(out, dir / "report.json");
    for (const auto& w : report.warnings) log << "warning: " << w << '\n';
    log << cfg.method() << ": " << report.iterations << " iterations, "
        << to_string(report.termination) << ", objective " << report.final_objective() << '\n';
  } catch (const std::exception& e) {
    log << "solver error: " << e.what() << '\n';
    return kSolverError;
  }
  return kOk;
}

int synth(const std::string& kind, std::uint64_t seed, const std::filesystem::path& out_dir,
          std::ostream& log) {
  SyntheticKind parsed;
  try {
    parsed = parse_synthetic_kind(kind);
  } catch (const ParameterError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    write_synthetic(make_synthetic(parsed, seed), out_dir);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kSolverError;
  }
  log << "wrote " << kind << " dataset to " << out_dir.string() << '\n';
  return kOk;
}

}  // namespace mrnmf::cli
