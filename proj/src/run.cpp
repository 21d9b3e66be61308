#include "liyau/run.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "liyau/curvature.hpp"
#include "liyau/graph_io.hpp"
#include "liyau/heat.hpp"
#include "liyau/inequalities.hpp"
#include "liyau/operators.hpp"

namespace liyau {

namespace {

Json family_json(const FamilySpec& f) {
  Json j;
  j["family"] = to_string(f.family);
  j["size"] = f.size;
  j["dim"] = f.dim;
  j["side"] = f.side;
  j["branching"] = f.branching;
  j["depth"] = f.depth;
  j["weight"] = number(f.weight);
  j["measure"] = to_string(f.measure);
  if (f.measure == MeasureScheme::Custom) {
    Json m = Json::object();
    for (const auto& [id, value] : f.custom_measure) m[id] = number(value);
    j["custom_measure"] = std::move(m);
  }
  return j;
}

FamilySpec family_from(const Json& j) {
  FamilySpec f;
  f.family = parse_family(j.at("family").get<std::string>());
  f.size = j.at("size").get<int>();
  f.dim = j.at("dim").get<int>();
  f.side = j.at("side").get<int>();
  f.branching = j.at("branching").get<int>();
  f.depth = j.at("depth").get<int>();
  f.weight = number_from(j.at("weight"));
  f.measure = parse_measure_scheme(j.at("measure").get<std::string>());
  if (j.contains("custom_measure")) {
    for (const auto& [id, value] : j["custom_measure"].items()) f.custom_measure[id] = number_from(value);
  }
  return f;
}

WeightedGraph input_graph(const RunConfig& c) {
  if (c.family) return generate(*c.family);
  if (c.graph_path.empty()) throw Error(ErrorCode::InvalidArgument, "no input graph (use --graph or a family)");
  return load_graph(c.graph_path);
}

std::string graph_label(const RunConfig& c) {
  if (c.family) {
    const auto& f = *c.family;
    switch (f.family) {
      case Family::LatticeBox: return "lattice_box(" + std::to_string(f.dim) + "," + std::to_string(f.side) + ")";
      case Family::RegularTree:
        return "regular_tree(" + std::to_string(f.branching) + "," + std::to_string(f.depth) + ")";
      default: return to_string(f.family) + "(" + std::to_string(f.size) + ")";
    }
  }
  return c.graph_path;
}

std::vector<Index> resolve_vertices(const WeightedGraph& g, const std::vector<std::string>& ids) {
  std::vector<Index> out;
  if (ids.empty()) {
    for (Index x = 0; x < g.size(); ++x) out.push_back(x);
  } else {
    for (const auto& id : ids) out.push_back(g.index_of(id));
  }
  return out;
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions o;
  o.starts = c.starts;
  o.seed = c.seed;
  o.tol = c.tol;
  return o;
}

int exit_code_of(const std::vector<ViolationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return kExitViolation;
    inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
  }
  return inconclusive ? kExitInconclusive : kExitPass;
}

// Dimension for an inequality whose hypothesis is CDE'(n, Kc).
struct Dimension {
  double n = 0.0;
  bool certified = false;
  Json info;
};

Dimension resolve_dimension(const WeightedGraph& g, const RunConfig& c, double Kc, const std::vector<Index>& vertices) {
  Dimension d;
  const auto opts = search_options(c);
  if (c.n) {
    d.n = *c.n;
    d.certified = certify_cde(g, d.n, Kc, vertices, opts);
    d.info["source"] = "given";
    d.info["n"] = number(d.n);
    d.info["K"] = number(Kc);
    d.info["certified"] = d.certified;
    return d;
  }
  const auto cert = certify_dimension(g, Kc, vertices, opts);
  d.n = cert.n;
  d.certified = cert.certified;
  d.info = to_json(cert);
  d.info["source"] = "search";
  d.info["K"] = number(Kc);
  return d;
}

Json header(const RunConfig& c, const WeightedGraph& g) {
  Json j;
  j["schema"] = kReportSchema;
  j["config"] = to_json(c);
  Json graph;
  graph["label"] = graph_label(c);
  graph["hash"] = graph_hash(g);
  graph["vertices"] = g.size();
  graph["edges"] = g.edges().size();
  j["graph"] = std::move(graph);
  return j;
}

RunResult finish(const RunConfig& c, Json doc, const std::vector<ViolationReport>& reports, const std::string& label) {
  RunResult out;
  out.exit_code = exit_code_of(reports);
  Json checks = Json::array();
  std::ostringstream msg;
  for (const auto& r : reports) {
    checks.push_back(to_json(r));
    msg << r.check << ": " << to_string(r.verdict) << " (min margin " << number(r.min_margin).dump() << ") ";
  }
  doc["checks"] = std::move(checks);
  doc["exit_code"] = out.exit_code;
  out.output = c.format == "csv" ? csv_summary(label, reports) : doc.dump(2) + "\n";
  out.message = msg.str();
  return out;
}

RunResult not_certified(const RunConfig& c, Json doc, const std::string& check, const Dimension& d,
                        const std::string& label) {
  ViolationReport r{check, d.n, c.K, c.tol, false};
  r.note = "no dimension certified by search: " + d.info.value("note", std::string());
  r.min_margin = std::numeric_limits<double>::quiet_NaN();
  r.verdict = Verdict::Inconclusive;
  return finish(c, std::move(doc), {r}, label);
}

RunResult run_generate(const RunConfig& c) {
  if (!c.family) throw Error(ErrorCode::InvalidArgument, "generate needs a family");
  const auto g = generate(*c.family);
  validate(g);
  return {kExitPass, serialize_graph(g), graph_label(c) + ": " + std::to_string(g.size()) + " vertices"};
}

RunResult run_curvature(const RunConfig& c) {
  const auto g = input_graph(c);
  const auto vertices = resolve_vertices(g, c.vertices);
  Json doc = header(c, g);
  double n = 0.0;
  if (c.n) {
    n = *c.n;
  } else {
    const auto cert = certify_dimension(g, c.K, vertices, search_options(c));
    doc["certificate"] = to_json(cert);
    if (!cert.certified) {
      doc["exit_code"] = kExitInconclusive;
      return {kExitInconclusive, c.format == "csv" ? std::string() : doc.dump(2) + "\n", cert.note};
    }
    n = cert.n;
  }
  const auto report = curvature_sweep(g, n, c.K, vertices, search_options(c));
  doc["curvature"] = to_json(report);
  const int code = report.any_violated() ? kExitViolation : report.any_inconclusive() ? kExitInconclusive : kExitPass;
  doc["exit_code"] = code;
  std::ostringstream msg;
  msg << "CDE'(" << number(n).dump() << "," << number(c.K).dump() << "): "
      << (code == kExitViolation ? "violated" : code == kExitPass ? "no counterexample found" : "inconclusive");
  return {code, c.format == "csv" ? csv_curvature(report) : doc.dump(2) + "\n", msg.str()};
}

RunResult run_liyau(const RunConfig& c) {
  const auto g = input_graph(c);
  const auto vertices = resolve_vertices(g, c.vertices);
  Json doc = header(c, g);
  const auto d = resolve_dimension(g, c, c.K, vertices);
  doc["dimension"] = d.info;
  if (!c.n && !d.certified) return not_certified(c, std::move(doc), "liyau", d, graph_label(c));
  const auto prop = Propagator::build(g);
  LiYauSweep sweep;
  sweep.n = d.n;
  sweep.K = c.K;
  sweep.b_list = c.b_list;
  sweep.t_grid = parse_grid(c.t_grid);
  sweep.vertices = vertices;
  sweep.certified = d.certified;
  sweep.tol = c.tol;
  std::vector<ViolationReport> reports{liyau_check(g, prop, sweep)};
  if (c.K == 0.0) reports.push_back(classical_liyau_check(g, prop, sweep));
  return finish(c, std::move(doc), reports, graph_label(c));
}

RunResult run_harnack(const RunConfig& c) {
  const auto g = input_graph(c);
  const auto vertices = resolve_vertices(g, c.vertices);
  Json doc = header(c, g);
  const auto d = resolve_dimension(g, c, 0.0, vertices);
  doc["dimension"] = d.info;
  if (!c.n && !d.certified) return not_certified(c, std::move(doc), "harnack", d, graph_label(c));
  const auto prop = Propagator::build(g);
  HarnackSweep sweep;
  sweep.n = d.n;
  sweep.certified = d.certified;
  sweep.tol = c.tol;
  return finish(c, std::move(doc), {harnack_sweep(g, prop, sweep)}, graph_label(c));
}

RunResult run_kernel(const RunConfig& c) {
  const auto g = input_graph(c);
  const auto vertices = resolve_vertices(g, c.vertices);
  Json doc = header(c, g);
  const auto d = resolve_dimension(g, c, 0.0, vertices);
  doc["dimension"] = d.info;
  if (!c.n && !d.certified) return not_certified(c, std::move(doc), "kernel", d, graph_label(c));
  const auto prop = Propagator::build(g);
  return finish(c, std::move(doc), {kernel_upper_sweep(g, prop, d.n, parse_grid(c.t_grid), d.certified, c.tol)},
                graph_label(c));
}

RunResult run_cheng(const RunConfig& c) {
  if (!(c.K > 0.0)) throw Error(ErrorCode::InvalidArgument, "cheng needs --K > 0 (hypothesis CDE'(n,-K))");
  const auto g = input_graph(c);
  const auto vertices = resolve_vertices(g, c.vertices);
  Json doc = header(c, g);
  const auto d = resolve_dimension(g, c, -c.K, vertices);
  doc["dimension"] = d.info;
  if (!c.n && !d.certified) return not_certified(c, std::move(doc), "cheng", d, graph_label(c));
  const auto report = cheng_check(g, d.n, c.K, d.certified, vertices.front(), 4, c.tol);
  doc["dirichlet"] = to_json(report);
  return finish(c, std::move(doc), {report.report}, graph_label(c));
}

// Identity and semigroup residuals on seeded random graphs. Each grid point
// carries lhs = relative residual, rhs = allowed residual; the report
// tolerance is 0, so any residual above its allowance fails.
RunResult run_identities(const RunConfig& c) {
  if (c.random_graphs < 1) throw Error(ErrorCode::InvalidArgument, "--random must be >= 1");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  auto make = [&](const char* name) {
    ViolationReport r{name, 0.0, 0.0, 0.0, true};
    return r;
  };
  ViolationReport green = make("green"), polar = make("gamma_polarization"), tilde = make("gamma2_tilde_identity"),
                  semigroup = make("semigroup");
  auto add = [](ViolationReport& r, const std::string& label, double t, double residual, double allowed) {
    r.grid.push_back({label, "", "", t, 0.0, 0.0, residual, allowed, allowed - residual});
  };
  auto rel = [](const VertexFunction& diff, const VertexFunction& ref) {
    return diff.cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
  };
  for (int k = 0; k < c.random_graphs; ++k) {
    const auto g = random_connected_graph(rng);
    const std::string label = "g" + std::to_string(k);
    VertexFunction f(g.size()), h(g.size()), u(g.size());
    for (Index x = 0; x < g.size(); ++x) {
      f[x] = unit(rng);
      h[x] = unit(rng);
      u[x] = pos(rng);
    }
    const VertexFunction m = g.measure();
    const double green_scale =
        std::max(1.0, (f.cwiseProduct(laplacian(g, h)).cwiseAbs().cwiseProduct(m)).sum() +
                          (gamma(g, f, h).cwiseAbs().cwiseProduct(m)).sum());
    add(green, label, 0.0, std::abs(green_residual(g, f, h)) / green_scale, 1e-9);

    const VertexFunction f2 = f.cwiseProduct(f);
    add(polar, label, 0.0, rel(laplacian(g, f2) - 2.0 * f.cwiseProduct(laplacian(g, f)) - 2.0 * gamma(g, f), laplacian(g, f2)),
        1e-9);

    const VertexFunction r = u.cwiseSqrt();
    const VertexFunction lhs = gamma2_tilde(g, r);
    const VertexFunction rhs = 0.5 * laplacian(g, gamma(g, r)) - gamma(g, r, laplacian(g, u).cwiseQuotient(2.0 * r));
    add(tilde, label, 0.0, rel(lhs - rhs, rhs), 1e-9);

    const auto prop = Propagator::build(g);
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      const VertexFunction pf = prop.apply(f, t);
      double worst = rel(prop.apply(prop.apply(f, 0.5 * t), 0.5 * t) - pf, f);
      worst = std::max(worst, rel(prop.apply_derivative(f, t) - prop.apply(laplacian(g, f), t), laplacian(g, f)));
      worst = std::max(worst, std::abs(inner(g, pf, h) - inner(g, f, prop.apply(h, t))) /
                                  std::max(1.0, std::abs(inner(g, pf, h))));
      worst = std::max(worst, (prop.apply(VertexFunction::Ones(g.size()), t).array() - 1.0).abs().maxCoeff());
      worst = std::max(worst, std::max(0.0, -prop.apply(u, t).minCoeff()));
      for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        worst = std::max(worst, std::max(0.0, lp_norm(g, pf, p) - lp_norm(g, f, p)) / std::max(1.0, lp_norm(g, f, p)));
      }
      add(semigroup, label, t, worst, 1e-8);
    }
  }
  std::vector<ViolationReport> reports{green, polar, tilde, semigroup};
  for (auto& r : reports) finalize(r);
  Json doc;
  doc["schema"] = kReportSchema;
  doc["config"] = to_json(c);
  return finish(c, std::move(doc), reports, "random(" + std::to_string(c.random_graphs) + ")");
}

// Recompute one stored witness from scratch.
double recheck_point(const WeightedGraph& g, const std::string& check, const Json& report, const GridPoint& p) {
  const double n = number_from(report.at("n"));
  const double K = number_from(report.at("K"));
  const auto prop = Propagator::build(g);
  const Index x = g.index_of(p.vertex);
  auto delta = [&](const std::string& id) { return VertexFunction::Unit(g.size(), g.index_of(id)); };
  if (check == "liyau") return liyau_sides(g, prop, delta(p.source), p.t, {n, K, PowerSchedule{p.b}}).margin()[x];
  if (check == "liyau_classical") return classical_liyau_residual(g, prop, delta(p.source), p.t, n)[x];
  if (check == "harnack") return harnack_check(g, prop, delta(p.source), x, g.index_of(p.peer), p.t, p.s, n);
  if (check == "kernel") return kernel_upper_check(g, prop, p.t, x, g.index_of(p.peer), n);
  if (check == "cheng") return K * n / 2.0 - spectral_bottom(g);
  throw Error(ErrorCode::InvalidArgument, "no recheck for check '" + check + "'");
}

RunResult run_recheck(const RunConfig& c) {
  if (c.report_path.empty()) throw Error(ErrorCode::InvalidArgument, "recheck needs --report");
  std::ifstream in(c.report_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + c.report_path);
  Json report;
  try {
    report = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, c.report_path + ": " + e.what());
  }
  if (report.value("schema", 0) != kReportSchema) throw Error(ErrorCode::SchemaError, "unsupported report schema");
  const RunConfig original = run_config_from(report.at("config"));
  const auto g = input_graph(original);
  const std::string hash = graph_hash(g);
  if (report.contains("graph") && report["graph"].value("hash", "") != hash) {
    throw Error(ErrorCode::SchemaError, "graph content changed since the report was written");
  }
  Json doc;
  doc["schema"] = kReportSchema;
  doc["report"] = c.report_path;
  doc["graph_hash"] = hash;
  Json rows = Json::array();
  int confirmed = 0, failed = 0;
  auto record = [&](const std::string& check, Json where, double stored, double recomputed, double tol) {
    const bool ok = recomputed < -tol / 2.0;
    (ok ? confirmed : failed)++;
    Json row;
    row["check"] = check;
    row["at"] = std::move(where);
    row["stored"] = number(stored);
    row["recomputed"] = number(recomputed);
    row["confirmed"] = ok;
    rows.push_back(std::move(row));
  };
  if (report.contains("checks")) {
    for (const auto& chk : report["checks"]) {
      if (chk.at("witness").is_null()) continue;
      const auto p = grid_point_from(chk["witness"]);
      const std::string check = chk.at("check").get<std::string>();
      record(check, to_json(p), p.margin, recheck_point(g, check, chk, p), number_from(chk.at("tol")));
    }
  }
  if (report.contains("curvature")) {
    for (const auto& rec : report["curvature"].at("records")) {
      if (rec.at("cde_witness").is_null()) continue;
      const auto w = witness_from(rec["cde_witness"]);
      record("curvature", Json(w.vertex), w.deficit, recheck_witness(g, w), original.tol);
    }
  }
  doc["rechecks"] = std::move(rows);
  RunResult out;
  out.exit_code = failed > 0 ? kExitError : confirmed > 0 ? kExitViolation : kExitPass;
  doc["exit_code"] = out.exit_code;
  out.output = doc.dump(2) + "\n";
  out.message = std::to_string(confirmed) + " witness(es) reproduced, " + std::to_string(failed) + " not reproduced";
  return out;
}

}  // namespace

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.family) {
    j["family"] = family_json(*c.family);
  } else {
    j["graph"] = c.graph_path;
  }
  j["n"] = c.n ? number(*c.n) : Json(nullptr);
  j["K"] = number(c.K);
  Json b = Json::array();
  for (double x : c.b_list) b.push_back(number(x));
  j["b"] = std::move(b);
  j["t"] = c.t_grid;
  j["eps"] = number(c.eps);
  j["seed"] = c.seed;
  j["starts"] = c.starts;
  j["tol"] = number(c.tol);
  j["vertices"] = c.vertices;
  j["random"] = c.random_graphs;
  if (!c.report_path.empty()) j["report"] = c.report_path;
  j["format"] = c.format;
  return j;
}

RunConfig run_config_from(const Json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("family")) {
    c.family = family_from(j["family"]);
  } else {
    c.graph_path = j.value("graph", "");
  }
  if (!j.at("n").is_null()) c.n = number_from(j["n"]);
  c.K = number_from(j.at("K"));
  c.b_list.clear();
  for (const auto& b : j.at("b")) c.b_list.push_back(number_from(b));
  c.t_grid = j.at("t").get<std::string>();
  c.eps = number_from(j.at("eps"));
  c.seed = j.at("seed").get<std::uint64_t>();
  c.starts = j.at("starts").get<int>();
  c.tol = number_from(j.at("tol"));
  c.vertices = j.at("vertices").get<std::vector<std::string>>();
  c.random_graphs = j.at("random").get<int>();
  c.report_path = j.value("report", "");
  c.format = j.at("format").get<std::string>();
  return c;
}

RunResult run(const RunConfig& config) {
  try {
    if (config.format != "json" && config.format != "csv") {
      throw Error(ErrorCode::InvalidArgument, "format must be json or csv");
    }
    const auto& cmd = config.command;
    if (cmd == "generate") return run_generate(config);
    if (cmd == "curvature") return run_curvature(config);
    if (cmd == "liyau") return run_liyau(config);
    if (cmd == "harnack") return run_harnack(config);
    if (cmd == "kernel") return run_kernel(config);
    if (cmd == "cheng") return run_cheng(config);
    if (cmd == "identities") return run_identities(config);
    if (cmd == "recheck") return run_recheck(config);
    throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
  } catch (const std::exception& e) {
    return {kExitError, "", e.what()};
  }
}

}  // namespace liyau
