#include "liyau/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

#include "liyau/graph_io.hpp"

namespace liyau {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorCode::SchemaError, "expected a number, got " + j.dump());
}

std::string graph_hash(const WeightedGraph& g) {
  const std::string doc = serialize_graph(g);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(doc.data(), doc.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "SHA-256 failed");
  }
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Json to_json(const GridPoint& p) {
  Json j;
  j["vertex"] = p.vertex;
  if (!p.peer.empty()) j["peer"] = p.peer;
  if (!p.source.empty()) j["source"] = p.source;
  j["t"] = number(p.t);
  j["s"] = number(p.s);
  j["b"] = number(p.b);
  j["lhs"] = number(p.lhs);
  j["rhs"] = number(p.rhs);
  j["margin"] = number(p.margin);
  return j;
}

GridPoint grid_point_from(const Json& j) {
  GridPoint p;
  p.vertex = j.at("vertex").get<std::string>();
  p.peer = j.value("peer", "");
  p.source = j.value("source", "");
  p.t = number_from(j.at("t"));
  p.s = number_from(j.at("s"));
  p.b = number_from(j.at("b"));
  p.lhs = number_from(j.at("lhs"));
  p.rhs = number_from(j.at("rhs"));
  p.margin = number_from(j.at("margin"));
  return p;
}

Json to_json(const ViolationReport& r, bool with_grid) {
  Json j;
  j["check"] = r.check;
  j["n"] = number(r.n);
  j["K"] = number(r.K);
  j["tol"] = number(r.tol);
  j["prerequisite_certified"] = r.prerequisite_certified;
  j["verdict"] = std::string(to_string(r.verdict));
  j["min_margin"] = number(r.min_margin);
  j["worst"] = r.worst ? to_json(*r.worst) : Json(nullptr);
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  j["points"] = r.grid.size();
  if (with_grid) {
    Json grid = Json::array();
    for (const auto& p : r.grid) grid.push_back(to_json(p));
    j["grid"] = std::move(grid);
  }
  return j;
}

Json to_json(const ChengReport& r) {
  Json j = to_json(r.report);
  j["lambda_full"] = number(r.lambda_full);
  j["radii"] = r.radii;
  Json d = Json::array();
  for (double x : r.dirichlet) d.push_back(number(x));
  j["dirichlet"] = std::move(d);
  j["monotone"] = r.monotone;
  return j;
}

Json to_json(const CurvatureWitness& w) {
  Json j;
  j["vertex"] = w.vertex;
  j["n"] = number(w.n);
  j["K"] = number(w.K);
  j["deficit"] = number(w.deficit);
  j["normalization"] = number(w.normalization);
  Json f = Json::object();
  for (std::size_t i = 0; i < w.support.size(); ++i) f[w.support[i]] = number(w.values[i]);
  j["f"] = std::move(f);
  return j;
}

CurvatureWitness witness_from(const Json& j) {
  CurvatureWitness w;
  w.vertex = j.at("vertex").get<std::string>();
  w.n = number_from(j.at("n"));
  w.K = number_from(j.at("K"));
  w.deficit = number_from(j.at("deficit"));
  w.normalization = number_from(j.at("normalization"));
  for (const auto& [id, value] : j.at("f").items()) {
    w.support.push_back(id);
    w.values.push_back(number_from(value));
  }
  return w;
}

Json to_json(const CurvatureReport& r) {
  Json j;
  j["n"] = number(r.n);
  j["K"] = number(r.K);
  Json records = Json::array();
  for (const auto& rec : r.records) {
    Json x;
    x["vertex"] = rec.vertex;
    x["cd_K_star"] = number(rec.cd_K_star);
    x["cde_best_K_upper"] = number(rec.cde_best_K_upper);
    x["cde_witness"] = rec.cde_witness ? to_json(*rec.cde_witness) : Json(nullptr);
    x["verdict"] = std::string(to_string(rec.verdict));
    records.push_back(std::move(x));
  }
  j["records"] = std::move(records);
  return j;
}

Json to_json(const DimensionCertificate& c) {
  Json j;
  j["certified"] = c.certified;
  j["n"] = number(c.n);
  j["cd_lower_bound"] = number(c.cd_lower_bound);
  j["note"] = c.note;
  return j;
}

namespace {

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Same shortest round-trip text as the JSON output.
  return Json(x).dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string csv_summary(const std::string& graph, const std::vector<ViolationReport>& reports) {
  std::ostringstream out;
  out << "check,graph,n,K,b,t_min_margin,min_margin,verdict\n";
  for (const auto& r : reports) {
    out << csv_field(r.check) << ',' << csv_field(graph) << ',' << csv_number(r.n) << ',' << csv_number(r.K) << ','
        << (r.worst ? csv_number(r.worst->b) : "") << ',' << (r.worst ? csv_number(r.worst->t) : "") << ','
        << csv_number(r.min_margin) << ',' << to_string(r.verdict) << '\n';
  }
  return out.str();
}

std::string csv_curvature(const CurvatureReport& r) {
  std::ostringstream out;
  out << "vertex,cd_K_star,cde_best_K_upper,verdict\n";
  for (const auto& rec : r.records) {
    out << csv_field(rec.vertex) << ',' << csv_number(rec.cd_K_star) << ',' << csv_number(rec.cde_best_K_upper) << ','
        << to_string(rec.verdict) << '\n';
  }
  return out.str();
}

}  // namespace liyau
