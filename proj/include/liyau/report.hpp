#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "liyau/curvature.hpp"
#include "liyau/graph.hpp"
#include "liyau/inequalities.hpp"

namespace liyau {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
Json number(double x);
double number_from(const Json& j);

/// "sha256:<hex>" of the canonical graph document.
std::string graph_hash(const WeightedGraph& g);

Json to_json(const GridPoint& p);
GridPoint grid_point_from(const Json& j);

Json to_json(const ViolationReport& r, bool with_grid = true);
Json to_json(const ChengReport& r);

Json to_json(const CurvatureWitness& w);
CurvatureWitness witness_from(const Json& j);
Json to_json(const CurvatureReport& r);
Json to_json(const DimensionCertificate& c);

/// check,graph,n,K,b,t_min_margin,min_margin,verdict
std::string csv_summary(const std::string& graph, const std::vector<ViolationReport>& reports);

/// vertex,cd_K_star,cde_best_K_upper,verdict
std::string csv_curvature(const CurvatureReport& r);

}  // namespace liyau
