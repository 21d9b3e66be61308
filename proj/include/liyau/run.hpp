#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liyau/families.hpp"
#include "liyau/report.hpp"

namespace liyau {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitError = 3;

struct RunConfig {
  std::string command;                 // generate curvature liyau harnack kernel cheng identities recheck
  std::string graph_path;              // input graph, or
  std::optional<FamilySpec> family;    // a generated one
  std::optional<double> n;             // absent: smallest n certified by search
  double K = 0.0;
  std::vector<double> b_list = default_b_list();
  std::string t_grid = "0.01:10:log25";
  double eps = 0.1;
  std::uint64_t seed = 42;
  int starts = 64;
  double tol = 1e-7;
  std::vector<std::string> vertices;   // evaluation / certification vertices; empty means all
  int random_graphs = 50;              // identities
  std::string report_path;             // recheck
  std::string format = "json";         // json | csv
};

Json to_json(const RunConfig& c);
RunConfig run_config_from(const Json& j);

struct RunResult {
  int exit_code = kExitPass;
  std::string output;    // JSON or CSV document, per config.format
  std::string message;   // one-line summary for the terminal
};

/// Pure function of the config: same config, byte-identical output.
RunResult run(const RunConfig& config);

}  // namespace liyau
