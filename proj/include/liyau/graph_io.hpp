#pragma once

#include <filesystem>
#include <string>

#include "liyau/graph.hpp"

namespace liyau {

// {"vertices": [id...], "measure": {id: m}, "edges": [{"u": id, "v": id, "w": w}]}
// Each undirected edge once; loops as u == v. Errors carry "line:column (pointer)".

WeightedGraph parse_graph(const std::string& text, const std::string& origin = "<memory>");
std::string serialize_graph(const WeightedGraph& g);

WeightedGraph load_graph(const std::filesystem::path& path);
void save_graph(const WeightedGraph& g, const std::filesystem::path& path);

}  // namespace liyau
