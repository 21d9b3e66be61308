#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "liyau/graph.hpp"

namespace liyau {

enum class Family { Path, Cycle, Complete, Star, LatticeBox, RegularTree };

enum class MeasureScheme { Unit, Degree, Custom };

/// Generator input. `size` is |V| for path, cycle, complete and star (a star
/// of size N is one center and N - 1 leaves). lattice_box uses `dim` and
/// `side`; regular_tree uses `branching` (root degree, every inner vertex has
/// that degree) and `depth`.
struct FamilySpec {
  Family family = Family::Path;
  int size = 2;
  int dim = 2;
  int side = 2;
  int branching = 2;
  int depth = 1;
  double weight = 1.0;
  MeasureScheme measure = MeasureScheme::Unit;
  std::map<std::string, double> custom_measure;
};

Family parse_family(const std::string& name);
std::string to_string(Family f);
MeasureScheme parse_measure_scheme(const std::string& name);
std::string to_string(MeasureScheme m);

WeightedGraph generate(const FamilySpec& spec);

// Shorthands with unit weights and unit measure.
WeightedGraph path_graph(int n);
WeightedGraph cycle_graph(int n);
WeightedGraph complete_graph(int n);
WeightedGraph star_graph(int n);
WeightedGraph lattice_box(int dim, int side);
WeightedGraph regular_tree(int branching, int depth);

/// Vertices of lattice_box(dim, side) whose whole unit neighborhood lies in the box.
std::vector<Index> lattice_interior(const WeightedGraph& box, int dim, int side);

struct RandomGraphOptions {
  int min_vertices = 2;
  int max_vertices = 40;
  double weight_min = 0.1;
  double weight_max = 10.0;
  double measure_min = 0.1;
  double measure_max = 10.0;
  double extra_edge_probability = 0.15;
  bool allow_loops = true;
};

/// Random connected weighted graph: a random spanning tree plus extra edges.
WeightedGraph random_connected_graph(std::mt19937_64& rng, const RandomGraphOptions& options = {});

}  // namespace liyau
