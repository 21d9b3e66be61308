#include "liyau/families.hpp"

#include <set>
#include <vector>

namespace liyau {

namespace {

struct Skeleton {
  std::vector<std::string> ids;
  std::vector<std::pair<int, int>> edges;
};

Skeleton path_skeleton(int n, bool closed) {
  Skeleton s;
  for (int i = 0; i < n; ++i) s.ids.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) s.edges.emplace_back(i, i + 1);
  if (closed && n > 2) s.edges.emplace_back(n - 1, 0);
  return s;
}

Skeleton complete_skeleton(int n) {
  Skeleton s;
  for (int i = 0; i < n; ++i) s.ids.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.edges.emplace_back(i, j);
  return s;
}

Skeleton star_skeleton(int n) {
  Skeleton s;
  for (int i = 0; i < n; ++i) s.ids.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i) s.edges.emplace_back(0, i);
  return s;
}

std::string lattice_id(const std::vector<int>& coord) {
  std::string id;
  for (std::size_t k = 0; k < coord.size(); ++k) {
    if (k) id += ',';
    id += std::to_string(coord[k]);
  }
  return id;
}

// Row-major: the last coordinate varies fastest.
std::vector<int> lattice_coord(long index, int dim, int side) {
  std::vector<int> c(static_cast<std::size_t>(dim));
  for (int k = dim - 1; k >= 0; --k) {
    c[static_cast<std::size_t>(k)] = static_cast<int>(index % side);
    index /= side;
  }
  return c;
}

Skeleton lattice_skeleton(int dim, int side) {
  Skeleton s;
  long count = 1;
  for (int k = 0; k < dim; ++k) count *= side;
  long stride = 1;
  std::vector<long> strides(static_cast<std::size_t>(dim));
  for (int k = dim - 1; k >= 0; --k) {
    strides[static_cast<std::size_t>(k)] = stride;
    stride *= side;
  }
  for (long i = 0; i < count; ++i) s.ids.push_back(lattice_id(lattice_coord(i, dim, side)));
  for (long i = 0; i < count; ++i) {
    const auto c = lattice_coord(i, dim, side);
    for (int k = 0; k < dim; ++k) {
      if (c[static_cast<std::size_t>(k)] + 1 < side) {
        s.edges.emplace_back(static_cast<int>(i), static_cast<int>(i + strides[static_cast<std::size_t>(k)]));
      }
    }
  }
  return s;
}

Skeleton tree_skeleton(int branching, int depth) {
  Skeleton s;
  s.ids.push_back("r");
  // Breadth-first so ids appear level by level.
  std::vector<int> frontier{0};
  for (int level = 0; level < depth; ++level) {
    const int children = level == 0 ? branching : branching - 1;
    std::vector<int> next;
    for (int parent : frontier) {
      for (int c = 0; c < children; ++c) {
        const int child = static_cast<int>(s.ids.size());
        s.ids.push_back(s.ids[static_cast<std::size_t>(parent)] + "." + std::to_string(c));
        s.edges.emplace_back(parent, child);
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  return s;
}

WeightedGraph assemble(const Skeleton& s, const FamilySpec& spec) {
  std::vector<double> deg(s.ids.size(), 0.0);
  for (const auto& [a, b] : s.edges) {
    deg[static_cast<std::size_t>(a)] += spec.weight;
    deg[static_cast<std::size_t>(b)] += spec.weight;
  }
  GraphBuilder b;
  for (std::size_t i = 0; i < s.ids.size(); ++i) {
    double m = 1.0;
    switch (spec.measure) {
      case MeasureScheme::Unit: break;
      case MeasureScheme::Degree: m = deg[i]; break;
      case MeasureScheme::Custom: {
        auto it = spec.custom_measure.find(s.ids[i]);
        if (it == spec.custom_measure.end()) {
          throw Error(ErrorCode::SchemaError, "custom measure has no entry for vertex '" + s.ids[i] + "'");
        }
        m = it->second;
        break;
      }
    }
    b.add_vertex(s.ids[i], m);
  }
  for (const auto& [u, v] : s.edges) {
    b.add_edge(s.ids[static_cast<std::size_t>(u)], s.ids[static_cast<std::size_t>(v)], spec.weight);
  }
  return b.build();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

Family parse_family(const std::string& name) {
  if (name == "path") return Family::Path;
  if (name == "cycle") return Family::Cycle;
  if (name == "complete") return Family::Complete;
  if (name == "star") return Family::Star;
  if (name == "lattice_box") return Family::LatticeBox;
  if (name == "regular_tree") return Family::RegularTree;
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Path: return "path";
    case Family::Cycle: return "cycle";
    case Family::Complete: return "complete";
    case Family::Star: return "star";
    case Family::LatticeBox: return "lattice_box";
    case Family::RegularTree: return "regular_tree";
  }
  return "path";
}

MeasureScheme parse_measure_scheme(const std::string& name) {
  if (name == "unit") return MeasureScheme::Unit;
  if (name == "degree") return MeasureScheme::Degree;
  if (name == "custom") return MeasureScheme::Custom;
  throw Error(ErrorCode::InvalidArgument, "unknown measure scheme '" + name + "'");
}

std::string to_string(MeasureScheme m) {
  switch (m) {
    case MeasureScheme::Unit: return "unit";
    case MeasureScheme::Degree: return "degree";
    case MeasureScheme::Custom: return "custom";
  }
  return "unit";
}

WeightedGraph generate(const FamilySpec& spec) {
  require(spec.weight > 0.0, "edge weight must be positive");
  switch (spec.family) {
    case Family::Path:
      require(spec.size >= 1, "path needs at least 1 vertex");
      return assemble(path_skeleton(spec.size, false), spec);
    case Family::Cycle:
      require(spec.size >= 3, "cycle needs at least 3 vertices");
      return assemble(path_skeleton(spec.size, true), spec);
    case Family::Complete:
      require(spec.size >= 1, "complete graph needs at least 1 vertex");
      return assemble(complete_skeleton(spec.size), spec);
    case Family::Star:
      require(spec.size >= 2, "star needs a center and at least one leaf");
      return assemble(star_skeleton(spec.size), spec);
    case Family::LatticeBox:
      require(spec.dim >= 1 && spec.side >= 1, "lattice_box needs dim >= 1 and side >= 1");
      return assemble(lattice_skeleton(spec.dim, spec.side), spec);
    case Family::RegularTree:
      require(spec.branching >= 2 && spec.depth >= 0, "regular_tree needs branching >= 2 and depth >= 0");
      return assemble(tree_skeleton(spec.branching, spec.depth), spec);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

WeightedGraph path_graph(int n) { return generate({.family = Family::Path, .size = n}); }
WeightedGraph cycle_graph(int n) { return generate({.family = Family::Cycle, .size = n}); }
WeightedGraph complete_graph(int n) { return generate({.family = Family::Complete, .size = n}); }
WeightedGraph star_graph(int n) { return generate({.family = Family::Star, .size = n}); }
WeightedGraph lattice_box(int dim, int side) {
  return generate({.family = Family::LatticeBox, .dim = dim, .side = side});
}
WeightedGraph regular_tree(int branching, int depth) {
  return generate({.family = Family::RegularTree, .branching = branching, .depth = depth});
}

std::vector<Index> lattice_interior(const WeightedGraph& box, int dim, int side) {
  std::vector<Index> out;
  for (Index x = 0; x < box.size(); ++x) {
    const auto c = lattice_coord(static_cast<long>(x), dim, side);
    bool interior = true;
    for (int v : c) interior = interior && v > 0 && v + 1 < side;
    if (interior) out.push_back(x);
  }
  return out;
}

WeightedGraph random_connected_graph(std::mt19937_64& rng, const RandomGraphOptions& o) {
  std::uniform_int_distribution<int> size_dist(o.min_vertices, o.max_vertices);
  std::uniform_real_distribution<double> weight(o.weight_min, o.weight_max);
  std::uniform_real_distribution<double> measure(o.measure_min, o.measure_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = size_dist(rng);
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex("v" + std::to_string(i), measure(rng));
  std::set<std::pair<int, int>> used;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int p = parent(rng);
    used.emplace(p, i);
    b.add_edge("v" + std::to_string(p), "v" + std::to_string(i), weight(rng));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (used.contains({i, j})) continue;
      const double p = i == j ? (o.allow_loops ? 0.5 * o.extra_edge_probability : 0.0) : o.extra_edge_probability;
      if (coin(rng) < p) b.add_edge("v" + std::to_string(i), "v" + std::to_string(j), weight(rng));
    }
  }
  return b.build();
}

}  // namespace liyau
