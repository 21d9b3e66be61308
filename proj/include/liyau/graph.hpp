#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "liyau/error.hpp"

namespace liyau {

using Index = std::ptrdiff_t;

/// Real-valued function on the vertex set, indexed by dense vertex index.
using VertexFunction = Eigen::VectorXd;

struct Edge {
  Index u;
  Index v;
  double weight;
};

struct Neighbor {
  Index vertex;
  double weight;
};

/// Weighted graph (V, E, m, w). Immutable once built; see GraphBuilder.
///
/// Vertex indices follow insertion order. Edges are undirected and stored once
/// in insertion order; loops {x, x} are kept in the adjacency but contribute
/// nothing to difference operators.
class WeightedGraph {
 public:
  Index size() const { return static_cast<Index>(ids_.size()); }

  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(Index x) const { return ids_[static_cast<std::size_t>(x)]; }

  /// Throws UnknownVertex.
  Index index_of(std::string_view id) const;
  std::optional<Index> find(std::string_view id) const;

  const Eigen::VectorXd& measure() const { return measure_; }
  double measure(Index x) const { return measure_[x]; }

  std::span<const Neighbor> neighbors(Index x) const {
    const auto b = offsets_[static_cast<std::size_t>(x)];
    const auto e = offsets_[static_cast<std::size_t>(x) + 1];
    return {adjacency_.data() + b, e - b};
  }

  const std::vector<Edge>& edges() const { return edges_; }

  /// deg(x) = sum of w_xy over neighbors, loops included.
  double degree(Index x) const { return degree_[x]; }
  const Eigen::VectorXd& degrees() const { return degree_; }

  double min_measure() const;
  double max_measure() const;
  double min_weight() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  friend class GraphBuilder;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> index_;
  Eigen::VectorXd measure_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  Eigen::VectorXd degree_;
};

/// Collects vertices and edges, then validates on build().
class GraphBuilder {
 public:
  GraphBuilder& add_vertex(std::string id, double measure);
  /// Raises DuplicateEdge for a repeated pair with equal weight and
  /// AsymmetricWeight when the reversed pair carries a different weight.
  GraphBuilder& add_edge(std::string_view u, std::string_view v, double weight);

  /// Throws NonpositiveMeasure, NonpositiveWeight, Disconnected.
  WeightedGraph build() const;

 private:
  struct PendingEdge {
    Index u;
    Index v;
    double weight;
  };

  Index require(std::string_view id) const;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> index_;
  std::vector<double> measure_;
  std::vector<PendingEdge> edges_;
  std::unordered_map<long long, std::size_t> pair_index_;
};

struct ValidationSummary {
  double min_measure;     // delta
  double max_degree;
  double bounded_ratio;   // sup deg(x) / m(x)
  bool connected;
};

/// Re-checks all graph invariants; throws on violation.
ValidationSummary validate(const WeightedGraph& g);

/// Subgraph induced on `vertices` (in the given order), keeping the ambient measure.
WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Index> vertices);

}  // namespace liyau
