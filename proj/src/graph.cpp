#include "liyau/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace liyau {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricWeight: return "AsymmetricWeight";
    case ErrorCode::NonpositiveMeasure: return "NonpositiveMeasure";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonpositiveFunction: return "NonpositiveFunction";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

long long pair_key(Index u, Index v) {
  const auto lo = std::min(u, v);
  const auto hi = std::max(u, v);
  return (static_cast<long long>(lo) << 32) | static_cast<long long>(hi);
}

bool is_connected(const WeightedGraph& g) {
  if (g.size() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  std::queue<Index> queue;
  queue.push(0);
  seen[0] = 1;
  Index count = 1;
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(x)) {
      if (!seen[static_cast<std::size_t>(nb.vertex)]) {
        seen[static_cast<std::size_t>(nb.vertex)] = 1;
        ++count;
        queue.push(nb.vertex);
      }
    }
  }
  return count == g.size();
}

}  // namespace

Index WeightedGraph::index_of(std::string_view id) const {
  if (auto x = find(id)) return *x;
  throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(id) + "'");
}

std::optional<Index> WeightedGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::min_measure() const { return measure_.size() ? measure_.minCoeff() : 0.0; }
double WeightedGraph::max_measure() const { return measure_.size() ? measure_.maxCoeff() : 0.0; }

double WeightedGraph::min_weight() const {
  double w = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) w = std::min(w, e.weight);
  return w;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.ids_ != b.ids_ || a.measure_ != b.measure_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& ea = a.edges_[i];
    const auto& eb = b.edges_[i];
    if (ea.u != eb.u || ea.v != eb.v || ea.weight != eb.weight) return false;
  }
  return true;
}

GraphBuilder& GraphBuilder::add_vertex(std::string id, double measure) {
  if (index_.contains(id)) {
    throw Error(ErrorCode::SchemaError, "vertex '" + id + "' listed twice");
  }
  index_.emplace(id, static_cast<Index>(ids_.size()));
  ids_.push_back(std::move(id));
  measure_.push_back(measure);
  return *this;
}

Index GraphBuilder::require(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownVertex, "edge references unknown vertex '" + std::string(id) + "'");
  }
  return it->second;
}

GraphBuilder& GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight) {
  const Index a = require(u);
  const Index b = require(v);
  const auto key = pair_key(a, b);
  if (auto it = pair_index_.find(key); it != pair_index_.end()) {
    const auto& prev = edges_[it->second];
    const bool reversed = prev.u != a;
    if (reversed && prev.weight != weight) {
      throw Error(ErrorCode::AsymmetricWeight, "w(" + std::string(u) + "," + std::string(v) + ") != w(" +
                                                   std::string(v) + "," + std::string(u) + ")");
    }
    throw Error(ErrorCode::DuplicateEdge, "edge {" + std::string(u) + "," + std::string(v) + "} listed twice");
  }
  pair_index_.emplace(key, edges_.size());
  edges_.push_back({a, b, weight});
  return *this;
}

WeightedGraph GraphBuilder::build() const {
  WeightedGraph g;
  g.ids_ = ids_;
  g.index_ = index_;
  const auto n = static_cast<Index>(ids_.size());
  g.measure_.resize(n);
  for (Index x = 0; x < n; ++x) {
    const double m = measure_[static_cast<std::size_t>(x)];
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw Error(ErrorCode::NonpositiveMeasure, "m(" + ids_[static_cast<std::size_t>(x)] + ") must be positive");
    }
    g.measure_[x] = m;
  }

  std::vector<std::size_t> count(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges_) {
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonpositiveWeight, "w(" + ids_[static_cast<std::size_t>(e.u)] + "," +
                                                    ids_[static_cast<std::size_t>(e.v)] + ") must be positive");
    }
    g.edges_.push_back({e.u, e.v, e.weight});
    ++count[static_cast<std::size_t>(e.u)];
    if (e.v != e.u) ++count[static_cast<std::size_t>(e.v)];
  }

  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t x = 0; x < count.size(); ++x) g.offsets_[x + 1] = g.offsets_[x] + count[x];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  g.degree_ = Eigen::VectorXd::Zero(n);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[static_cast<std::size_t>(e.u)]++] = {e.v, e.weight};
    g.degree_[e.u] += e.weight;
    if (e.v != e.u) {
      g.adjacency_[fill[static_cast<std::size_t>(e.v)]++] = {e.u, e.weight};
      g.degree_[e.v] += e.weight;
    }
  }

  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "graph is not connected");
  return g;
}

ValidationSummary validate(const WeightedGraph& g) {
  ValidationSummary s{};
  if (g.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty graph");
  for (Index x = 0; x < g.size(); ++x) {
    if (!(g.measure(x) > 0.0)) throw Error(ErrorCode::NonpositiveMeasure, "m(" + g.id(x) + ") must be positive");
    for (const auto& nb : g.neighbors(x)) {
      bool found = false;
      for (const auto& back : g.neighbors(nb.vertex)) {
        if (back.vertex == x) {
          found = back.weight == nb.weight;
          break;
        }
      }
      if (!found) throw Error(ErrorCode::AsymmetricWeight, "at " + g.id(x) + "~" + g.id(nb.vertex));
    }
  }
  s.connected = is_connected(g);
  if (!s.connected) throw Error(ErrorCode::Disconnected, "graph is not connected");
  s.min_measure = g.min_measure();
  s.max_degree = g.degrees().maxCoeff();
  s.bounded_ratio = (g.degrees().array() / g.measure().array()).maxCoeff();
  return s;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Index> vertices) {
  GraphBuilder b;
  std::vector<char> inside(static_cast<std::size_t>(g.size()), 0);
  for (Index x : vertices) {
    b.add_vertex(g.id(x), g.measure(x));
    inside[static_cast<std::size_t>(x)] = 1;
  }
  for (const auto& e : g.edges()) {
    if (inside[static_cast<std::size_t>(e.u)] && inside[static_cast<std::size_t>(e.v)]) {
      b.add_edge(g.id(e.u), g.id(e.v), e.weight);
    }
  }
  return b.build();
}

}  // namespace liyau
