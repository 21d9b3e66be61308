#include "liyau/operators.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <queue>

namespace liyau {

namespace {

void require_dim(const WeightedGraph& g, const VertexFunction& f) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "function has " + std::to_string(f.size()) + " values, graph has " + std::to_string(g.size()));
  }
}

void require_positive(const VertexFunction& f) {
  for (Index i = 0; i < f.size(); ++i) {
    if (!(f[i] > 0.0)) throw Error(ErrorCode::NonpositiveFunction, "value at index " + std::to_string(i));
  }
}

}  // namespace

VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& f) {
  require_dim(g, f);
  VertexFunction out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) acc += nb.weight * (f[nb.vertex] - f[x]);
    out[x] = acc / g.measure(x);
  }
  return out;
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  require_dim(g, f);
  require_dim(g, h);
  VertexFunction out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) acc += nb.weight * (f[nb.vertex] - f[x]) * (h[nb.vertex] - h[x]);
    out[x] = acc / (2.0 * g.measure(x));
  }
  return out;
}

VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f) { return gamma(g, f, f); }

VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f) {
  return 0.5 * laplacian(g, gamma(g, f)) - gamma(g, f, laplacian(g, f));
}

VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  return 0.5 * (laplacian(g, gamma(g, f, h)) - gamma(g, f, laplacian(g, h)) - gamma(g, h, laplacian(g, f)));
}

VertexFunction gamma2_tilde(const WeightedGraph& g, const VertexFunction& f) {
  require_dim(g, f);
  require_positive(f);
  const VertexFunction grad = gamma(g, f);
  const VertexFunction quotient = grad.array() / f.array();
  return gamma2(g, f) - gamma(g, f, quotient);
}

VertexFunction laplacian_log(const WeightedGraph& g, const VertexFunction& f) {
  require_dim(g, f);
  require_positive(f);
  VertexFunction out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) acc += nb.weight * std::log(f[nb.vertex] / f[x]);
    out[x] = acc / g.measure(x);
  }
  return out;
}

double dirichlet_energy(const WeightedGraph& g, const VertexFunction& f) {
  require_dim(g, f);
  // Ordered pairs (x, y) and (y, x) both appear in the double sum.
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    const double d = f[e.v] - f[e.u];
    acc += e.weight * d * d;
  }
  return acc;
}

double lp_norm(const WeightedGraph& g, const VertexFunction& f, double p) {
  require_dim(g, f);
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  if (std::isinf(p)) return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  double acc = 0.0;
  for (Index x = 0; x < g.size(); ++x) acc += std::pow(std::abs(f[x]), p) * g.measure(x);
  return std::pow(acc, 1.0 / p);
}

double embedding_constant(const WeightedGraph& g, double p, double q) {
  if (!(p >= 1.0) || !(q > p)) throw Error(ErrorCode::InvalidArgument, "need 1 <= p < q");
  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  return std::pow(g.min_measure(), iq - 1.0 / p);
}

VertexFunction quotient_gradient_bound(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  require_dim(g, f);
  require_dim(g, h);
  const double b1 = f.cwiseAbs().maxCoeff();
  const double b2 = h.cwiseAbs().minCoeff();
  if (!(b2 > 0.0)) throw Error(ErrorCode::NonpositiveFunction, "|h| must be bounded away from 0");
  return (2.0 / (b2 * b2)) * gamma(g, f) + (2.0 * b1 * b1 / (b2 * b2 * b2 * b2)) * gamma(g, h);
}

double inner(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  require_dim(g, f);
  require_dim(g, h);
  return (f.array() * h.array() * g.measure().array()).sum();
}

std::vector<int> distances_from(const WeightedGraph& g, Index x) {
  if (x < 0 || x >= g.size()) throw Error(ErrorCode::UnknownVertex, "index " + std::to_string(x));
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::queue<Index> queue;
  dist[static_cast<std::size_t>(x)] = 0;
  queue.push(x);
  while (!queue.empty()) {
    const Index y = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(y)) {
      auto& d = dist[static_cast<std::size_t>(nb.vertex)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(y)] + 1;
        queue.push(nb.vertex);
      }
    }
  }
  return dist;
}

int graph_distance(const WeightedGraph& g, Index x, Index z) {
  if (z < 0 || z >= g.size()) throw Error(ErrorCode::UnknownVertex, "index " + std::to_string(z));
  return distances_from(g, x)[static_cast<std::size_t>(z)];
}

std::vector<Index> ball(const WeightedGraph& g, Index x, double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  const auto dist = distances_from(g, x);
  std::vector<Index> order;
  // Stable bucket by distance keeps breadth-first order with x first.
  int max_d = 0;
  for (int d : dist) max_d = std::max(max_d, d);
  for (int d = 0; d <= max_d && d <= r; ++d) {
    for (Index y = 0; y < g.size(); ++y) {
      if (dist[static_cast<std::size_t>(y)] == d) order.push_back(y);
    }
  }
  return order;
}

double volume(const WeightedGraph& g, std::span<const Index> vertices) {
  double acc = 0.0;
  for (Index x : vertices) acc += g.measure(x);
  return acc;
}

double ball_volume(const WeightedGraph& g, Index x, double r) {
  const auto b = ball(g, x, r);
  return volume(g, b);
}

double green_residual(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h) {
  return inner(g, f, laplacian(g, h)) + gamma(g, f, h).dot(g.measure());
}

}  // namespace liyau
