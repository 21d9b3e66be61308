#pragma once

#include <vector>

#include "liyau/graph.hpp"

namespace liyau {

/// (Lf)(x) = 1/m(x) * sum_y w_xy (f(y) - f(x)).
VertexFunction laplacian(const WeightedGraph& g, const VertexFunction& f);

/// Carre du champ: G(f,h)(x) = 1/(2 m(x)) * sum_y w_xy (f(y)-f(x)) (h(y)-h(x)).
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);
VertexFunction gamma(const WeightedGraph& g, const VertexFunction& f);

/// Iterated form, evaluated as L G(f) / 2 - G(f, L f).
VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f);
/// Bilinear iterated form (L G(f,h) - G(f, L h) - G(h, L f)) / 2.
VertexFunction gamma2(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);

/// Modified iterated form G2(f) - G(f, G(f)/f). Requires f > 0 everywhere.
VertexFunction gamma2_tilde(const WeightedGraph& g, const VertexFunction& f);

/// L log f. Requires f > 0 everywhere.
VertexFunction laplacian_log(const WeightedGraph& g, const VertexFunction& f);

/// Q(f) = 1/2 * sum_{x,y} w_xy (f(y) - f(x))^2, each unordered edge counted from both ends.
double dirichlet_energy(const WeightedGraph& g, const VertexFunction& f);

/// Measure-weighted l^p norm; p = infinity gives max |f|. Throws for p < 1.
double lp_norm(const WeightedGraph& g, const VertexFunction& f, double p);

/// delta^(1/q - 1/p) with delta = min m: bounds |f|_q by C |f|_p for 1 <= p < q <= infinity.
double embedding_constant(const WeightedGraph& g, double p, double q);

/// (2/B2^2) G(f) + (2 B1^2/B2^4) G(h), an upper bound for G(f/h) when |f| <= B1 and |h| >= B2 > 0.
/// B1 and B2 are taken from the data.
VertexFunction quotient_gradient_bound(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);

/// <f, h> = sum_x f(x) h(x) m(x).
double inner(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);

/// Combinatorial (hop-count) distances from x; weights are ignored.
std::vector<int> distances_from(const WeightedGraph& g, Index x);
int graph_distance(const WeightedGraph& g, Index x, Index z);

/// Vertices with d(x, y) <= r, in breadth-first order (x first). Real radius allowed.
std::vector<Index> ball(const WeightedGraph& g, Index x, double r);
double volume(const WeightedGraph& g, std::span<const Index> vertices);
double ball_volume(const WeightedGraph& g, Index x, double r);

/// sum_x f L h m + sum_x G(f,h) m, which vanishes by summation by parts.
double green_residual(const WeightedGraph& g, const VertexFunction& f, const VertexFunction& h);

}  // namespace liyau
