#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "liyau/graph.hpp"

namespace liyau {

/// Restriction of the graph to B(center, R) with functions killed outside.
/// Boundary vertices keep their full degree in the generator: the weight to
/// removed neighbors becomes a killing rate.
struct DirichletTruncation {
  WeightedGraph graph;
  Eigen::VectorXd killing;             // per-vertex weight lost to the outside
  std::vector<std::string> boundary;   // vertices with at least one removed neighbor
  bool whole_graph = false;            // R reached the diameter; nothing was removed
};

DirichletTruncation dirichlet_truncation(const WeightedGraph& g, Index center, int radius);

/// Spectral factorization of the generator, symmetrized by the measure:
/// A = M^{-1/2} (W - D - kill) M^{-1/2} = U diag(lambda) U^T, so that
/// P_t f = M^{-1/2} U e^{t lambda} U^T M^{1/2} f.
///
/// A second, positivity-preserving engine (uniformization of the Metzler
/// generator with substeps) is kept alongside for non-negative data: every
/// term it sums is non-negative, so tiny far-field values keep full relative
/// accuracy where the spectral sum would lose them to cancellation.
class Propagator {
 public:
  static Propagator build(const WeightedGraph& g);
  static Propagator build(const DirichletTruncation& truncation);

  Index size() const { return static_cast<Index>(measure_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  const Eigen::VectorXd& measure_roots() const { return measure_roots_; }
  const Eigen::MatrixXd& symmetrized() const { return symmetrized_; }

  /// max |A - U diag(lambda) U^T| / max(1, max |A|).
  double reconstruction_error() const;

  /// P_t f by the spectral sum.
  VertexFunction apply(const VertexFunction& f, double t) const;
  /// L P_t f by the spectral sum.
  VertexFunction apply_derivative(const VertexFunction& f, double t) const;
  /// P_t f by uniformization; intended for f >= 0.
  VertexFunction apply_positive(const VertexFunction& f, double t) const;
  /// Generator applied to f (including killing, when present).
  VertexFunction generator(const VertexFunction& f) const;

 private:
  Propagator() = default;
  void factorize();

  Eigen::VectorXd measure_;
  Eigen::VectorXd measure_roots_;
  Eigen::MatrixXd symmetrized_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  // Sparse generator rows for the uniformized engine.
  std::vector<std::vector<Neighbor>> rows_;
  Eigen::VectorXd diagonal_;  // generator diagonal, <= 0
};

VertexFunction heat_apply(const Propagator& prop, const VertexFunction& f, double t);
VertexFunction heat_derivative(const Propagator& prop, const VertexFunction& f, double t);

struct HeatKernelValue {
  double t;
  Index x;
  Index y;
  double p;
};

/// p(t, x, y) = P_t(delta_y / m(y))(x).
HeatKernelValue heat_kernel(const Propagator& prop, double t, Index x, Index y);

/// Column of heat kernel values p(t, ., y) m(y) = P_t delta_y, positive engine.
VertexFunction heat_from_point(const Propagator& prop, Index y, double t);

}  // namespace liyau
