#include "liyau/heat.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "liyau/operators.hpp"

namespace liyau {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "time must be finite and >= 0");
}

void require_size(const Propagator& p, const VertexFunction& f) {
  if (f.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "function size does not match propagator");
}

}  // namespace

DirichletTruncation dirichlet_truncation(const WeightedGraph& g, Index center, int radius) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "truncation radius must be >= 1");
  const auto inside = ball(g, center, radius);
  DirichletTruncation tr{induced_subgraph(g, inside), Eigen::VectorXd::Zero(static_cast<Index>(inside.size())), {},
                         static_cast<Index>(inside.size()) == g.size()};
  std::vector<char> member(static_cast<std::size_t>(g.size()), 0);
  for (Index x : inside) member[static_cast<std::size_t>(x)] = 1;
  for (std::size_t i = 0; i < inside.size(); ++i) {
    double lost = 0.0;
    for (const auto& nb : g.neighbors(inside[i])) {
      if (!member[static_cast<std::size_t>(nb.vertex)]) lost += nb.weight;
    }
    tr.killing[static_cast<Index>(i)] = lost;
    if (lost > 0.0) tr.boundary.push_back(g.id(inside[i]));
  }
  return tr;
}

Propagator Propagator::build(const WeightedGraph& g) {
  Propagator p;
  const Index n = g.size();
  p.measure_ = g.measure();
  p.rows_.resize(static_cast<std::size_t>(n));
  p.diagonal_ = Eigen::VectorXd::Zero(n);
  for (Index x = 0; x < n; ++x) {
    for (const auto& nb : g.neighbors(x)) {
      if (nb.vertex == x) continue;
      p.rows_[static_cast<std::size_t>(x)].push_back({nb.vertex, nb.weight / g.measure(x)});
      p.diagonal_[x] -= nb.weight / g.measure(x);
    }
  }
  p.factorize();
  return p;
}

Propagator Propagator::build(const DirichletTruncation& truncation) {
  Propagator p = build(truncation.graph);
  for (Index x = 0; x < p.size(); ++x) p.diagonal_[x] -= truncation.killing[x] / p.measure_[x];
  p.factorize();
  return p;
}

void Propagator::factorize() {
  const Index n = size();
  measure_roots_ = measure_.cwiseSqrt();
  symmetrized_ = Eigen::MatrixXd::Zero(n, n);
  for (Index x = 0; x < n; ++x) {
    symmetrized_(x, x) = diagonal_[x];
    // Row x of the generator is w_xy / m_x; conjugation gives w_xy / sqrt(m_x m_y).
    for (const auto& nb : rows_[static_cast<std::size_t>(x)]) {
      symmetrized_(x, nb.vertex) += nb.weight * measure_roots_[x] / measure_roots_[nb.vertex];
    }
  }
  symmetrized_ = 0.5 * (symmetrized_ + symmetrized_.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrized_);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InvalidArgument,
                "eigensolver failed; generator norm " + std::to_string(symmetrized_.norm()));
  }
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

double Propagator::reconstruction_error() const {
  const Eigen::MatrixXd rec = eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
  return (rec - symmetrized_).cwiseAbs().maxCoeff() / std::max(1.0, symmetrized_.cwiseAbs().maxCoeff());
}

VertexFunction Propagator::apply(const VertexFunction& f, double t) const {
  require_time(t);
  require_size(*this, f);
  const Eigen::VectorXd coeff = eigenvectors_.transpose() * measure_roots_.cwiseProduct(f);
  const Eigen::VectorXd decayed = coeff.cwiseProduct((t * eigenvalues_).array().exp().matrix());
  return (eigenvectors_ * decayed).cwiseQuotient(measure_roots_);
}

VertexFunction Propagator::apply_derivative(const VertexFunction& f, double t) const {
  require_time(t);
  require_size(*this, f);
  const Eigen::VectorXd coeff = eigenvectors_.transpose() * measure_roots_.cwiseProduct(f);
  const Eigen::VectorXd decayed =
      coeff.cwiseProduct((eigenvalues_.array() * (t * eigenvalues_).array().exp()).matrix());
  return (eigenvectors_ * decayed).cwiseQuotient(measure_roots_);
}

VertexFunction Propagator::generator(const VertexFunction& f) const {
  require_size(*this, f);
  VertexFunction out = diagonal_.cwiseProduct(f);
  for (Index x = 0; x < size(); ++x) {
    for (const auto& nb : rows_[static_cast<std::size_t>(x)]) out[x] += nb.weight * f[nb.vertex];
  }
  return out;
}

VertexFunction Propagator::apply_positive(const VertexFunction& f, double t) const {
  require_time(t);
  require_size(*this, f);
  if (t == 0.0) return f;
  // e^{tL} = e^{-ct} e^{t(L + c)} with L + c entrywise non-negative.
  const double c = std::max(-diagonal_.minCoeff(), 1e-300);
  constexpr double kSubstepRate = 2.0;
  const auto substeps = static_cast<long>(std::ceil(c * t / kSubstepRate));
  const double tau = t / static_cast<double>(std::max(1L, substeps));
  const double damping = std::exp(-c * tau);
  VertexFunction state = f;
  for (long step = 0; step < std::max(1L, substeps); ++step) {
    VertexFunction term = state;
    VertexFunction sum = state;
    const Index max_terms = 200 + size();
    for (Index k = 1; k < max_terms; ++k) {
      VertexFunction next = (diagonal_.array() + c).matrix().cwiseProduct(term);
      for (Index x = 0; x < size(); ++x) {
        for (const auto& nb : rows_[static_cast<std::size_t>(x)]) next[x] += nb.weight * term[nb.vertex];
      }
      term = next * (tau / static_cast<double>(k));
      sum += term;
      // Componentwise relative stop; entries not reached yet keep the series going.
      bool done = true;
      for (Index x = 0; x < size() && done; ++x) {
        if (sum[x] == 0.0 ? k < size() : std::abs(term[x]) > 1e-17 * std::abs(sum[x])) done = false;
      }
      if (done) break;
    }
    state = damping * sum;
  }
  return state;
}

VertexFunction heat_apply(const Propagator& prop, const VertexFunction& f, double t) { return prop.apply(f, t); }

VertexFunction heat_derivative(const Propagator& prop, const VertexFunction& f, double t) {
  return prop.apply_derivative(f, t);
}

HeatKernelValue heat_kernel(const Propagator& prop, double t, Index x, Index y) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat kernel needs t > 0");
  if (x < 0 || y < 0 || x >= prop.size() || y >= prop.size()) throw Error(ErrorCode::UnknownVertex, "kernel index");
  const auto& U = prop.eigenvectors();
  const auto& lam = prop.eigenvalues();
  const auto& r = prop.measure_roots();
  double acc = 0.0;
  for (Index k = 0; k < lam.size(); ++k) acc += std::exp(t * lam[k]) * U(x, k) * U(y, k);
  return {t, x, y, acc / (r[x] * r[y])};
}

VertexFunction heat_from_point(const Propagator& prop, Index y, double t) {
  return prop.apply_positive(VertexFunction::Unit(prop.size(), y), t);
}

}  // namespace liyau
