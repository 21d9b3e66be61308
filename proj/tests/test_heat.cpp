#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "liyau/families.hpp"
#include "liyau/heat.hpp"
#include "liyau/operators.hpp"

using namespace liyau;
using doctest::Approx;

namespace {

// Reference semigroup: matrix exponential of the dense generator.
Eigen::MatrixXd expm_generator(const WeightedGraph& g, double t) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.size(), g.size());
  for (Index x = 0; x < g.size(); ++x) {
    for (const auto& nb : g.neighbors(x)) {
      if (nb.vertex == x) continue;
      L(x, nb.vertex) += nb.weight / g.measure(x);
      L(x, x) -= nb.weight / g.measure(x);
    }
  }
  return (t * L).exp();
}

}  // namespace

TEST_CASE("spectrum of K2 and P3") {
  auto e = Propagator::build(complete_graph(2)).eigenvalues();
  std::sort(e.data(), e.data() + e.size());
  CHECK(e[0] == Approx(-2));
  CHECK(std::abs(e[1]) < 1e-14);
  auto p = Propagator::build(path_graph(3)).eigenvalues();
  std::sort(p.data(), p.data() + p.size());
  CHECK(p[0] == Approx(-3));
  CHECK(p[1] == Approx(-1));
  CHECK(std::abs(p[2]) < 1e-14);
}

TEST_CASE("K2 closed forms") {
  const auto k2 = complete_graph(2);
  const auto prop = Propagator::build(k2);
  VertexFunction d(2);
  d << 0, 1;
  CHECK(heat_apply(prop, d, 0.5)[0] == Approx(0.3160602794).epsilon(1e-9));
  CHECK(heat_derivative(prop, d, 0.5)[0] == Approx(std::exp(-1.0)).epsilon(1e-12));
  for (double t : {0.1, 0.5, 1.0, 5.0}) {
    CHECK(heat_kernel(prop, t, 0, 1).p == Approx(0.5 * (1 - std::exp(-2 * t))).epsilon(1e-12));
    CHECK(heat_kernel(prop, t, 0, 0).p == Approx(0.5 * (1 + std::exp(-2 * t))).epsilon(1e-12));
    CHECK(heat_from_point(prop, 1, t)[0] == Approx(0.5 * (1 - std::exp(-2 * t))).epsilon(1e-12));
  }
  CHECK(heat_derivative(prop, VertexFunction::Constant(2, 3.0), 1.0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("both engines agree with the matrix exponential") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0, 1);
  RandomGraphOptions opt;
  opt.max_vertices = 25;
  for (int k = 0; k < 20; ++k) {
    const auto g = random_connected_graph(rng, opt);
    const auto prop = Propagator::build(g);
    CHECK(prop.reconstruction_error() < 1e-12);
    VertexFunction f(g.size());
    for (Index x = 0; x < g.size(); ++x) f[x] = U(rng);
    for (double t : {0.01, 0.3, 2.0}) {
      const VertexFunction ref = expm_generator(g, t) * f;
      CHECK((prop.apply(f, t) - ref).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((prop.apply_positive(f, t) - ref).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((prop.apply(f, t) - ref).cwiseAbs().maxCoeff() < 1e-10);
      // Mass and self-adjointness of the kernel.
      double mass = 0;
      for (Index y = 0; y < g.size(); ++y) mass += heat_kernel(prop, t, 0, y).p * g.measure(y);
      CHECK(mass == Approx(1).epsilon(1e-10));
      const Index y = g.size() - 1;
      // With p = P_t(delta_y / m(y)), self-adjointness in l2(m) makes p symmetric.
      CHECK(std::abs(heat_kernel(prop, t, 0, y).p - heat_kernel(prop, t, y, 0).p) < 1e-10);
      CHECK(std::abs(heat_kernel(prop, t, 0, y).p * g.measure(y) - expm_generator(g, t)(0, y)) < 1e-10);
    }
  }
}

TEST_CASE("Dirichlet truncation") {
  const auto box = lattice_box(2, 5);
  const Index c = box.index_of("2,2");
  const auto whole = dirichlet_truncation(box, c, 10);
  CHECK(whole.whole_graph);
  CHECK(whole.killing.cwiseAbs().maxCoeff() == 0.0);

  const auto r1 = dirichlet_truncation(box, c, 1);
  const auto r2 = dirichlet_truncation(box, c, 2);
  CHECK_FALSE(r1.boundary.empty());
  const auto p1 = Propagator::build(r1);
  const auto p2 = Propagator::build(r2);
  const Index y1 = r1.graph.index_of("2,2");
  const Index y2 = r2.graph.index_of("2,2");
  for (double t : {0.1, 1.0, 3.0}) {
    const VertexFunction a = heat_from_point(p1, y1, t);
    const VertexFunction b = heat_from_point(p2, y2, t);
    CHECK(a.sum() < 1.0);
    for (Index x = 0; x < r1.graph.size(); ++x) {
      CHECK(a[x] <= b[r2.graph.index_of(r1.graph.id(x))] + 1e-14);
    }
  }
}
