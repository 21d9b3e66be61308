#include <doctest.h>

#include <cmath>
#include <random>

#include "liyau/curvature.hpp"
#include "liyau/families.hpp"
#include "liyau/operators.hpp"

using namespace liyau;
using doctest::Approx;

namespace {

// Closed form of the CDE' deficit at x on K2 with f(x) = 1, f(y) = a, K = 0,
// from expanding every operator by hand.
double k2_deficit(double a, double n) {
  const double tilde = (a * a * a * a - 2 * a * a + 1) / (4 * a);
  const double l = std::log(a);
  return tilde - l * l / n;
}

}  // namespace

TEST_CASE("CD on K2") {
  const auto k2 = complete_graph(2);
  auto r = cd_holds_at(k2, 0, 2, 1);
  CHECK(r.holds);
  CHECK(std::abs(r.min_eigenvalue) < 1e-10);
  CHECK_FALSE(cd_holds_at(k2, 0, 2, 1.1).holds);
  CHECK(cd_holds_at(k2, 0, kInfiniteDimension, -100).holds);
  for (double n : {1.0, 2.0, 10.0, kInfiniteDimension}) {
    const double expect = std::isinf(n) ? 2.0 : 2.0 * (1 - 1 / n);
    CHECK(cd_curvature_at(k2, 0, n) == Approx(expect).epsilon(1e-10));
  }
  // n_min solves 2(1 - 1/n) = K.
  CHECK(*cd_dimension_at(k2, 0, 1.0) == Approx(2.0));
  CHECK(std::isinf(*cd_dimension_at(k2, 0, 2.0)));
  CHECK_FALSE(cd_dimension_at(k2, 0, 2.5).has_value());
}

TEST_CASE("CD curvature is an infimum, checked by sampling") {
  std::mt19937_64 rng(11);
  RandomGraphOptions opt;
  opt.max_vertices = 12;
  std::normal_distribution<double> N(0, 1);
  for (int k = 0; k < 20; ++k) {
    const auto g = random_connected_graph(rng, opt);
    for (double n : {2.0, 5.0, kInfiniteDimension}) {
      const double K = cd_curvature_at(g, 0, n);
      REQUIRE(std::isfinite(K));
      CHECK(cd_holds_at(g, 0, n, K - 1e-8).holds);
      // Random f never beats the computed K.
      for (int s = 0; s < 50; ++s) {
        VertexFunction f(g.size());
        for (Index x = 0; x < g.size(); ++x) f[x] = N(rng);
        const double lap = laplacian(g, f)[0];
        const double val = gamma2(g, f)[0] - inverse_dimension(n) * lap * lap - K * gamma(g, f)[0];
        CHECK(val >= -1e-9 * (1 + gamma2(g, f).cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("CDE' deficit basics") {
  const auto k2 = complete_graph(2);
  VertexFunction f(2);
  f << 1, 2;
  CHECK(cde_deficit(k2, 0, f, 2, 0) == Approx(9.0 / 8.0 - std::log(2.0) * std::log(2.0) / 2).epsilon(1e-13));
  CHECK(cde_deficit(k2, 0, f, 2, 0) == Approx(k2_deficit(2, 2)).epsilon(1e-13));
  CHECK(cde_deficit(k2, 0, VertexFunction::Constant(2, 3.0), 2, 1) == 0.0);

  const auto box = lattice_box(2, 4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.2, 3);
  VertexFunction h(box.size());
  for (Index x = 0; x < box.size(); ++x) h[x] = U(rng);
  const double d = cde_deficit(box, 5, h, 3, 0.5);
  CHECK(cde_deficit(box, 5, 2.5 * h, 3, 0.5) == Approx(6.25 * d).epsilon(1e-12));
  h[0] = -1;  // outside B2 of vertex 15 is fine
  CHECK_NOTHROW(cde_deficit(box, 15, h, 3, 0.5));
  CHECK_THROWS_AS(cde_deficit(box, 5, h, 3, 0.5), Error);
}

TEST_CASE("deficit gradient matches finite differences") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0, 0.7);
  RandomGraphOptions opt;
  opt.max_vertices = 10;
  for (int k = 0; k < 10; ++k) {
    const auto g = random_connected_graph(rng, opt);
    const auto patch = LocalPatch::around(g, 0);
    Eigen::VectorXd v(patch.size());
    for (Index i = 0; i < v.size(); ++i) v[i] = N(rng);
    const auto e = cde_evaluate(patch, v, 3, 0.3);
    for (Index i = 0; i < v.size(); ++i) {
      const double h = 1e-6;
      Eigen::VectorXd a = v, b = v;
      a[i] += h;
      b[i] -= h;
      const double fd = (cde_evaluate(patch, a, 3, 0.3).deficit - cde_evaluate(patch, b, 3, 0.3).deficit) / (2 * h);
      CHECK(e.gradient[i] == Approx(fd).epsilon(1e-5).scale(1 + std::abs(e.deficit)));
      const double fdg =
          (cde_evaluate(patch, a, 3, 0.3).gamma_center - cde_evaluate(patch, b, 3, 0.3).gamma_center) / (2 * h);
      CHECK(e.gamma_gradient[i] == Approx(fdg).epsilon(1e-5).scale(1 + e.gamma_center));
    }
    // Direct evaluation on exp(v) agrees.
    VertexFunction f = VertexFunction::Ones(g.size());
    for (Index i = 0; i < patch.size(); ++i) f[patch.global[i]] = std::exp(v[i]);
    CHECK(e.deficit == Approx(cde_deficit(g, 0, f, 3, 0.3)).epsilon(1e-9).scale(1 + gamma(g, f)[0]));
  }
}

TEST_CASE("counterexample search on K2") {
  const auto k2 = complete_graph(2);
  auto above = cde_search_counterexample(k2, 0, 2, 2.5);
  REQUIRE(above.witness.has_value());
  CHECK(recheck_witness(k2, *above.witness) < -1e-7);

  // CDE'(2, 0) fails on K2: the deficit closed form is negative at a = 0.1,
  // and the search finds a violation of the same size.
  CHECK(k2_deficit(0.1, 2) == Approx(-0.2006990552).epsilon(1e-9));
  auto at_zero = cde_search_counterexample(k2, 0, 2, 0);
  REQUIRE(at_zero.status == SearchStatus::Found);
  CHECK(recheck_witness(k2, *at_zero.witness) < -1e-7);
  const auto& w = *at_zero.witness;
  const double a = w.values[1] / w.values[0];
  const double g = 0.5 * (a - 1) * (a - 1);
  CHECK(w.deficit == Approx(k2_deficit(a, 2) / g).epsilon(1e-8));

  CHECK(cde_curvature_upper(k2, 0, kInfiniteDimension) <= 2.0 + 1e-9);
}

TEST_CASE("no CDE' witness near constants where the Hessian is positive") {
  // K2 with n = infinity, K = 0: deficit (a^4 - 2a^2 + 1)/(4a) >= 0.
  const auto k2 = complete_graph(2);
  for (double v = -3; v <= 3; v += 0.05) CHECK(k2_deficit(std::exp(v), kInfiniteDimension) >= 0);
  CHECK(cde_search_counterexample(k2, 0, kInfiniteDimension, 0).status != SearchStatus::Found);
}

TEST_CASE("curvature upper bound sits below the CD value") {
  std::mt19937_64 rng(21);
  RandomGraphOptions opt;
  opt.max_vertices = 8;
  SearchOptions few;
  few.starts = 8;
  SearchOptions more;
  more.starts = 32;
  for (int k = 0; k < 5; ++k) {
    const auto g = random_connected_graph(rng, opt);
    const double up = cde_curvature_upper(g, 0, 4, few);
    CHECK(up <= cd_curvature_at(g, 0, 4) + 1e-7);
    CHECK(cde_curvature_upper(g, 0, 4, more) <= up + 1e-12);
  }
}

TEST_CASE("sweep symmetry and determinism") {
  SearchOptions opt;
  opt.starts = 16;
  const auto k5 = complete_graph(5);
  const auto a = curvature_sweep(k5, 3, 0, {0, 1, 2, 3, 4}, opt);
  for (const auto& r : a.records) {
    CHECK(r.cd_K_star == Approx(a.records[0].cd_K_star).epsilon(1e-12));
    CHECK(r.verdict == a.records[0].verdict);
  }
  const auto b = curvature_sweep(k5, 3, 0, {0, 1, 2, 3, 4}, opt);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].cde_best_K_upper == b.records[i].cde_best_K_upper);
  }
}

TEST_CASE("dimension certificate") {
  const auto k5 = complete_graph(5);
  const auto c = certify_dimension(k5, 0, {0});
  REQUIRE(c.certified);
  CHECK(c.n >= c.cd_lower_bound);
  CHECK(certify_cde(k5, c.n, 0, {0}));
  // Leaves of a star refute every (n, K).
  const auto star = star_graph(6);
  CHECK_FALSE(certify_dimension(star, 0, {1}).certified);
}
