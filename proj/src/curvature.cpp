#include "liyau/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "liyau/operators.hpp"

namespace liyau {

double inverse_dimension(double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "dimension n must be positive");
  return std::isinf(n) ? 0.0 : 1.0 / n;
}

LocalPatch LocalPatch::around(const WeightedGraph& g, Index x) {
  LocalPatch p;
  p.center = x;
  p.global = ball(g, x, 2.0);
  p.graph = induced_subgraph(g, p.global);
  const auto dist = distances_from(g, x);
  p.inner_count = static_cast<Index>(
      std::count_if(p.global.begin(), p.global.end(), [&](Index y) { return dist[static_cast<std::size_t>(y)] <= 1; }));
  return p;
}

CurvatureForms curvature_forms(const LocalPatch& patch) {
  const Index n = patch.size();
  const auto& pg = patch.graph;
  CurvatureForms forms{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
  std::vector<VertexFunction> basis(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)] = VertexFunction::Unit(n, i);
  for (Index i = 0; i < n; ++i) {
    const auto& ei = basis[static_cast<std::size_t>(i)];
    forms.laplacian[i] = laplacian(pg, ei)[0];
    for (Index j = i; j < n; ++j) {
      const auto& ej = basis[static_cast<std::size_t>(j)];
      const double g2 = gamma2(pg, ei, ej)[0];
      const double g1 = gamma(pg, ei, ej)[0];
      forms.gamma2(i, j) = forms.gamma2(j, i) = g2;
      forms.gamma(i, j) = forms.gamma(j, i) = g1;
    }
  }
  return forms;
}

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

Eigen::MatrixXd numerator_form(const CurvatureForms& forms, double invn) {
  return forms.gamma2 - invn * forms.laplacian * forms.laplacian.transpose();
}

double scale_of(const Eigen::MatrixXd& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

CdDecision cd_holds_at(const WeightedGraph& g, Index x, double n, double K, double tol) {
  const double invn = inverse_dimension(n);
  const auto patch = LocalPatch::around(g, x);
  const auto forms = curvature_forms(patch);
  const double lam = min_eigenvalue(numerator_form(forms, invn) - K * forms.gamma);
  return {lam >= -tol, lam};
}

CdCurvature cd_curvature_solve(const LocalPatch& patch, double n) {
  const double invn = inverse_dimension(n);
  const auto forms = curvature_forms(patch);
  const Eigen::MatrixXd A = numerator_form(forms, invn);
  const Eigen::MatrixXd& B = forms.gamma;
  const double tau_b = 1e-10 * scale_of(B);
  const double tau_a = 1e-9 * scale_of(A);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  // Split coordinates into range(B) and ker(B).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(B);
  std::vector<Index> range_cols, kernel_cols;
  for (Index i = 0; i < B.rows(); ++i) (eb.eigenvalues()[i] > tau_b ? range_cols : kernel_cols).push_back(i);
  const Index r = static_cast<Index>(range_cols.size());
  const Index z = static_cast<Index>(kernel_cols.size());
  Eigen::MatrixXd R(B.rows(), r), Z(B.rows(), z);
  Eigen::VectorXd d(r);
  for (Index k = 0; k < r; ++k) {
    R.col(k) = eb.eigenvectors().col(range_cols[static_cast<std::size_t>(k)]);
    d[k] = eb.eigenvalues()[range_cols[static_cast<std::size_t>(k)]];
  }
  for (Index k = 0; k < z; ++k) Z.col(k) = eb.eigenvectors().col(kernel_cols[static_cast<std::size_t>(k)]);

  if (r == 0) return {kNegInf, {}};

  // The numerator must be non-negative on ker(B), and its null directions there
  // must not couple to range(B); otherwise the ratio is unbounded below.
  const Eigen::MatrixXd C = Z.transpose() * A * Z;
  const Eigen::MatrixXd X = R.transpose() * A * Z;
  Eigen::MatrixXd Cpinv = Eigen::MatrixXd::Zero(z, z);
  if (z > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(C);
    if (ec.eigenvalues()[0] < -tau_a) return {kNegInf, {}};
    for (Index k = 0; k < z; ++k) {
      const double c = ec.eigenvalues()[k];
      const auto w = ec.eigenvectors().col(k);
      if (c > tau_a) {
        Cpinv += w * w.transpose() / c;
      } else if ((X * w).cwiseAbs().maxCoeff() > tau_a) {
        return {kNegInf, {}};
      }
    }
  }

  const Eigen::MatrixXd S = R.transpose() * A * R - X * Cpinv * X.transpose();
  const Eigen::VectorXd dinv = d.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd T = dinv.asDiagonal() * S * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> et(0.5 * (T + T.transpose()));
  const Eigen::VectorXd b = dinv.asDiagonal() * et.eigenvectors().col(0);
  const Eigen::VectorXd a = -Cpinv * X.transpose() * b;
  Eigen::VectorXd f = R * b + Z * a;
  return {et.eigenvalues()[0], f};
}

double cd_curvature_at(const WeightedGraph& g, Index x, double n) {
  return cd_curvature_solve(LocalPatch::around(g, x), n).K;
}

std::optional<double> cd_dimension_at(const WeightedGraph& g, Index x, double K) {
  const auto patch = LocalPatch::around(g, x);
  const auto forms = curvature_forms(patch);
  const Eigen::MatrixXd A0 = forms.gamma2 - K * forms.gamma;
  const double tau = 1e-9 * scale_of(A0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A0);
  if (es.eigenvalues()[0] < -tau) return std::nullopt;
  // CD(n, K) <=> A0 - c c^T / n is PSD <=> n >= c^T A0^+ c, with c in range(A0).
  const Eigen::VectorXd proj = es.eigenvectors().transpose() * forms.laplacian;
  double q = 0.0;
  for (Index k = 0; k < proj.size(); ++k) {
    const double lam = es.eigenvalues()[k];
    if (lam > tau) {
      q += proj[k] * proj[k] / lam;
    } else if (std::abs(proj[k]) > 1e-9 * std::max(1.0, forms.laplacian.cwiseAbs().maxCoeff())) {
      return kInfiniteDimension;
    }
  }
  return q;
}

namespace {

using Precise = boost::multiprecision::cpp_bin_float_50;

// Straight from the operator definitions, on B2(x), in 50 significant digits.
// The optimizer works in double with a rearranged formula; this is the
// independent referee for anything it reports.
struct PreciseParts {
  Precise deficit;
  Precise gamma;
};

PreciseParts precise_parts(const LocalPatch& patch, const VertexFunction& f, double n, double K) {
  const auto& pg = patch.graph;
  const Index N = patch.size();
  const Index n1 = patch.inner_count;
  std::vector<Precise> F(static_cast<std::size_t>(N));
  for (Index i = 0; i < N; ++i) F[static_cast<std::size_t>(i)] = f[i];
  auto at = [&](Index i) -> const Precise& { return F[static_cast<std::size_t>(i)]; };

  // Gamma(f) and Lf on B1, then the quotient Lf + Gamma(f)/f.
  std::vector<Precise> G(static_cast<std::size_t>(n1)), L(static_cast<std::size_t>(n1));
  for (Index y = 0; y < n1; ++y) {
    Precise g = 0, l = 0;
    for (const auto& nb : pg.neighbors(y)) {
      const Precise d = at(nb.vertex) - at(y);
      g += nb.weight * d * d;
      l += nb.weight * d;
    }
    G[static_cast<std::size_t>(y)] = g / (2 * pg.measure(y));
    L[static_cast<std::size_t>(y)] = l / pg.measure(y);
  }
  Precise half_lap_gamma = 0, gamma_f_lap = 0, gamma_f_quot = 0, lap_log = 0;
  for (const auto& nb : pg.neighbors(0)) {
    const auto y = static_cast<std::size_t>(nb.vertex);
    const Precise d = at(nb.vertex) - at(0);
    half_lap_gamma += nb.weight * (G[y] - G[0]);
    gamma_f_lap += nb.weight * d * (L[y] - L[0]);
    gamma_f_quot += nb.weight * d * (G[y] / F[y] - G[0] / F[0]);
    lap_log += nb.weight * log(at(nb.vertex) / at(0));
  }
  const double m0 = pg.measure(0);
  const Precise tilde = (half_lap_gamma - gamma_f_lap - gamma_f_quot) / (2 * m0);
  lap_log /= m0;
  return {tilde - Precise(inverse_dimension(n)) * F[0] * F[0] * lap_log * lap_log - K * G[0], G[0]};
}

VertexFunction restrict_to(const LocalPatch& patch, const VertexFunction& f) {
  VertexFunction out(patch.size());
  for (Index i = 0; i < patch.size(); ++i) out[i] = f[patch.global[static_cast<std::size_t>(i)]];
  return out;
}

}  // namespace

double cde_deficit(const WeightedGraph& g, Index x, const VertexFunction& f, double n, double K) {
  inverse_dimension(n);
  if (f.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "witness size");
  const auto patch = LocalPatch::around(g, x);
  const VertexFunction local = restrict_to(patch, f);
  for (Index i = 0; i < patch.size(); ++i) {
    if (!(local[i] > 0.0) || !std::isfinite(local[i])) {
      throw Error(ErrorCode::NonpositiveFunction,
                  "f(" + patch.graph.id(i) + ") is not a positive number inside B2(" + g.id(x) + ")");
    }
  }
  return static_cast<double>(precise_parts(patch, local, n, K).deficit);
}

// With r = f / f(x), the pieces of G~2 that cancel against each other when
// written through Lf and Gamma(f)/f are collected per edge:
//   2 m_x G~2(f)(x) / f(x)^2 = sum_{y~x} w_xy [ (1/2m_y) sum_{z~y} w_yz h(r_y, r_z)
//                                               + (1/2m_x) sum_{y'~x} w_xy' k(r_y, r_y') ]
//   h(a, b) = (b - a)(b/a - 2a + 1),  k(a, c) = (c - 1)(ac + a - 2c).
CdeEvaluation cde_evaluate(const LocalPatch& patch, const Eigen::VectorXd& v, double n, double K) {
  const double invn = inverse_dimension(n);
  const auto& pg = patch.graph;
  const Index N = patch.size();
  const double m0 = pg.measure(0);
  Eigen::VectorXd r(N);
  for (Index i = 0; i < N; ++i) r[i] = std::exp(v[i] - v[0]);
  const double scale = std::exp(2.0 * v[0]);

  double inner = 0.0, outer = 0.0, gam = 0.0, ell = 0.0, wsum = 0.0;
  Eigen::VectorXd d_inner = Eigen::VectorXd::Zero(N);  // d/dr
  Eigen::VectorXd d_outer = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd d_gam = Eigen::VectorXd::Zero(N);
  Eigen::VectorXd d_ell = Eigen::VectorXd::Zero(N);    // d/dv
  for (const auto& nb : pg.neighbors(0)) {
    const Index y = nb.vertex;
    const double a = r[y];
    const double c = nb.weight / (2.0 * m0);
    const double my2 = 2.0 * pg.measure(y);
    for (const auto& nz : pg.neighbors(y)) {
      const double b = r[nz.vertex];
      const double w = c * nz.weight / my2;
      const double p = b / a - 2.0 * a + 1.0;
      inner += w * (b - a) * p;
      d_inner[nz.vertex] += w * (p + (b - a) / a);
      d_inner[y] += w * (-p + (b - a) * (-b / (a * a) - 2.0));
    }
    const double e = std::expm1(v[y] - v[0]);
    gam += c * e * e;
    d_gam[y] += 2.0 * c * e;
    ell += nb.weight * (v[y] - v[0]) / m0;
    d_ell[y] += nb.weight / m0;
    wsum += c;
  }
  // The y' sum factors: sum_y sum_y' c_y c_y' k(r_y, r_y').
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;  // sum c (c'-1)(c'+1), sum c r, ...
  for (const auto& nb : pg.neighbors(0)) {
    const double c = nb.weight / (2.0 * m0);
    const double e = std::expm1(v[nb.vertex] - v[0]);  // r - 1
    s1 += c * r[nb.vertex];
    s2 += c * e * (r[nb.vertex] + 1.0);
    s3 += c * e * r[nb.vertex];
  }
  // k(a, c) = (c-1)(c+1) a - 2 (c-1) c, so the double sum is s1 * s2 - 2 wsum * s3.
  outer = s1 * s2 - 2.0 * wsum * s3;
  for (const auto& nb : pg.neighbors(0)) {
    const Index y = nb.vertex;
    const double c = nb.weight / (2.0 * m0);
    const double a = r[y];
    d_outer[y] += c * s2 + s1 * c * 2.0 * a - 2.0 * wsum * c * (2.0 * a - 1.0);
  }

  CdeEvaluation out;
  const double core = inner + outer - invn * ell * ell - K * gam;
  out.deficit = scale * core;
  out.gamma_center = scale * gam;
  Eigen::VectorXd g = (d_inner + d_outer - K * d_gam).cwiseProduct(r) - 2.0 * invn * ell * d_ell;
  Eigen::VectorXd gg = d_gam.cwiseProduct(r);
  // r(x) = 1 carries no dependence; the v(x) derivative comes from 2-homogeneity.
  g[0] = 0.0;
  gg[0] = 0.0;
  g[0] = 2.0 * core - g.sum();
  gg[0] = 2.0 * gam - gg.sum();
  out.gradient = scale * g;
  out.gamma_gradient = scale * gg;
  return out;
}

namespace {

// Scale-free objective (G~2 - f^2 (L log f)^2 / n) / G(f)(x) over v with v(x) = 0.
struct RatioObjective {
  const LocalPatch& patch;
  double n;

  Eigen::VectorXd embed(const Eigen::VectorXd& w) const {
    Eigen::VectorXd v(patch.size());
    v[0] = 0.0;
    v.tail(patch.size() - 1) = w;
    return v;
  }

  double value(const Eigen::VectorXd& w, Eigen::VectorXd* grad) const {
    const auto ev = cde_evaluate(patch, embed(w), n, 0.0);
    const double gx = ev.gamma_center;
    if (!(gx > 0.0) || !std::isfinite(ev.deficit)) {
      return std::numeric_limits<double>::infinity();
    }
    const double r = ev.deficit / gx;
    if (grad) {
      const Eigen::VectorXd full = (ev.gradient - r * ev.gamma_gradient) / gx;
      *grad = full.tail(patch.size() - 1);
    }
    return r;
  }
};

struct LocalResult {
  double value;
  Eigen::VectorXd w;
  bool diverged;
};

// L-BFGS with Armijo backtracking.
LocalResult minimize(const RatioObjective& obj, Eigen::VectorXd w, int max_iters) {
  constexpr int kMemory = 8;
  constexpr double kMaxStep = 4.0;
  constexpr double kMaxCoordinate = 60.0;
  Eigen::VectorXd grad;
  double fx = obj.value(w, &grad);
  if (!std::isfinite(fx)) return {fx, w, true};
  std::vector<Eigen::VectorXd> s_hist, y_hist;
  std::vector<double> rho_hist;

  for (int it = 0; it < max_iters; ++it) {
    if (grad.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, std::abs(fx))) break;
    Eigen::VectorXd dir = -grad;
    const auto m = s_hist.size();
    std::vector<double> alpha(m);
    for (std::size_t k = m; k-- > 0;) {
      alpha[k] = rho_hist[k] * s_hist[k].dot(dir);
      dir -= alpha[k] * y_hist[k];
    }
    if (m > 0) dir *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t k = 0; k < m; ++k) {
      const double beta = rho_hist[k] * y_hist[k].dot(dir);
      dir += (alpha[k] - beta) * s_hist[k];
    }
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }
    double step = 1.0;
    const double longest = dir.cwiseAbs().maxCoeff();
    if (longest * step > kMaxStep) step = kMaxStep / longest;

    Eigen::VectorXd w_new, g_new;
    double f_new = fx;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      w_new = w + step * dir;
      f_new = obj.value(w_new, &g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd s = w_new - w;
    const Eigen::VectorXd y = g_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      if (s_hist.size() == kMemory) {
        s_hist.erase(s_hist.begin());
        y_hist.erase(y_hist.begin());
        rho_hist.erase(rho_hist.begin());
      }
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
    }
    const double decrease = fx - f_new;
    w = w_new;
    grad = g_new;
    fx = f_new;
    if (w.cwiseAbs().maxCoeff() > kMaxCoordinate) break;
    if (decrease <= 1e-15 * std::max(1.0, std::abs(fx)) && it > 10) break;
  }
  return {fx, w, false};
}

struct SearchResult {
  double best;
  Eigen::VectorXd best_v;
  int diverged;
  int runs;
};

SearchResult search_ratio(const LocalPatch& patch, double n, const SearchOptions& options) {
  if (options.starts < 1) throw Error(ErrorCode::InvalidArgument, "starts must be >= 1");
  inverse_dimension(n);
  const RatioObjective obj{patch, n};
  const Index dim = patch.size() - 1;
  SearchResult res{std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(patch.size()), 0, 0};
  // Candidates are ranked by the 50-digit ratio, never by the double one the
  // descent used to get there.
  auto consider = [&](double value, const Eigen::VectorXd& w) {
    if (!std::isfinite(value)) return;
    const Eigen::VectorXd v = obj.embed(w);
    const VertexFunction f = v.array().exp();
    const auto parts = precise_parts(patch, f, n, 0.0);
    if (!(parts.gamma > 0)) return;
    const double precise = static_cast<double>(parts.deficit / parts.gamma);
    if (std::isfinite(precise) && precise < res.best) {
      res.best = precise;
      res.best_v = v;
    }
  };
  if (dim == 0) return res;

  // Near-constant probes along the CD minimizer: the ratio tends to the CD
  // curvature there, so the search never reports a value above it.
  const auto cd = cd_curvature_solve(patch, n);
  if (cd.minimizer.size() == patch.size()) {
    Eigen::VectorXd dir = cd.minimizer.tail(dim).array() - cd.minimizer[0];
    const double scale = dir.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      dir /= scale;
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}) {
        for (double sign : {1.0, -1.0}) {
          const Eigen::VectorXd w = sign * eps * dir;
          consider(obj.value(w, nullptr), w);
        }
      }
      for (double sign : {1.0, -1.0}) {
        const auto local = minimize(obj, sign * 0.1 * dir, options.max_iters);
        ++res.runs;
        if (local.diverged) ++res.diverged;
        consider(local.value, local.w);
      }
    }
  }

  // Start k depends only on (seed, k), so more starts only add candidates.
  static constexpr double kSpread[] = {0.3, 1.0, 2.0, 3.0};
  for (int k = 0; k < options.starts; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, kSpread[k % 4]);
    Eigen::VectorXd w(dim);
    for (Index i = 0; i < dim; ++i) w[i] = normal(rng);
    const auto local = minimize(obj, w, options.max_iters);
    ++res.runs;
    if (local.diverged) ++res.diverged;
    consider(local.value, local.w);
  }
  return res;
}

}  // namespace

SearchOutcome cde_search_counterexample(const WeightedGraph& g, Index x, double n, double K,
                                        const SearchOptions& options) {
  const auto patch = LocalPatch::around(g, x);
  const auto res = search_ratio(patch, n, options);
  SearchOutcome out{SearchStatus::NotFound, res.best, std::nullopt, res.diverged};
  if (!std::isfinite(res.best)) {
    out.status = SearchStatus::Inconclusive;
    return out;
  }
  if (res.best - K < -options.tol) {
    const Eigen::VectorXd f = res.best_v.array().exp();
    const auto ev = cde_evaluate(patch, res.best_v, n, K);
    const double scale = 1.0 / std::sqrt(ev.gamma_center);
    CurvatureWitness w;
    w.vertex = g.id(x);
    w.n = n;
    w.K = K;
    for (Index i = 0; i < patch.size(); ++i) {
      w.support.push_back(patch.graph.id(i));
      w.values.push_back(f[i] * scale);
    }
    VertexFunction full = VertexFunction::Ones(g.size());
    for (Index i = 0; i < patch.size(); ++i) full[patch.global[static_cast<std::size_t>(i)]] = w.values[static_cast<std::size_t>(i)];
    w.deficit = cde_deficit(g, x, full, n, K);
    w.normalization = gamma(g, full)[x];
    out.witness = std::move(w);
    out.status = SearchStatus::Found;
  } else if (res.diverged == res.runs) {
    out.status = SearchStatus::Inconclusive;
  }
  return out;
}

double cde_curvature_upper(const WeightedGraph& g, Index x, double n, const SearchOptions& options) {
  return search_ratio(LocalPatch::around(g, x), n, options).best;
}

double recheck_witness(const WeightedGraph& g, const CurvatureWitness& w) {
  const Index x = g.index_of(w.vertex);
  VertexFunction full = VertexFunction::Ones(g.size());
  for (std::size_t i = 0; i < w.support.size(); ++i) full[g.index_of(w.support[i])] = w.values[i];
  return cde_deficit(g, x, full, w.n, w.K);
}

std::string_view to_string(CurvatureVerdict v) {
  switch (v) {
    case CurvatureVerdict::Holds: return "holds";
    case CurvatureVerdict::Violated: return "violated";
    case CurvatureVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool CurvatureReport::any_violated() const {
  return std::any_of(records.begin(), records.end(),
                     [](const auto& r) { return r.verdict == CurvatureVerdict::Violated; });
}

bool CurvatureReport::any_inconclusive() const {
  return std::any_of(records.begin(), records.end(),
                     [](const auto& r) { return r.verdict == CurvatureVerdict::Inconclusive; });
}

CurvatureReport curvature_sweep(const WeightedGraph& g, double n, double K, const std::vector<Index>& vertices,
                                 const SearchOptions& options) {
  inverse_dimension(n);
  CurvatureReport report{n, K, {}};
  for (Index x : vertices) {
    const auto patch = LocalPatch::around(g, x);
    VertexCurvature rec;
    rec.vertex = g.id(x);
    rec.cd_K_star = cd_curvature_solve(patch, n).K;
    const auto outcome = cde_search_counterexample(g, x, n, K, options);
    rec.cde_best_K_upper = outcome.best_ratio;
    rec.cde_witness = outcome.witness;
    switch (outcome.status) {
      case SearchStatus::Found: rec.verdict = CurvatureVerdict::Violated; break;
      case SearchStatus::NotFound: rec.verdict = CurvatureVerdict::Holds; break;
      case SearchStatus::Inconclusive: rec.verdict = CurvatureVerdict::Inconclusive; break;
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

bool certify_cde(const WeightedGraph& g, double n, double K, const std::vector<Index>& vertices,
                 const SearchOptions& options) {
  for (Index x : vertices) {
    const auto outcome = cde_search_counterexample(g, x, n, K, options);
    if (outcome.status != SearchStatus::NotFound) return false;
  }
  return true;
}

DimensionCertificate certify_dimension(const WeightedGraph& g, double K, const std::vector<Index>& vertices,
                                       const SearchOptions& options, double growth, double max_n) {
  DimensionCertificate cert{false, 0.0, 0.0, ""};
  double n = 0.0;
  for (Index x : vertices) {
    const auto nx = cd_dimension_at(g, x, K);
    if (!nx || std::isinf(*nx)) {
      cert.note = "CD(n," + std::to_string(K) + ") fails for every finite n at " + g.id(x);
      return cert;
    }
    n = std::max(n, *nx);
  }
  cert.cd_lower_bound = n;
  n = std::max(n, 1e-3);
  while (n <= max_n) {
    if (certify_cde(g, n, K, vertices, options)) {
      cert.certified = true;
      cert.n = n;
      cert.note = "no CDE' counterexample found";
      return cert;
    }
    n *= growth;
  }
  cert.note = "CDE' counterexamples persist up to n = " + std::to_string(max_n);
  return cert;
}

}  // namespace liyau
