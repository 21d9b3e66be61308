#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "liyau/graph.hpp"

namespace liyau {

inline constexpr double kInfiniteDimension = std::numeric_limits<double>::infinity();

/// 1/n, with n = infinity mapped to 0. Throws for n <= 0.
double inverse_dimension(double n);

/// Induced subgraph on the two-step ball B2(x). Every term of the curvature
/// conditions at x depends only on values there. Local index 0 is x, followed
/// by the distance-1 vertices, then distance 2.
struct LocalPatch {
  WeightedGraph graph;
  std::vector<Index> global;  // local -> ambient index
  Index center = 0;           // ambient index of x
  Index inner_count = 0;      // |B1(x)|

  static LocalPatch around(const WeightedGraph& g, Index x);
  Index size() const { return graph.size(); }
};

/// Quadratic forms at the patch center, written on the standard basis of B2(x).
struct CurvatureForms {
  Eigen::MatrixXd gamma2;     // f -> G2(f)(x)
  Eigen::MatrixXd gamma;      // f -> G(f)(x)
  Eigen::VectorXd laplacian;  // f -> (Lf)(x), as a row
};

CurvatureForms curvature_forms(const LocalPatch& patch);

struct CdDecision {
  bool holds;
  double min_eigenvalue;
};

/// Exact CD(n, K) test at x: minimum eigenvalue of
/// G2(f)(x) - (Lf)(x)^2 / n - K G(f)(x) over f on B2(x).
CdDecision cd_holds_at(const WeightedGraph& g, Index x, double n, double K, double tol = 1e-7);

struct CdCurvature {
  double K;                    // -infinity when the ratio is unbounded below
  Eigen::VectorXd minimizer;   // on patch coordinates; empty when K = -infinity
};

CdCurvature cd_curvature_solve(const LocalPatch& patch, double n);

/// Largest K such that CD(n, K) holds at x.
double cd_curvature_at(const WeightedGraph& g, Index x, double n);

/// Smallest n such that CD(n, K) holds at x; +infinity when only n = infinity
/// works, nullopt when even CD(infinity, K) fails.
std::optional<double> cd_dimension_at(const WeightedGraph& g, Index x, double K);

/// G~2(f)(x) - f(x)^2 (L log f)(x)^2 / n - K G(f)(x). Only values on B2(x)
/// are read; they must be positive.
double cde_deficit(const WeightedGraph& g, Index x, const VertexFunction& f, double n, double K);

/// Deficit of f = exp(v) on the patch, with its gradient in v. Differences are
/// formed through expm1 so nearly constant f keep full relative accuracy.
struct CdeEvaluation {
  double deficit;
  Eigen::VectorXd gradient;         // d deficit / dv
  double gamma_center;              // G(f)(x)
  Eigen::VectorXd gamma_gradient;   // d G(f)(x) / dv
};

CdeEvaluation cde_evaluate(const LocalPatch& patch, const Eigen::VectorXd& v, double n, double K);

struct SearchOptions {
  int starts = 64;
  int max_iters = 500;
  std::uint64_t seed = 42;
  double tol = 1e-7;
};

struct CurvatureWitness {
  std::string vertex;
  std::vector<std::string> support;  // B2(vertex)
  std::vector<double> values;        // f on support, normalized to G(f)(x) = 1
  double n;
  double K;
  double deficit;
  double normalization;              // G(f)(x) after normalization
};

enum class SearchStatus { Found, NotFound, Inconclusive };

struct SearchOutcome {
  SearchStatus status;
  double best_ratio;  // min over evaluated f of (G~2 - f^2 (L log f)^2 / n) / G(f) at x
  std::optional<CurvatureWitness> witness;
  int diverged_starts = 0;
};

/// Multi-start minimization of the normalized deficit over positive f on B2(x).
/// A returned witness certifies a violation of CDE'(n, K); no witness only
/// means none was found.
SearchOutcome cde_search_counterexample(const WeightedGraph& g, Index x, double n, double K,
                                        const SearchOptions& options = {});

/// Best (smallest) K found such that some f breaks CDE'(n, K) for all larger K.
/// Every evaluated f gives an upper bound on the CDE' curvature at x.
double cde_curvature_upper(const WeightedGraph& g, Index x, double n, const SearchOptions& options = {});

/// Deficit of a stored witness, recomputed from scratch on the ambient graph.
double recheck_witness(const WeightedGraph& g, const CurvatureWitness& w);

enum class CurvatureVerdict { Holds, Violated, Inconclusive };
std::string_view to_string(CurvatureVerdict v);

struct VertexCurvature {
  std::string vertex;
  double cd_K_star;
  double cde_best_K_upper;
  std::optional<CurvatureWitness> cde_witness;
  CurvatureVerdict verdict;
};

struct CurvatureReport {
  double n;
  double K;
  std::vector<VertexCurvature> records;

  bool any_violated() const;
  bool any_inconclusive() const;
};

CurvatureReport curvature_sweep(const WeightedGraph& g, double n, double K, const std::vector<Index>& vertices,
                                 const SearchOptions& options = {});

/// Dimension certification for CDE'(n, K) on a vertex set: start from the CD
/// lower bound max_x n_CD(x) and grow n until the search finds no counterexample.
struct DimensionCertificate {
  bool certified;
  double n;
  double cd_lower_bound;
  std::string note;
};

DimensionCertificate certify_dimension(const WeightedGraph& g, double K, const std::vector<Index>& vertices,
                                       const SearchOptions& options = {}, double growth = 1.25,
                                       double max_n = 1e4);

/// CDE'(n, K) at every listed vertex, by search.
bool certify_cde(const WeightedGraph& g, double n, double K, const std::vector<Index>& vertices,
                 const SearchOptions& options = {});

}  // namespace liyau
