#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liyau/graph.hpp"
#include "liyau/heat.hpp"

namespace liyau {

// W(s) = (1 - s/t)^b on [0, t].
struct PowerSchedule {
  double b = 1.0;
};

// Any W on [0, t] with W(0) = 1, W(t) = 0, W > 0 before t and W' <= -K W.
// Both callables take (s, t). Constraints are checked on `samples` points.
struct GeneralSchedule {
  std::function<double(double, double)> w;
  std::function<double(double, double)> dw;
  int samples = 201;
  std::string label = "general";
};

using Schedule = std::variant<PowerSchedule, GeneralSchedule>;

struct LiYauParams {
  double n = 1.0;
  double K = 0.0;
  Schedule schedule = PowerSchedule{};
};

struct WIntegrals {
  double w2;      // int_0^t W^2
  double dw2;     // int_0^t W'^2
  double error;   // estimate; 0 for closed forms
};

/// Empty string when the schedule is admissible for (t, K), otherwise the reason.
std::string w_violation(const Schedule& schedule, double t, double K);
bool w_validate(const Schedule& schedule, double t, double K);

/// Closed form for the power family, quadrature otherwise.
WIntegrals w_integrals(const Schedule& schedule, double t);

/// Composite Gauss-Legendre on a mesh graded geometrically toward both ends,
/// so integrable endpoint singularities of W' (power family with b < 1) are
/// resolved. The error estimate compares 20- and 12-point rules.
WIntegrals w_integrals_quadrature(const Schedule& schedule, double t);

struct LiYauSides {
  VertexFunction lhs;   // G(sqrt u) / u
  VertexFunction rhs;
  VertexFunction margin() const { return rhs - lhs; }
};

/// u = P_t f for f >= 0 (positivity-preserving engine), with the sides of the
/// W-form estimate; the power schedule gives the b-family.
LiYauSides liyau_sides(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                       const LiYauParams& params);

/// n/(2t) - [G(sqrt u)/u - Lu/(2u)], the time derivative of sqrt u taken as Lu/(2 sqrt u).
VertexFunction classical_liyau_residual(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f,
                                        double t, double n);

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

struct GridPoint {
  std::string vertex;        // where the inequality is evaluated
  std::string peer;          // z for Harnack, y for the kernel bound; empty otherwise
  std::string source;        // f = delta_source; empty for constant or custom f
  double t = 0.0;
  double s = 0.0;            // second time (Harnack, Phi); 0 when unused
  double b = 0.0;            // power exponent; 0 when unused
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;       // rhs - lhs
};

struct ViolationReport {
  std::string check;
  double n = 0.0;
  double K = 0.0;
  double tol = 1e-7;
  bool prerequisite_certified = false;
  std::vector<GridPoint> grid;
  double min_margin = 0.0;
  std::optional<GridPoint> worst;    // most negative normalized margin
  std::optional<GridPoint> witness;  // first failing point, when the verdict is fail
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// A point fails when margin < -tol * max(1, |rhs|).
bool point_fails(const GridPoint& p, double tol);

/// Fills min_margin, worst, witness and verdict from the grid.
void finalize(ViolationReport& report);

/// 25 log-spaced points in [0.01, 10].
std::vector<double> default_t_grid();
std::vector<double> default_b_list();

/// "a:b:logN" or "a:b:linN", both ends included. Throws InvalidSchedule.
std::vector<double> parse_grid(const std::string& spec);

struct LiYauSweep {
  double n = 1.0;
  double K = 0.0;
  std::vector<double> b_list = default_b_list();
  std::vector<double> t_grid = default_t_grid();
  std::vector<Index> vertices;   // evaluation points; empty means all
  std::vector<Index> sources;    // f = delta_y; empty means all
  bool certified = false;
  double tol = 1e-7;
};

/// b-family over the sweep grid, f = delta_y for every source y.
ViolationReport liyau_check(const WeightedGraph& g, const Propagator& prop, const LiYauSweep& sweep);

/// The classical form over the sweep grid (b_list ignored; K must be 0).
ViolationReport classical_liyau_check(const WeightedGraph& g, const Propagator& prop, const LiYauSweep& sweep);

/// W-form estimate for one f and t. Throws InvalidSchedule when w_validate fails.
ViolationReport general_liyau_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                                    double n, double K, const Schedule& schedule, bool certified = false,
                                    double tol = 1e-7);

/// (s/t)^n exp(4 m_max d(x,z)^2 / (w_min (s - t))).
double harnack_bound(const WeightedGraph& g, Index x, Index z, double t, double s, double n);

/// bound * P_s f(z) - P_t f(x).
double harnack_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, Index x, Index z,
                     double t, double s, double n);

struct HarnackSweep {
  double n = 1.0;
  std::vector<std::pair<double, double>> times{{0.5, 1.0}, {1.0, 2.0}, {0.1, 5.0}};
  std::vector<Index> sources;  // empty means all
  bool certified = false;
  double tol = 1e-7;
};

/// Every ordered vertex pair (x, z), f = delta_y for each source.
ViolationReport harnack_sweep(const WeightedGraph& g, const Propagator& prop, const HarnackSweep& sweep);

/// 2^n exp(4 m_max / w_min).
double kernel_constant(const WeightedGraph& g, double n);

/// C / V(x, sqrt t) - p(t, x, y).
double kernel_upper_check(const WeightedGraph& g, const Propagator& prop, double t, Index x, Index y, double n);

ViolationReport kernel_upper_sweep(const WeightedGraph& g, const Propagator& prop, double n,
                                   const std::vector<double>& t_grid, bool certified, double tol = 1e-7);

/// Bottom of the spectrum of -L on l2(m). With a boundary set, functions are
/// killed there and the operator is restricted to the remaining vertices.
double spectral_bottom(const WeightedGraph& g);
double spectral_bottom(const WeightedGraph& g, const std::vector<Index>& boundary);

struct ChengReport {
  ViolationReport report;
  double lambda_full;
  std::vector<int> radii;
  std::vector<double> dirichlet;   // lambda of B(center, R), killed outside
  bool monotone;                   // non-increasing in R
};

/// lambda* <= K n / 2 under CDE'(n, -K), K > 0; plus the Dirichlet sequence on
/// balls around `center`.
ChengReport cheng_check(const WeightedGraph& g, double n, double K, bool certified, Index center = 0,
                        int max_radius = 4, double tol = 1e-7);

/// phi(s) = P_s G(sqrt(P_{t-s} f + eps)).
VertexFunction phi_evaluate(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                            double s, double eps);

/// d/ds phi = -2 P_s G(sqrt u, Lu / (2 sqrt u)) + L P_s G(sqrt u), u = P_{t-s} f + eps.
VertexFunction phi_derivative(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                              double s, double eps);

/// max_x |(phi(s+h) - phi(s-h)) / 2h - phi'(s)|.
double phi_derivative_residual(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                               double s, double eps, double h);

/// alpha = W^2 with W = (1 - s/t)^b and gamma = (n/2)(K - b/(t - s)), which
/// removes the phi term. Checks, at each s and vertex,
///   d/ds(alpha phi) >= (2 alpha gamma / n) L P_t f - (2 alpha gamma^2 / n)(P_t f + eps)
/// with the s-derivative by central differences.
ViolationReport differential_inequality_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f,
                                              double t, double n, double K, double b, double eps,
                                              const std::vector<double>& s_grid, bool certified, double tol = 1e-7);

/// `count` points strictly inside (0, t): t (k + 1/2) / count.
std::vector<double> interior_grid(double t, int count);

}  // namespace liyau
