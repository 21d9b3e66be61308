#include "liyau/inequalities.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "liyau/operators.hpp"

namespace liyau {

namespace {

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

// Heat flow used by the inequality checks: the positivity-preserving engine
// whenever f >= 0, so far-field values keep their relative accuracy.
VertexFunction heat(const Propagator& prop, const VertexFunction& f, double t) {
  if (f.size() == 0 || f.minCoeff() >= 0.0) return prop.apply_positive(f, t);
  return prop.apply(f, t);
}

void require_positive_solution(const WeightedGraph& g, const VertexFunction& u) {
  for (Index x = 0; x < u.size(); ++x) {
    if (!(u[x] > 0.0)) {
      throw Error(ErrorCode::NonpositiveFunction, "P_t f(" + g.id(x) + ") = " + std::to_string(u[x]) + " is not positive");
    }
  }
}

// G(sqrt u)/u and Lu/u at every vertex, written through u(y)/u(x).
void quotient_parts(const WeightedGraph& g, const VertexFunction& u, VertexFunction& grad, VertexFunction& lap) {
  grad.resize(g.size());
  lap.resize(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    double a = 0.0, l = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      const double q = u[nb.vertex] / u[x];
      const double d = std::sqrt(q) - 1.0;
      a += nb.weight * d * d;
      l += nb.weight * (q - 1.0);
    }
    grad[x] = a / (2.0 * g.measure(x));
    lap[x] = l / g.measure(x);
  }
}

double power_w(double b, double s, double t) { return std::pow(1.0 - s / t, b); }

// Gauss-Legendre nodes and weights on [-1, 1] by Newton on P_n.
struct Rule {
  std::vector<double> x, w;
};

Rule gauss_legendre(int n) {
  Rule r{std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    r.x[static_cast<std::size_t>(i)] = z;
    r.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

struct Pair {
  double a = 0.0, b = 0.0;
};

Pair panel(const GeneralSchedule& sch, const Rule& rule, double t, double lo, double hi) {
  Pair out;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double s = mid + half * rule.x[i];
    const double w = sch.w(s, t);
    const double dw = sch.dw(s, t);
    out.a += rule.w[i] * w * w;
    out.b += rule.w[i] * dw * dw;
  }
  out.a *= half;
  out.b *= half;
  return out;
}

// Geometric panels from the midpoint toward one end; the part closer than
// t 2^-levels is added as the geometric tail implied by the last two panels.
Pair graded_half(const GeneralSchedule& sch, const Rule& rule, double t, bool toward_end) {
  constexpr int kLevels = 36;
  Pair total, last, before;
  double d = 0.5 * t;
  for (int k = 0; k < kLevels; ++k) {
    const double inner = 0.5 * d;
    const Pair p = toward_end ? panel(sch, rule, t, t - d, t - inner) : panel(sch, rule, t, inner, d);
    total.a += p.a;
    total.b += p.b;
    before = last;
    last = p;
    d = inner;
  }
  auto tail = [](double prev, double cur) {
    if (!(prev > 0.0) || !(cur >= 0.0)) return 0.0;
    const double r = cur / prev;
    return r < 1.0 ? cur * r / (1.0 - r) : 0.0;
  };
  total.a += tail(before.a, last.a);
  total.b += tail(before.b, last.b);
  return total;
}

GeneralSchedule as_general(const Schedule& schedule) {
  if (const auto* g = std::get_if<GeneralSchedule>(&schedule)) return *g;
  const double b = std::get<PowerSchedule>(schedule).b;
  GeneralSchedule g;
  g.w = [b](double s, double t) { return power_w(b, s, t); };
  g.dw = [b](double s, double t) { return -(b / t) * std::pow(1.0 - s / t, b - 1.0); };
  g.label = "power";
  return g;
}

double normalized(const GridPoint& p) { return p.margin / std::max(1.0, std::abs(p.rhs)); }

}  // namespace

std::string w_violation(const Schedule& schedule, double t, double K) {
  if (!(t > 0.0)) return "t must be positive";
  if (const auto* p = std::get_if<PowerSchedule>(&schedule)) {
    if (!(p->b > 0.5)) return "power exponent b must exceed 1/2";
    // W'/W = -b/(t - s) <= -b/t, so W' <= -K W everywhere iff K <= b/t.
    if (K > p->b / t) return "W' <= -K W fails near s = 0 (needs K <= b/t)";
    return "";
  }
  const auto& g = std::get<GeneralSchedule>(schedule);
  if (!g.w || !g.dw) return "general schedule needs W and W'";
  if (g.samples < 2) return "general schedule needs at least 2 samples";
  if (std::abs(g.w(0.0, t) - 1.0) > 1e-12) return "W(0) != 1";
  if (std::abs(g.w(t, t)) > 1e-12) return "W(t) != 0";
  for (int i = 0; i < g.samples; ++i) {
    const double s = t * i / (g.samples - 1);
    const double w = g.w(s, t);
    if (i + 1 < g.samples && !(w > 0.0)) return "W not positive at s = " + std::to_string(s);
    if (i + 1 < g.samples && g.dw(s, t) > -K * w + 1e-12 * std::max(1.0, std::abs(K * w))) {
      return "W' > -K W at s = " + std::to_string(s);
    }
  }
  return "";
}

bool w_validate(const Schedule& schedule, double t, double K) { return w_violation(schedule, t, K).empty(); }

WIntegrals w_integrals(const Schedule& schedule, double t) {
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
  if (const auto* p = std::get_if<PowerSchedule>(&schedule)) {
    require(p->b > 0.5, ErrorCode::InvalidSchedule, "power exponent b must exceed 1/2");
    return {t / (2.0 * p->b + 1.0), p->b * p->b / ((2.0 * p->b - 1.0) * t), 0.0};
  }
  return w_integrals_quadrature(schedule, t);
}

WIntegrals w_integrals_quadrature(const Schedule& schedule, double t) {
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
  if (const auto* p = std::get_if<PowerSchedule>(&schedule)) {
    require(p->b > 0.5, ErrorCode::InvalidSchedule, "power exponent b must exceed 1/2");
  }
  const GeneralSchedule g = as_general(schedule);
  require(static_cast<bool>(g.w) && static_cast<bool>(g.dw), ErrorCode::InvalidSchedule, "schedule needs W and W'");
  static const Rule fine = gauss_legendre(20);
  static const Rule coarse = gauss_legendre(12);
  auto integrate = [&](const Rule& rule) {
    const Pair lo = graded_half(g, rule, t, false);
    const Pair hi = graded_half(g, rule, t, true);
    return Pair{lo.a + hi.a, lo.b + hi.b};
  };
  const Pair f = integrate(fine);
  const Pair c = integrate(coarse);
  return {f.a, f.b, std::max(std::abs(f.a - c.a), std::abs(f.b - c.b))};
}

LiYauSides liyau_sides(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                       const LiYauParams& params) {
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
  require(params.n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  require(prop.size() == g.size() && f.size() == g.size(), ErrorCode::DimensionMismatch, "graph, propagator and f");
  const std::string why = w_violation(params.schedule, t, params.K);
  require(why.empty(), ErrorCode::InvalidSchedule, why);
  const auto I = w_integrals(params.schedule, t);
  const VertexFunction u = heat(prop, f, t);
  require_positive_solution(g, u);
  LiYauSides sides;
  VertexFunction lap;
  quotient_parts(g, u, sides.lhs, lap);
  const double K = params.K;
  const double coeff = 0.5 * (1.0 - 2.0 * K * I.w2);
  const double additive = 0.5 * params.n * (I.dw2 + K * K * I.w2 - K);
  sides.rhs = coeff * lap.array() + additive;
  return sides;
}

VertexFunction classical_liyau_residual(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f,
                                        double t, double n) {
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
  require(n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  require(prop.size() == g.size() && f.size() == g.size(), ErrorCode::DimensionMismatch, "graph, propagator and f");
  const VertexFunction u = heat(prop, f, t);
  require_positive_solution(g, u);
  VertexFunction grad, lap;
  quotient_parts(g, u, grad, lap);
  return (n / (2.0 * t) - (grad - 0.5 * lap).array()).matrix();
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool point_fails(const GridPoint& p, double tol) {
  return !(p.margin >= -tol * std::max(1.0, std::abs(p.rhs)));
}

void finalize(ViolationReport& report) {
  report.worst.reset();
  report.witness.reset();
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& p : report.grid) {
    report.min_margin = std::min(report.min_margin, p.margin);
    if (!report.worst || normalized(p) < normalized(*report.worst)) report.worst = p;
  }
  if (report.worst && point_fails(*report.worst, report.tol)) {
    report.witness = report.worst;
    report.verdict = Verdict::Fail;
  } else {
    report.verdict = report.prerequisite_certified ? Verdict::Pass : Verdict::Inconclusive;
  }
}

std::vector<double> default_t_grid() { return parse_grid("0.01:10:log25"); }
std::vector<double> default_b_list() { return {0.75, 1.0, 2.0, 5.0}; }

std::vector<double> parse_grid(const std::string& spec) {
  auto fail = [&](const std::string& why) -> std::vector<double> {
    throw Error(ErrorCode::InvalidSchedule, "grid '" + spec + "': " + why);
  };
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos) return fail("expected min:max:logN or min:max:linN");
  auto number = [&](std::string_view text, const char* what) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) fail(std::string("bad ") + what);
    return value;
  };
  const std::string_view sv(spec);
  const double lo = number(sv.substr(0, c1), "min");
  const double hi = number(sv.substr(c1 + 1, c2 - c1 - 1), "max");
  const std::string_view kind = sv.substr(c2 + 1);
  bool log = false;
  if (kind.starts_with("log")) {
    log = true;
  } else if (!kind.starts_with("lin")) {
    return fail("spacing must be log or lin");
  }
  const std::string_view count_text = kind.substr(3);
  int count = 0;
  const auto res = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() || count_text.empty()) {
    return fail("bad point count");
  }
  if (count < 1) return fail("point count must be >= 1");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) return fail("need finite min <= max");
  if (count == 1 && lo != hi) return fail("a single point needs min == max");
  if (log && !(lo > 0.0)) return fail("log spacing needs min > 0");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double a = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] = log ? std::exp(std::log(lo) + a * (std::log(hi) - std::log(lo))) : lo + a * (hi - lo);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

std::vector<Index> all_or(const WeightedGraph& g, const std::vector<Index>& chosen) {
  if (!chosen.empty()) return chosen;
  std::vector<Index> all(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

}  // namespace

ViolationReport liyau_check(const WeightedGraph& g, const Propagator& prop, const LiYauSweep& sweep) {
  ViolationReport report{"liyau", sweep.n, sweep.K, sweep.tol, sweep.certified};
  const auto vertices = all_or(g, sweep.vertices);
  for (Index y : all_or(g, sweep.sources)) {
    const VertexFunction f = VertexFunction::Unit(g.size(), y);
    for (double t : sweep.t_grid) {
      for (double b : sweep.b_list) {
        const auto sides = liyau_sides(g, prop, f, t, {sweep.n, sweep.K, PowerSchedule{b}});
        for (Index x : vertices) {
          report.grid.push_back({g.id(x), "", g.id(y), t, 0.0, b, sides.lhs[x], sides.rhs[x], sides.rhs[x] - sides.lhs[x]});
        }
      }
    }
  }
  finalize(report);
  return report;
}

ViolationReport classical_liyau_check(const WeightedGraph& g, const Propagator& prop, const LiYauSweep& sweep) {
  require(sweep.K == 0.0, ErrorCode::InvalidArgument, "the classical form has K = 0");
  ViolationReport report{"liyau_classical", sweep.n, 0.0, sweep.tol, sweep.certified};
  const auto vertices = all_or(g, sweep.vertices);
  for (Index y : all_or(g, sweep.sources)) {
    const VertexFunction f = VertexFunction::Unit(g.size(), y);
    for (double t : sweep.t_grid) {
      const VertexFunction u = heat(prop, f, t);
      require_positive_solution(g, u);
      VertexFunction grad, lap;
      quotient_parts(g, u, grad, lap);
      for (Index x : vertices) {
        const double lhs = grad[x] - 0.5 * lap[x];
        const double rhs = sweep.n / (2.0 * t);
        report.grid.push_back({g.id(x), "", g.id(y), t, 0.0, 1.0, lhs, rhs, rhs - lhs});
      }
    }
  }
  finalize(report);
  return report;
}

ViolationReport general_liyau_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                                    double n, double K, const Schedule& schedule, bool certified, double tol) {
  const auto sides = liyau_sides(g, prop, f, t, {n, K, schedule});
  ViolationReport report{"liyau_general", n, K, tol, certified};
  const double b = std::holds_alternative<PowerSchedule>(schedule) ? std::get<PowerSchedule>(schedule).b : 0.0;
  for (Index x = 0; x < g.size(); ++x) {
    report.grid.push_back({g.id(x), "", "", t, 0.0, b, sides.lhs[x], sides.rhs[x], sides.rhs[x] - sides.lhs[x]});
  }
  finalize(report);
  return report;
}

double harnack_bound(const WeightedGraph& g, Index x, Index z, double t, double s, double n) {
  require(t > 0.0 && t < s, ErrorCode::InvalidArgument, "Harnack needs 0 < t < s");
  require(n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  const double d = graph_distance(g, x, z);
  return std::pow(s / t, n) * std::exp(4.0 * g.max_measure() * d * d / (g.min_weight() * (s - t)));
}

double harnack_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, Index x, Index z,
                     double t, double s, double n) {
  const double bound = harnack_bound(g, x, z, t, s, n);
  return bound * heat(prop, f, s)[z] - heat(prop, f, t)[x];
}

ViolationReport harnack_sweep(const WeightedGraph& g, const Propagator& prop, const HarnackSweep& sweep) {
  ViolationReport report{"harnack", sweep.n, 0.0, sweep.tol, sweep.certified};
  std::vector<std::vector<int>> dist;
  for (Index x = 0; x < g.size(); ++x) dist.push_back(distances_from(g, x));
  const double mw = g.max_measure() / g.min_weight();
  for (Index y : all_or(g, sweep.sources)) {
    const VertexFunction f = VertexFunction::Unit(g.size(), y);
    for (const auto& [t, s] : sweep.times) {
      require(t > 0.0 && t < s, ErrorCode::InvalidArgument, "Harnack needs 0 < t < s");
      const VertexFunction ut = heat(prop, f, t);
      const VertexFunction us = heat(prop, f, s);
      const double scale = std::pow(s / t, sweep.n);
      for (Index x = 0; x < g.size(); ++x) {
        for (Index z = 0; z < g.size(); ++z) {
          const double d = dist[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)];
          const double rhs = scale * std::exp(4.0 * mw * d * d / (s - t)) * us[z];
          report.grid.push_back({g.id(x), g.id(z), g.id(y), t, s, 0.0, ut[x], rhs, rhs - ut[x]});
        }
      }
    }
  }
  finalize(report);
  return report;
}

double kernel_constant(const WeightedGraph& g, double n) {
  require(n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  return std::pow(2.0, n) * std::exp(4.0 * g.max_measure() / g.min_weight());
}

double kernel_upper_check(const WeightedGraph& g, const Propagator& prop, double t, Index x, Index y, double n) {
  require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
  const double p = heat_from_point(prop, y, t)[x] / g.measure(y);
  return kernel_constant(g, n) / ball_volume(g, x, std::sqrt(t)) - p;
}

ViolationReport kernel_upper_sweep(const WeightedGraph& g, const Propagator& prop, double n,
                                   const std::vector<double>& t_grid, bool certified, double tol) {
  ViolationReport report{"kernel", n, 0.0, tol, certified};
  const double C = kernel_constant(g, n);
  for (double t : t_grid) {
    require(t > 0.0, ErrorCode::InvalidArgument, "t must be positive");
    for (Index y = 0; y < g.size(); ++y) {
      const VertexFunction column = heat_from_point(prop, y, t);
      for (Index x = 0; x < g.size(); ++x) {
        const double p = column[x] / g.measure(y);
        const double rhs = C / ball_volume(g, x, std::sqrt(t));
        report.grid.push_back({g.id(x), g.id(y), "", t, 0.0, 0.0, p, rhs, rhs - p});
      }
    }
  }
  finalize(report);
  return report;
}

double spectral_bottom(const WeightedGraph& g) { return spectral_bottom(g, {}); }

double spectral_bottom(const WeightedGraph& g, const std::vector<Index>& boundary) {
  std::vector<Index> local(static_cast<std::size_t>(g.size()), -1);
  for (Index b : boundary) {
    require(b >= 0 && b < g.size(), ErrorCode::UnknownVertex, "boundary index " + std::to_string(b));
    local[static_cast<std::size_t>(b)] = -2;
  }
  std::vector<Index> interior;
  for (Index x = 0; x < g.size(); ++x) {
    if (local[static_cast<std::size_t>(x)] == -1) {
      local[static_cast<std::size_t>(x)] = static_cast<Index>(interior.size());
      interior.push_back(x);
    }
  }
  require(!interior.empty(), ErrorCode::InvalidArgument, "empty interior");
  const Index k = static_cast<Index>(interior.size());
  // -L restricted to the interior, symmetrized by sqrt(m); loops are inert.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k, k);
  for (Index i = 0; i < k; ++i) {
    const Index x = interior[static_cast<std::size_t>(i)];
    for (const auto& nb : g.neighbors(x)) {
      if (nb.vertex == x) continue;
      A(i, i) += nb.weight / g.measure(x);
      const Index j = local[static_cast<std::size_t>(nb.vertex)];
      if (j >= 0) A(i, j) -= nb.weight / std::sqrt(g.measure(x) * g.measure(nb.vertex));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::InvalidArgument, "eigensolver failed");
  return es.eigenvalues()[0];
}

ChengReport cheng_check(const WeightedGraph& g, double n, double K, bool certified, Index center, int max_radius,
                        double tol) {
  require(K > 0.0, ErrorCode::InvalidArgument, "Cheng's bound needs K > 0");
  require(n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  ChengReport out{ViolationReport{"cheng", n, K, tol, certified}, spectral_bottom(g), {}, {}, true};
  const double rhs = K * n / 2.0;
  out.report.grid.push_back({g.id(center), "", "", 0.0, 0.0, 0.0, out.lambda_full, rhs, rhs - out.lambda_full});
  const auto dist = distances_from(g, center);
  for (int R = 1; R <= max_radius; ++R) {
    std::vector<Index> boundary;
    for (Index x = 0; x < g.size(); ++x) {
      if (dist[static_cast<std::size_t>(x)] > R) boundary.push_back(x);
    }
    out.radii.push_back(R);
    out.dirichlet.push_back(spectral_bottom(g, boundary));
  }
  for (std::size_t i = 1; i < out.dirichlet.size(); ++i) {
    if (out.dirichlet[i] > out.dirichlet[i - 1] + 1e-12 * std::max(1.0, out.dirichlet[i - 1])) out.monotone = false;
  }
  finalize(out.report);
  if (!out.monotone) out.report.note = "Dirichlet sequence is not monotone";
  return out;
}

namespace {

void require_phi_args(const Propagator& prop, const VertexFunction& f, double t, double s, double eps) {
  require(s > 0.0 && s < t, ErrorCode::InvalidArgument, "s must lie in (0, t)");
  require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
  require(f.size() == prop.size(), ErrorCode::DimensionMismatch, "f and propagator");
}

}  // namespace

VertexFunction phi_evaluate(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                            double s, double eps) {
  require_phi_args(prop, f, t, s, eps);
  const VertexFunction u = (prop.apply(f, t - s).array() + eps).matrix();
  return prop.apply(gamma(g, u.cwiseSqrt()), s);
}

VertexFunction phi_derivative(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                              double s, double eps) {
  require_phi_args(prop, f, t, s, eps);
  const VertexFunction u = (prop.apply(f, t - s).array() + eps).matrix();
  const VertexFunction r = u.cwiseSqrt();
  const VertexFunction q = laplacian(g, u).cwiseQuotient(2.0 * r);
  return -2.0 * prop.apply(gamma(g, r, q), s) + prop.apply_derivative(gamma(g, r), s);
}

double phi_derivative_residual(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f, double t,
                               double s, double eps, double h) {
  require(h > 0.0 && s - h > 0.0 && s + h < t, ErrorCode::InvalidArgument, "s +- h must stay inside (0, t)");
  const VertexFunction fd =
      (phi_evaluate(g, prop, f, t, s + h, eps) - phi_evaluate(g, prop, f, t, s - h, eps)) / (2.0 * h);
  return (fd - phi_derivative(g, prop, f, t, s, eps)).cwiseAbs().maxCoeff();
}

ViolationReport differential_inequality_check(const WeightedGraph& g, const Propagator& prop, const VertexFunction& f,
                                              double t, double n, double K, double b, double eps,
                                              const std::vector<double>& s_grid, bool certified, double tol) {
  require(n > 0.0, ErrorCode::InvalidArgument, "n must be positive");
  require(b > 0.5, ErrorCode::InvalidSchedule, "power exponent b must exceed 1/2");
  ViolationReport report{"phi_inequality", n, K, tol, certified};
  const VertexFunction pt = prop.apply(f, t);
  const VertexFunction lpt = prop.apply_derivative(f, t);
  auto alpha = [&](double s) { return std::pow(1.0 - s / t, 2.0 * b); };
  for (double s : s_grid) {
    require(s > 0.0 && s < t, ErrorCode::InvalidArgument, "s grid must lie in (0, t)");
    const double gam = 0.5 * n * (K - b / (t - s));
    require(gam <= 0.0, ErrorCode::InvalidArgument, "gamma(s) > 0 at s = " + std::to_string(s));
    const double h = 1e-3 * std::min(s, t - s);
    const VertexFunction dphi = (alpha(s + h) * phi_evaluate(g, prop, f, t, s + h, eps) -
                                 alpha(s - h) * phi_evaluate(g, prop, f, t, s - h, eps)) /
                                (2.0 * h);
    const double a = alpha(s);
    for (Index x = 0; x < g.size(); ++x) {
      const double bound = 2.0 * a * gam / n * lpt[x] - 2.0 * a * gam * gam / n * (pt[x] + eps);
      // Stored as lhs <= rhs: the bound must not exceed d/ds(alpha phi).
      report.grid.push_back({g.id(x), "", "", t, s, b, bound, dphi[x], dphi[x] - bound});
    }
  }
  finalize(report);
  return report;
}

std::vector<double> interior_grid(double t, int count) {
  require(t > 0.0 && count >= 1, ErrorCode::InvalidArgument, "interior grid needs t > 0 and count >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(t * (k + 0.5) / count);
  return out;
}

}  // namespace liyau
