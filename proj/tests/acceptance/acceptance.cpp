// Acceptance run: one line per criterion, exit status nonzero on any FAIL.
//
// XFAIL marks a criterion whose stated requirement cannot be met on the given
// corpus for a mathematical reason. Every fact behind an XFAIL is still
// asserted here, so if the facts change the line turns into FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "liyau/curvature.hpp"
#include "liyau/families.hpp"
#include "liyau/heat.hpp"
#include "liyau/inequalities.hpp"
#include "liyau/operators.hpp"
#include "liyau/report.hpp"

using namespace liyau;

namespace {

enum class Status { Pass, Fail, XFail };

struct Outcome {
  Status status = Status::Pass;
  std::ostringstream detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::vector<Index> all_vertices(const WeightedGraph& g) {
  std::vector<Index> v;
  for (Index x = 0; x < g.size(); ++x) v.push_back(x);
  return v;
}

VertexFunction random_function(std::mt19937_64& rng, Index size, double lo, double hi) {
  std::uniform_real_distribution<double> U(lo, hi);
  VertexFunction f(size);
  for (Index x = 0; x < size; ++x) f[x] = U(rng);
  return f;
}

double max_abs(const VertexFunction& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// The Li-Yau corpus. `vertices` are the evaluation (and certification) points.
struct CorpusGraph {
  std::string name;
  WeightedGraph g;
  std::vector<Index> vertices;
};

std::vector<CorpusGraph> liyau_corpus() {
  std::vector<CorpusGraph> c;
  c.push_back({"K2", complete_graph(2), {}});
  c.push_back({"K5", complete_graph(5), {}});
  auto box = lattice_box(2, 5);
  c.push_back({"lattice_box(2,5) interior", box, lattice_interior(box, 2, 5)});
  c.push_back({"star(6)", star_graph(6), {}});
  for (auto& e : c) {
    if (e.vertices.empty()) e.vertices = all_vertices(e.g);
  }
  return c;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  double green = 0, polar = 0, tilde = 0;
  for (int k = 0; k < 100; ++k) {
    const auto g = random_connected_graph(rng);
    const auto f = random_function(rng, g.size(), -1, 1);
    const auto h = random_function(rng, g.size(), -1, 1);
    const auto u = random_function(rng, g.size(), 0.1, 10);
    const VertexFunction m = g.measure();

    const double gscale = std::max(1.0, f.cwiseProduct(laplacian(g, h)).cwiseProduct(m).cwiseAbs().sum() +
                                            gamma(g, f, h).cwiseProduct(m).cwiseAbs().sum());
    green = std::max(green, std::abs(green_residual(g, f, h)) / gscale);

    const VertexFunction f2 = f.cwiseProduct(f);
    const VertexFunction lhs = laplacian(g, f2);
    const VertexFunction rhs = 2 * f.cwiseProduct(laplacian(g, f)) + 2 * gamma(g, f);
    polar = std::max(polar, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));

    const VertexFunction r = u.cwiseSqrt();
    const VertexFunction t1 = gamma2_tilde(g, r);
    const VertexFunction t2 = 0.5 * laplacian(g, gamma(g, r)) - gamma(g, r, laplacian(g, u).cwiseQuotient(2 * r));
    tilde = std::max(tilde, max_abs(t1 - t2) / std::max(1.0, max_abs(t2)));
  }
  const double secs = seconds_since(start);
  out.require(green <= 1e-9, "Green residual " + fmt(green));
  out.require(polar <= 1e-9, "polarization residual " + fmt(polar));
  out.require(tilde <= 1e-9, "tilde identity residual " + fmt(tilde));
  out.require(secs < 10, "runtime " + fmt(secs) + " s");
  out.detail << "100 graphs, max relative residuals: Green " << fmt(green) << ", polarization " << fmt(polar)
             << ", tilde " << fmt(tilde) << " (" << fmt(secs) << " s)";
}

void criterion_2(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(43);
  double law = 0, commute = 0, adjoint = 0, mass = 0, positive = 0, contraction = 0;
  for (int k = 0; k < 100; ++k) {
    const auto g = random_connected_graph(rng);
    const auto prop = Propagator::build(g);
    const auto f = random_function(rng, g.size(), -1, 1);
    const auto h = random_function(rng, g.size(), -1, 1);
    const auto u = random_function(rng, g.size(), 0, 1);
    const double fscale = std::max(1.0, max_abs(f));
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      const VertexFunction pf = prop.apply(f, t);
      law = std::max(law, max_abs(prop.apply(prop.apply(f, 0.3 * t), 0.7 * t) - pf) / fscale);
      const VertexFunction lp = laplacian(g, pf);
      commute = std::max(commute, max_abs(lp - prop.apply(laplacian(g, f), t)) / std::max(1.0, max_abs(lp)));
      adjoint = std::max(adjoint, std::abs(inner(g, pf, h) - inner(g, f, prop.apply(h, t))) /
                                      std::max(1.0, std::abs(inner(g, pf, h))));
      mass = std::max(mass, max_abs(prop.apply(VertexFunction::Ones(g.size()), t) - VertexFunction::Ones(g.size())));
      positive = std::max({positive, -prop.apply(u, t).minCoeff(), -prop.apply_positive(u, t).minCoeff()});
      for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
        const double before = lp_norm(g, f, p);
        contraction = std::max(contraction, (lp_norm(g, pf, p) - before) / std::max(1.0, before));
      }
    }
  }
  const double secs = seconds_since(start);
  for (auto [name, v] : {std::pair{"semigroup law", law}, {"commutation", commute}, {"self-adjointness", adjoint},
                         {"P_t 1 = 1", mass}, {"positivity", positive}, {"contraction", contraction}}) {
    out.require(v <= 1e-8, std::string(name) + " residual " + fmt(v));
  }
  out.require(secs < 30, "runtime " + fmt(secs) + " s");
  out.detail << "100 graphs x 4 times: law " << fmt(law) << ", commute " << fmt(commute) << ", adjoint "
             << fmt(adjoint) << ", mass " << fmt(mass) << ", positivity " << fmt(positive) << ", contraction "
             << fmt(contraction) << " (" << fmt(secs) << " s)";
}

void criterion_3(Outcome& out) {
  const auto k2 = complete_graph(2);
  const auto prop = Propagator::build(k2);
  double heat = 0, cd = 0;
  for (double t : {0.1, 0.5, 1.0, 5.0}) {
    heat = std::max(heat, std::abs(heat_kernel(prop, t, 0, 1).p - 0.5 * (1 - std::exp(-2 * t))));
  }
  for (double n : {1.0, 2.0, 10.0, kInfiniteDimension}) {
    const double expect = std::isinf(n) ? 2.0 : 2.0 * (1 - 1 / n);
    cd = std::max(cd, std::abs(cd_curvature_at(k2, 0, n) - expect));
  }
  out.require(heat <= 1e-10, "kernel error " + fmt(heat));
  out.require(cd <= 1e-8, "CD curvature error " + fmt(cd));
  out.detail << "kernel error " << fmt(heat) << ", CD curvature error " << fmt(cd);
}

// Certified dimension per corpus graph (64 starts), shared by 4, 5, 7.
struct Certified {
  bool ok;
  double n;
  double cd_hint;
};

std::map<std::string, Certified>& certified_cache() {
  static std::map<std::string, Certified> cache;
  return cache;
}

Certified certified_n(const CorpusGraph& c, double K) {
  const std::string key = c.name + "@" + fmt(K);
  auto& cache = certified_cache();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  SearchOptions opt;
  opt.starts = 64;
  const auto cert = certify_dimension(c.g, K, c.vertices, opt);
  Certified r{cert.certified, cert.n, cert.cd_lower_bound};
  cache.emplace(key, r);
  return r;
}

ViolationReport classical_at(const CorpusGraph& c, double n, bool certified) {
  const auto prop = Propagator::build(c.g);
  LiYauSweep s;
  s.n = n;
  s.vertices = c.vertices;
  s.certified = certified;
  return classical_liyau_check(c.g, prop, s);
}

// Smallest n on a dyadic-ish ladder at which the classical form passes.
double empirical_threshold(const CorpusGraph& c) {
  for (double n : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0}) {
    if (classical_at(c, n, true).verdict == Verdict::Pass) return n;
  }
  return INFINITY;
}

void criterion_4(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  bool control_failed_somewhere = false;
  bool star_uncertified = false;
  for (const auto& c : liyau_corpus()) {
    const auto cert = certified_n(c, 0.0);
    if (!cert.ok) {
      // Leaves of star(6) refute CDE'(n, 0) for every n: the search returns a
      // verified witness at any n tried. The inequality is then not asserted.
      SearchOptions opt;
      const auto leaf = cde_search_counterexample(c.g, 1, 1e4, 0.0, opt);
      out.require(leaf.witness && recheck_witness(c.g, *leaf.witness) < -1e-7,
                  c.name + ": expected a verified CDE' witness at n = 1e4");
      star_uncertified = c.name == "star(6)";
      const auto r = classical_at(c, 1.0, false);
      out.require(r.verdict == Verdict::Inconclusive, c.name + ": uncertified run should be inconclusive");
      out.detail << c.name << ": no certifiable n (classical form still holds from n = " << fmt(empirical_threshold(c))
                 << "); ";
      continue;
    }
    const auto r = classical_at(c, cert.n, true);
    out.require(r.min_margin >= -1e-7 && r.verdict == Verdict::Pass, c.name + " min margin " + fmt(r.min_margin));
    const auto control = classical_at(c, cert.n / 4, true);
    control_failed_somewhere = control_failed_somewhere || control.verdict == Verdict::Fail;
    out.detail << c.name << ": n = " << fmt(cert.n) << " (CD hint " << fmt(cert.cd_hint) << "), min margin "
               << fmt(r.min_margin) << ", n/4 " << to_string(control.verdict) << "; ";
  }
  // Control: below the threshold the classical form does fail with a sound witness.
  const auto k5 = liyau_corpus()[1];
  const auto low = classical_at(k5, 0.5, true);
  out.require(low.verdict == Verdict::Fail && low.witness.has_value(), "K5 at n = 0.5 should fail");
  if (low.witness) {
    const auto prop = Propagator::build(k5.g);
    const auto& w = *low.witness;
    const double again = classical_liyau_residual(k5.g, prop, VertexFunction::Unit(5, k5.g.index_of(w.source)), w.t,
                                                  0.5)[k5.g.index_of(w.vertex)];
    out.require(again < -1e-7 / 2, "K5 witness did not reproduce");
  }
  const double secs = seconds_since(start);
  out.require(secs < 60, "runtime " + fmt(secs) + " s");
  out.detail << "K5 at n = 0.5 fails as a control; " << fmt(secs) << " s";
  if (out.problems.empty() && (star_uncertified || !control_failed_somewhere)) {
    out.status = Status::XFail;
    out.detail << " | deviation: star(6) admits no CDE' dimension, and certified n/4 stays above every measured "
                  "threshold, so the n/4 control cannot fail";
  }
  out.require(star_uncertified, "star(6) became certifiable; revisit the deviation");
}

void criterion_5(Outcome& out) {
  bool star_uncertified = false;
  for (const auto& c : liyau_corpus()) {
    const auto prop = Propagator::build(c.g);
    for (double K : {0.0, -1.0}) {
      const auto cert = certified_n(c, K);
      if (!cert.ok) {
        star_uncertified = star_uncertified || c.name == "star(6)";
        continue;
      }
      LiYauSweep s;
      s.n = cert.n;
      s.K = K;
      s.vertices = c.vertices;
      s.certified = true;
      s.tol = K == 0.0 ? 1e-7 : 1e-6;
      const auto r = liyau_check(c.g, prop, s);
      out.require(r.verdict == Verdict::Pass, c.name + " K=" + fmt(K) + " min margin " + fmt(r.min_margin));
      out.detail << c.name << " K=" << fmt(K) << ": n " << fmt(cert.n) << ", min " << fmt(r.min_margin) << "; ";
    }
  }
  out.require(star_uncertified, "star(6) became certifiable; revisit the deviation");
  if (out.problems.empty()) {
    out.status = Status::XFail;
    out.detail << "| deviation: star(6) has no certified n at K = 0 or K = -1, so it is reported inconclusive";
  }
}

void criterion_6(Outcome& out) {
  double closed = 0, quad = 0;
  for (double b : {0.75, 1.0, 2.0, 5.0}) {
    for (double t : {0.5, 1.0, 10.0}) {
      const double w2 = t / (2 * b + 1);
      const double dw2 = b * b / ((2 * b - 1) * t);
      const auto c = w_integrals(PowerSchedule{b}, t);
      const auto q = w_integrals_quadrature(PowerSchedule{b}, t);
      closed = std::max({closed, std::abs(c.w2 - w2) / w2, std::abs(c.dw2 - dw2) / dw2});
      quad = std::max({quad, std::abs(q.w2 - w2) / w2, std::abs(q.dw2 - dw2) / dw2});
    }
  }
  out.require(closed <= 1e-10, "closed form error " + fmt(closed));
  out.require(quad <= 1e-8, "quadrature error " + fmt(quad));
  out.detail << "closed form " << fmt(closed) << ", quadrature " << fmt(quad);
}

void criterion_7(Outcome& out) {
  for (const auto& c : liyau_corpus()) {
    const auto cert = certified_n(c, 0.0);
    if (!cert.ok) {
      out.detail << c.name << ": skipped (not certified); ";
      continue;
    }
    const auto prop = Propagator::build(c.g);
    HarnackSweep hs;
    hs.n = cert.n;
    hs.certified = true;
    const auto h = harnack_sweep(c.g, prop, hs);
    const auto k = kernel_upper_sweep(c.g, prop, cert.n, default_t_grid(), true);
    out.require(h.min_margin >= 0, c.name + " Harnack min " + fmt(h.min_margin));
    out.require(k.min_margin >= 0, c.name + " kernel min " + fmt(k.min_margin));
    out.require(std::abs(kernel_constant(c.g, cert.n) -
                         std::pow(2.0, cert.n) * std::exp(4 * c.g.max_measure() / c.g.min_weight())) <=
                    1e-12 * kernel_constant(c.g, cert.n),
                "kernel constant");
    out.detail << c.name << ": Harnack min " << fmt(h.min_margin) << ", kernel min " << fmt(k.min_margin) << "; ";
  }
}

void criterion_8(Outcome& out) {
  std::mt19937_64 rng(8);
  RandomGraphOptions opt;
  opt.max_vertices = 12;
  double lo = 1, hi = 0;
  for (int k = 0; k < 10; ++k) {
    const auto g = random_connected_graph(rng, opt);
    const auto prop = Propagator::build(g);
    const auto f = random_function(rng, g.size(), 0, 1);
    const double r1 = phi_derivative_residual(g, prop, f, 1.0, 0.5, 0.1, 2e-2);
    const double r2 = phi_derivative_residual(g, prop, f, 1.0, 0.5, 0.1, 1e-2);
    lo = std::min(lo, r2 / r1);
    hi = std::max(hi, r2 / r1);
  }
  out.require(lo >= 0.2 && hi <= 0.3, "halving ratios in [" + fmt(lo) + ", " + fmt(hi) + "]");
  out.detail << "halving ratios in [" << fmt(lo) << ", " << fmt(hi) << "]; ";

  const std::vector<std::pair<std::string, WeightedGraph>> graphs{{"K2", complete_graph(2)},
                                                                  {"lattice_box(2,4)", lattice_box(2, 4)}};
  for (const auto& [name, g] : graphs) {
    CorpusGraph c{name, g, all_vertices(g)};
    const auto cert = certified_n(c, 0.0);
    out.require(cert.ok, name + " not certified");
    const auto prop = Propagator::build(g);
    double worst = INFINITY;
    for (Index y = 0; y < g.size(); ++y) {
      const auto r = differential_inequality_check(g, prop, VertexFunction::Unit(g.size(), y), 1.0, cert.n, 0.0, 1.0,
                                                   0.1, interior_grid(1.0, 20), cert.ok);
      worst = std::min(worst, r.min_margin);
    }
    out.require(worst >= -1e-5, name + " min margin " + fmt(worst));
    out.detail << name << " (n " << fmt(cert.n) << ") min margin " << fmt(worst) << "; ";
  }
}

void criterion_9(Outcome& out) {
  const double K = 1.0;
  for (const auto& c : liyau_corpus()) {
    const auto cert = certified_n(c, -K);
    if (!cert.ok) {
      out.detail << c.name << ": no certified CDE'(n,-1), skipped; ";
      continue;
    }
    const auto r = cheng_check(c.g, cert.n, K, true, c.vertices.front(), 2);
    out.require(std::abs(r.lambda_full) <= 1e-10, c.name + " lambda " + fmt(r.lambda_full));
    out.require(r.report.verdict == Verdict::Pass, c.name + " Cheng verdict");
    out.detail << c.name << ": lambda* " << fmt(r.lambda_full) << " <= " << fmt(K * cert.n / 2) << "; ";
  }
  const auto box = lattice_box(2, 9);
  const auto r = cheng_check(box, 2, 1, false, box.index_of("4,4"), 4);
  out.require(r.monotone && r.dirichlet.size() == 4, "Dirichlet sequence not monotone");
  out.detail << "box(2,9) Dirichlet:";
  for (double d : r.dirichlet) out.detail << " " << fmt(d);
}

void criterion_10(Outcome& out) {
  const std::string cli = LIYAU_CLI;
  const auto dir = std::filesystem::current_path() / "acceptance_reports";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"liyau_k2", "liyau --family complete --size 2 --n 0.1"},
      {"liyau_k5", "liyau --family complete --size 5 --n 0.5"},
      {"harnack_k5", "harnack --family complete --size 5 --n 0.01"},
      {"harnack_path", "harnack --family path --size 4 --n 0.01"},
      {"curv_k2", "curvature --family complete --size 2 --n 2 --K 0"},
      {"curv_star", "curvature --family star --size 6 --n 10"},
      {"curv_k5", "curvature --family complete --size 5 --n 3 --K 1"},
  };
  int reports = 0;
  for (const auto& [name, args] : runs) {
    const auto rep = (dir / (name + ".json")).string();
    const int code = shell(cli + " " + args + " --out " + rep + " 2>/dev/null");
    out.require(code == 1, name + ": expected a violation, exit " + std::to_string(code));
    const auto check = (dir / (name + ".recheck.json")).string();
    const int again = shell(cli + " recheck --report " + rep + " --out " + check + " 2>/dev/null");
    out.require(again == 1, name + ": recheck exit " + std::to_string(again));
    std::ifstream in(check);
    const auto doc = Json::parse(in, nullptr, false);
    int n = 0;
    if (!doc.is_discarded()) {
      for (const auto& row : doc["rechecks"]) {
        ++n;
        out.require(row["confirmed"].get<bool>(), name + ": witness not confirmed");
      }
    }
    out.require(n > 0, name + ": no witness rows");
    reports += n;
  }
  out.detail << reports << " witnesses from " << runs.size() << " failing runs recomputed in a fresh process";
}

void criterion_11(Outcome& out) {
  std::mt19937_64 rng(11);
  double quotient = 0, embed = 0;
  for (int k = 0; k < 100; ++k) {
    const auto g = random_connected_graph(rng);
    const auto f = random_function(rng, g.size(), -5, 5);
    auto h = random_function(rng, g.size(), 0.2, 4);
    if (k % 2) h = -h;
    const VertexFunction lhs = gamma(g, f.cwiseQuotient(h));
    const VertexFunction rhs = quotient_gradient_bound(g, f, h);
    for (Index x = 0; x < g.size(); ++x) {
      quotient = std::max(quotient, (lhs[x] - rhs[x]) / std::max(1.0, rhs[x]));
    }
    for (auto [p, q] : {std::pair{1.0, 2.0}, {1.0, 3.0}, {2.0, 4.0}, {1.5, INFINITY}, {1.0, INFINITY}}) {
      const double a = lp_norm(g, f, q);
      const double b = embedding_constant(g, p, q) * lp_norm(g, f, p);
      embed = std::max(embed, (a - b) / std::max(1.0, b));
    }
  }
  out.require(quotient <= 1e-12, "quotient bound excess " + fmt(quotient));
  out.require(embed <= 1e-12, "embedding excess " + fmt(embed));
  out.detail << "max relative excess: quotient " << fmt(quotient) << ", embedding " << fmt(embed);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"identities", criterion_1},       {"semigroup", criterion_2},   {"K2 oracle", criterion_3},
      {"Li-Yau classical", criterion_4}, {"Li-Yau b-family", criterion_5}, {"W integrals", criterion_6},
      {"Harnack and kernel", criterion_7}, {"Phi machinery", criterion_8}, {"Cheng", criterion_9},
      {"violation soundness", criterion_10}, {"quotient bound and embedding", criterion_11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.problems.push_back(std::string("exception: ") + e.what());
    }
    if (!out.problems.empty()) out.status = Status::Fail;
    const char* tag = out.status == Status::Pass ? "PASS" : out.status == Status::XFail ? "XFAIL" : "FAIL";
    std::cout << tag << " " << (i + 1) << " " << criteria[i].first << ": " << out.detail.str() << "\n";
    for (const auto& p : out.problems) std::cout << "    problem: " << p << "\n";
    std::cout.flush();
    failures += out.status == Status::Fail;
  }
  return failures == 0 ? 0 : 1;
}
