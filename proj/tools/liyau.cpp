// Command-line front end: liyau <verb> [flags]. See README for the verbs.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "liyau/run.hpp"

namespace {

struct FamilyFlags {
  std::string family;
  int size = 2;
  int dim = 2;
  int side = 2;
  int branching = 2;
  int depth = 1;
  double weight = 1.0;
  std::string measure = "unit";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and Li-Yau verification on weighted graphs"};
  app.require_subcommand(1);

  liyau::RunConfig config;
  FamilyFlags fam;
  double n = 0.0;
  std::vector<double> b_list;
  std::string out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", config.graph_path, "graph JSON file");
    sub->add_option("--family", fam.family, "path|cycle|complete|star|lattice_box|regular_tree");
    sub->add_option("--size", fam.size, "vertex count (path, cycle, complete, star)");
    sub->add_option("--dim", fam.dim, "lattice_box dimension");
    sub->add_option("--side", fam.side, "lattice_box side length");
    sub->add_option("--branching", fam.branching, "regular_tree degree");
    sub->add_option("--depth", fam.depth, "regular_tree depth");
    sub->add_option("--weight", fam.weight, "constant edge weight");
    sub->add_option("--measure", fam.measure, "unit|degree");
    sub->add_option("--n", n, "dimension parameter; omitted means search for one");
    sub->add_option("--K", config.K, "curvature parameter");
    sub->add_option("--b", b_list, "power-family exponent (repeatable)");
    sub->add_option("--t", config.t_grid, "time grid, min:max:logN or min:max:linN");
    sub->add_option("--eps", config.eps, "regularizer");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--starts", config.starts, "multi-start count for curvature search");
    sub->add_option("--tol", config.tol, "verdict tolerance");
    sub->add_option("--vertices", config.vertices, "restrict to these vertex ids");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--format", config.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  };

  for (const char* verb : {"generate", "curvature", "liyau", "harnack", "kernel", "cheng"}) {
    common(app.add_subcommand(verb));
  }
  auto* identities = app.add_subcommand("identities", "identity and semigroup residuals on random graphs");
  common(identities);
  identities->add_option("--random", config.random_graphs, "number of random graphs");
  auto* recheck = app.add_subcommand("recheck", "recompute the witnesses stored in a report");
  recheck->add_option("--report", config.report_path, "report JSON")->required();
  recheck->add_option("--out", out_path, "write the recheck summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : liyau::kExitError;
  }

  auto* sub = app.get_subcommands().front();
  config.command = sub->get_name();
  if (!b_list.empty()) config.b_list = b_list;
  if (auto* opt = sub->get_option_no_throw("--n"); opt && opt->count() > 0) config.n = n;
  if (!fam.family.empty()) {
    try {
      liyau::FamilySpec spec;
      spec.family = liyau::parse_family(fam.family);
      spec.size = fam.size;
      spec.dim = fam.dim;
      spec.side = fam.side;
      spec.branching = fam.branching;
      spec.depth = fam.depth;
      spec.weight = fam.weight;
      spec.measure = liyau::parse_measure_scheme(fam.measure);
      config.family = spec;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return liyau::kExitError;
    }
  }

  const auto result = liyau::run(config);
  if (result.exit_code == liyau::kExitError) {
    std::cerr << "error: " << result.message << "\n";
    return result.exit_code;
  }
  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return liyau::kExitError;
    }
  }
  std::cerr << result.message << "\n";
  return result.exit_code;
}
