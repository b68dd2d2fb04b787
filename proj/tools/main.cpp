#include <iostream>

#include <CLI11.hpp>

#include "tconv/cli/commands.hpp"

namespace {

constexpr const char* kFooter = R"(Commands:
  moment   gradient map, exact moment and stabilizer at exp(v).x
  kn       Kempf-Ness value, gradient, Hessian at v; axiom spot checks
  orbit    orbit polytope plus a sampled moment cloud (--csv, --svg)
  flow     flow limit along --beta, critical levels, trajectory on t = 0..20
  invert   solve mu(exp(v).x) = --target
  faces    proper faces with their orbit witnesses, vertex witnesses
  density  density experiment over --xspec full|real|pattern
  measure  measure moment, Minkowski polytope, optional inversion (--target)
  verify   full invariant suite; exit 1 if any check fails
  run      execute the scenario's "tasks" list in order

CSV (--csv, orbit only): header v_1..v_k,mu_1..mu_k; one row per sample,
  v is the group parameter drawn uniformly from [-3,3]^k and mu the gradient
  map at exp(v).x, both printed with 17 significant digits.

Vectors are comma separated; --beta and --target take exact rationals (1/2,-3).

Exit codes: 0 success, 1 failed check or non-convergence, 2 malformed input.)";

}  // namespace

int main(int argc, char** argv) {
  tconv::cli::Options opt;
  auto& p = opt.params;

  CLI::App app{"Abelian convexity toolkit: gradient maps, orbit polytopes and flows for torus actions on P^n"};
  app.footer(kFooter);
  app.add_option("command", opt.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(tconv::cli::command_names()));
  app.add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
  app.add_option("-o,--output", opt.output, "Write the JSON report here instead of stdout");
  app.add_option("--samples", opt.samples, "Sample count")->capture_default_str();
  app.add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", opt.tol, "Solver / comparison tolerance")->capture_default_str();
  app.add_option("--svg", opt.svg, "orbit: write an SVG plot (k = 2)");
  app.add_option("--csv", opt.csv, "orbit: write the sampled moments as CSV");
  app.add_option("--point", p.point, "Point name (default: all points)");
  app.add_option("--measure", p.measure, "Measure name (default: all measures)");
  app.add_option("--beta", p.beta, "Direction in a, rational entries");
  app.add_option("--target", p.target, "Moment target, rational entries");
  app.add_option("--v", p.v, "Group parameter v, decimal entries (default 0)");
  app.add_option("--xspec", p.xspec, "density: full, real or pattern")->capture_default_str();
  app.add_option("--pattern", p.pattern, "density: support indices for --xspec pattern, e.g. 0,2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return tconv::cli::run(opt, std::cout, std::cerr);
}
