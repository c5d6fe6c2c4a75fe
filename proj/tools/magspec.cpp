#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "magspec/builder.hpp"
#include "magspec/error.hpp"
#include "magspec/generators.hpp"
#include "magspec/io.hpp"
#include "magspec/verify.hpp"

using namespace magspec;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;

struct Config {
  std::string input;
  std::string out;
  int grid = 0;
  double flat_tol = 1e-8;
  std::size_t tree_cap = kDefaultTreeCap;
  std::uint64_t seed = 1;
  int flux_steps = 8;
  bool minimal = false;
  std::string kind;
  int dim = 2;
  int decoration = 2;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorCode::BadParams, "cannot write " + cfg.out);
  f << text;
}

SweepOptions sweep_options(const Config& cfg) {
  SweepOptions s;
  s.grid = cfg.grid;
  s.flat_tol = cfg.flat_tol;
  return s;
}

InvariantOptions invariant_options(const Config& cfg) {
  InvariantOptions o;
  o.tree_cap = cfg.tree_cap;
  return o;
}

int cmd_invariants(const Config& cfg) {
  FundamentalGraph g = read_graph_file(cfg.input);
  emit(cfg, invariants_to_json(compute_invariants(g, invariant_options(cfg)).report));
  return 0;
}

int cmd_bands(const Config& cfg) {
  FundamentalGraph g = read_graph_file(cfg.input);
  GraphInvariants inv = compute_invariants(g, invariant_options(cfg));
  SweepOptions s = sweep_options(cfg);
  s.keep_table = !cfg.out.empty();
  BandSpectrum spec = spectrum_bands(g, inv, s);
  if (!cfg.out.empty()) emit(cfg, band_table_to_csv(spec, g.dim()));
  std::cout << band_summary_to_json(spec, 4.0 * inv.report.I);
  return 0;
}

int cmd_verify(const Config& cfg) {
  FundamentalGraph g = read_graph_file(cfg.input);
  VerifyOptions v;
  v.sweep = sweep_options(cfg);
  v.tree_cap = cfg.tree_cap;
  v.seed = cfg.seed;
  VerificationReport r = run_verification(g, v);
  emit(cfg, verification_to_json(r));
  if (const CheckResult* fail = r.first_failure()) {
    std::fprintf(stderr, "check failed: %s (worst %s)\n", fail->name.c_str(), format_double(fail->worst).c_str());
    return kExitCheckFailed;
  }
  return 0;
}

int cmd_butterfly(const Config& cfg) {
  FundamentalGraph g = read_graph_file(cfg.input);
  validate(g);
  emit(cfg, butterfly_to_csv(butterfly(g, cfg.flux_steps, sweep_options(cfg))));
  return 0;
}

int cmd_build_periodic(const Config& cfg) {
  FundamentalGraph g = read_graph_file(cfg.input);
  OneForm mu = g.index_form();
  OneForm phi = g.magnetic_form();
  if (cfg.minimal) {
    GraphInvariants inv = compute_invariants(g, invariant_options(cfg));
    mu = inv.pair_mu;
    phi = inv.pair_phi;
  }
  emit(cfg, graph_to_json(build_periodic(g, mu, phi, cfg.tree_cap).graph));
  return 0;
}

int cmd_gen(const Config& cfg) {
  FundamentalGraph g;
  if (cfg.kind == "zd") {
    g = make_zd(cfg.dim);
  } else if (cfg.kind == "hexagonal") {
    g = make_hexagonal();
  } else if (cfg.kind == "kagome") {
    g = make_kagome();
  } else if (cfg.kind == "decorated") {
    g = make_decorated(cfg.dim, make_path(cfg.decoration));
  } else if (cfg.kind == "five-vertex") {
    g = make_five_vertex_example();
  } else if (cfg.kind == "random") {
    std::mt19937_64 rng(cfg.seed);
    g = random_periodic_graph(rng);
  } else {
    throw Error(ErrorCode::BadParams, "unknown generator '" + cfg.kind + "'");
  }
  emit(cfg, graph_to_json(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic Laplacians on periodic graphs: invariants, bands and bound checks"};
  app.require_subcommand(1);
  Config cfg;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("graph", cfg.input, "Fundamental graph JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--tree-cap", cfg.tree_cap, "Maximum number of spanning trees to enumerate");
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--grid", cfg.grid, "Samples per torus axis (default 101 for d<=2, 21 otherwise)")
        ->check(CLI::Range(3, 100000));
    sub->add_option("--flat-tol", cfg.flat_tol, "Band width below which a band counts as flat");
  };

  auto* inv = app.add_subcommand("invariants", "Betti number, I, I_alpha, I_mu_phi, tree count");
  add_graph(inv);
  auto* bands = app.add_subcommand("bands", "Band sweep; summary JSON to stdout, eigenvalue table to --out");
  add_graph(bands);
  add_sweep(bands);
  auto* verify = app.add_subcommand("verify", "Run every identity and inequality check");
  add_graph(verify);
  add_sweep(verify);
  verify->add_option("--seed", cfg.seed, "Seed for the random quasimomenta");
  auto* fly = app.add_subcommand("butterfly", "Band edges under uniform rational flux p/q");
  add_graph(fly);
  add_sweep(fly);
  fly->add_option("--flux-steps", cfg.flux_steps, "Largest denominator q")->check(CLI::PositiveNumber);
  auto* build = app.add_subcommand("build-periodic", "Realize a periodic graph from index and phase forms");
  add_graph(build);
  build->add_flag("--minimal", cfg.minimal, "Replace the forms by a minimal pair first");
  auto* gen = app.add_subcommand("gen", "Emit a built-in fundamental graph");
  gen->add_option("kind", cfg.kind, "zd | hexagonal | kagome | decorated | five-vertex | random")->required();
  gen->add_option("--dim", cfg.dim, "Lattice rank for zd and decorated")->check(CLI::PositiveNumber);
  gen->add_option("--decoration", cfg.decoration, "Vertices of the path decoration")->check(CLI::PositiveNumber);
  gen->add_option("--seed", cfg.seed, "Seed for the random generator");
  gen->add_option("--out", cfg.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*inv) return cmd_invariants(cfg);
    if (*bands) return cmd_bands(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*fly) return cmd_butterfly(cfg);
    if (*build) return cmd_build_periodic(cfg);
    if (*gen) return cmd_gen(cfg);
  } catch (const Error& e) {
    std::fprintf(stderr, "magspec: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "magspec: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
