#include <exception>
#include <iostream>

#include <CLI11.hpp>
#include <w11/error.hpp>
#include <w11/io.hpp>
#include <w11/numeric.hpp>

#include "commands.hpp"

namespace {

void add_output(CLI::App* sub, w11cli::RunConfig& c) {
  sub->add_option("--report", c.report, "JSON report path (default: none)");
  sub->add_option("--csv", c.csv, "CSV path (default: stdout)");
}

void add_strip(CLI::App* sub, w11cli::RunConfig& c) {
  sub->add_option("--L", c.L, "strip half-height and lattice scale");
  sub->add_option("--n-max", c.n_max, "number of dyadic levels above k_0");
  sub->add_option("--h-fine", c.h_fine, "slab cell size (0: largest admissible)");
  sub->add_option("--slab-out", c.slab_out, "write the smoothed slab as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"w11: nonlocal energies, traces and extensions of manifold-valued maps"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  w11cli::RunConfig c;
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (overrides W11_THREADS)");

  auto* energy = app.add_subcommand("energy", "integral of dist(u, tail) and the window pair integral");
  energy->add_option("--in", c.in, "GridMap JSON")->required();

  auto* theta = app.add_subcommand("theta", "Theta(R)");
  theta->add_option("--in", c.in, "GridMap JSON")->required();
  theta->add_option("--R", c.R, "cutoff radius")->required();
  theta->add_option("--norm", c.norm, "euclidean or sup");

  auto* bbm = app.add_subcommand("bbm", "asymptotic mean over a radius schedule");
  bbm->add_option("--in", c.in, "GridMap JSON")->required();
  bbm->add_option("--schedule", c.schedule, "R1,R2,... increasing")->delimiter(',')->required();

  auto* strip = app.add_subcommand("extend-strip", "extension into R^d x (-L, L)");
  strip->add_option("--u0", c.u0, "bottom GridMap JSON")->required();
  strip->add_option("--u1", c.u1, "top GridMap JSON")->required();
  add_strip(strip, c);

  auto* cube = app.add_subcommand("extend-cube", "extension into [-1,1]^{d+1}");
  cube->add_option("--faces", c.faces, "2(d+1) GridMap files, x_j = -1 then +1 per axis")->delimiter(',')->required();
  cube->add_option("--p", c.point, "base point (default: the corpus base point)")->delimiter(',');
  cube->add_option("--n-max", c.n_max, "number of dyadic levels above k_0");
  cube->add_option("--h-fine", c.h_fine, "slab cell size (0: largest admissible)");
  cube->add_option("--slab-out", c.slab_out, "write the smoothed slab as JSON");

  auto* half = app.add_subcommand("extend-halfspace", "extension into R^d x (0, inf)");
  half->add_option("--in", c.in, "GridMap JSON")->required();
  half->add_option("--schedule", c.schedule, "BBM radii R1,R2,... increasing")->delimiter(',')->required();
  add_strip(half, c);

  auto* trace = app.add_subcommand("trace-check", "trace inequalities of a slab against its bottom data");
  trace->add_option("--in", c.in, "SlabMap JSON")->required();
  trace->add_option("--u", c.u0, "bottom GridMap JSON")->required();
  trace->add_option("--r", c.radii, "r1,r2,... increasing")->delimiter(',')->required();

  auto* gen = app.add_subcommand("gen-corpus", "write a deterministic fixture");
  gen->add_option("--family", c.family, "constant, single-bump, multi-bump, smooth-sampled, two-valued-step")
      ->required();
  gen->add_option("--manifold", c.manifold, "euclidean:nu, circle or sphere:nu");
  gen->add_option("--d", c.d, "base dimension");
  gen->add_option("--n", c.n, "cells per axis");
  gen->add_option("--h", c.h, "cell size");
  gen->add_option("--bumps", c.bumps, "bumps for multi-bump");
  gen->add_option("--seed", c.seed, "64-bit seed");
  gen->add_option("--out", c.slab_out, "output GridMap JSON")->required();

  auto* repro = app.add_subcommand("repro", "run the full acceptance suite");
  repro->add_option("--seed", c.seed, "64-bit seed");

  for (auto* sub : {energy, theta, bbm, strip, cube, half, trace, gen, repro}) {
    add_output(sub, c);
    sub->add_option("--s", c.s, "sub-samples per cell and axis")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(w11::ErrorCategory::Usage);
  }

  try {
    if (threads > 0) w11::set_thread_count(threads);
    c.command = app.get_subcommands().front()->get_name();
    const auto report = w11cli::run(c);
    if (!c.report.empty()) w11::write_text(c.report, report.dump(2) + "\n");
    const std::string csv = w11tools::to_csv(w11cli::flatten(report));
    if (c.csv.empty()) {
      std::cout << csv;
    } else {
      w11::write_text(c.csv, csv);
    }
  } catch (const w11::Error& e) {
    std::cerr << "error: " << w11::to_string(e.category()) << ": " << e.what() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 70;
  }
  return 0;
}
