#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "commands.hpp"
#include "dimac/errors.hpp"

namespace {

void add_common(CLI::App* app, dimac::cli::Common& c, bool needs_n = true) {
  app->add_option("--spec", c.spec, "Channel spec (JSON)")->required()->check(CLI::ExistingFile);
  if (needs_n) app->add_option("--n", c.n, "Block length")->check(CLI::PositiveNumber);
  app->add_option("--s0", c.s0, "Initial state: given:ID, worst or stationary");
  app->add_option("--feedback", c.feedback, "Feedback map: perfect, none or quantized:K");
  app->add_option("--out", c.out, "Output path (stdout when omitted)");
  app->add_option("--threads", c.threads, "Worker cap")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dimac::cli;
  CLI::App app{"Directed-information toolkit for finite-state multiple-access channels"};
  app.set_version_flag("--version", DIMAC_VERSION);
  app.require_subcommand(1);
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());

  RegionOptions region;
  region.common.threads = hw;
  auto* r = app.add_subcommand("region", "Inner/outer rate region over a policy grid");
  add_common(r, region.common);
  r->add_option("--grid", region.grid, "Probability grid resolution (1/grid steps)")
      ->check(CLI::PositiveNumber);
  r->add_option("--family", region.family, "Policy grid: iid, time-varying, feedback or full");
  r->add_option("--variant", region.variant, "inner or outer");
  r->add_option("--sweep", region.sweep, "Compute n = 1..N and report Hausdorff gaps");
  r->add_option("--max-pairs", region.max_pairs, "Policy-pair budget");

  SimulateOptions sim;
  sim.common.threads = hw;
  auto* s = app.add_subcommand("simulate", "Monte Carlo over the random code-tree ensemble");
  add_common(s, sim.common);
  s->add_option("--K", sim.K, "Number of concatenated blocks")->check(CLI::PositiveNumber);
  s->add_option("--M1", sim.M1, "Messages of user 1")->check(CLI::PositiveNumber);
  s->add_option("--M2", sim.M2, "Messages of user 2")->check(CLI::PositiveNumber);
  s->add_option("--trials", sim.trials, "Number of trials")->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed, "Random seed");

  dimac::cli::Common dirinfo;
  auto* d = app.add_subcommand("dirinfo", "Directed information at uniform iid inputs");
  add_common(d, dirinfo);

  ExponentOptions expo;
  auto* e = app.add_subcommand("exponent", "Exponent curves E and F over a rho grid");
  add_common(e, expo.common);
  e->add_option("--type", expo.type, "Error type 1, 2, 3 or all");
  e->add_option("--rho-step", expo.rho_step, "Grid step on [0, 1]");

  dimac::cli::Common entropy;
  auto* h = app.add_subcommand("entropy", "Entropy-rate bracket of the additive noise");
  add_common(h, entropy);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run an invariant suite");
  v->add_option("suite", verify.suite, "lemmas, exponents, geometry or zero")->required();
  v->add_option("--seed", verify.seed, "Random seed");
  v->add_option("--count", verify.count, "Instances per check")->check(CLI::PositiveNumber);
  v->add_option("--out", verify.out, "Report path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForVersion& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*r) return cmd_region(region);
    if (*s) return cmd_simulate(sim);
    if (*d) return cmd_dirinfo(dirinfo);
    if (*e) return cmd_exponent(expo);
    if (*h) return cmd_entropy(entropy);
    if (*v) return cmd_verify(verify);
  } catch (const dimac::SizingError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const dimac::Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
