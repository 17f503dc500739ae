#include <iostream>

#include "CLI11.hpp"

#include "azcoh/cli.hpp"

int main(int argc, char** argv) {
  using namespace azcoh::cli;

  CLI::App app{"alpha-z Renyi divergences and coherence measures"};
  app.require_subcommand(1);

  CoherenceArgs coh;
  auto* c = app.add_subcommand("coherence", "C_{alpha,z} of a state file, as JSON");
  c->add_option("input,--input", coh.input, "state file")->required();
  c->add_option("--alpha", coh.alpha)->required();
  c->add_option("--z", coh.z)->required();
  c->add_option("--method", coh.method, "auto, closed, numeric or grid")
      ->check(CLI::IsMember({"auto", "closed", "numeric", "grid"}));
  c->add_flag("--allow-unproven", coh.allow_unproven, "compute outside the proven (alpha, z) cases");
  c->add_option("--seed", coh.seed);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "pure-qubit C_{1/2,z} table for z in {1/2, 1, 2}, as CSV");
  s->add_option("--points", sweep.points);
  s->add_option("--output,output", sweep.output)->required();
  s->add_option("--seed", sweep.seed);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "randomized verification suite, JSON report");
  v->add_option("suite", ver.suite, "lemma1, dpi, axioms, theorem2 or oracle")->required();
  v->add_option("--alpha", ver.alpha);
  v->add_option("--z", ver.z);
  v->add_option("--trials", ver.trials);
  v->add_option("--seed", ver.seed);

  DivergenceArgs div;
  auto* d = app.add_subcommand("divergence", "divergence between two state files, as JSON");
  d->add_option("rho", div.rho)->required();
  d->add_option("sigma", div.sigma)->required();
  d->add_option("--alpha", div.alpha)->required();
  d->add_option("--z", div.z);
  d->add_option("--kind", div.kind, "renyi, generalized, tsallis or f")
      ->check(CLI::IsMember({"renyi", "generalized", "tsallis", "f"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalidParams;
  }

  if (*c) return cmd_coherence(coh, std::cout, std::cerr);
  if (*s) return cmd_sweep_qubit(sweep, std::cerr);
  if (*v) return cmd_verify(ver, std::cout, std::cerr);
  if (*d) return cmd_divergence(div, std::cout, std::cerr);
  return kInvalidParams;
}
