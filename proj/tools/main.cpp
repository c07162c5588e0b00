#include "runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Manifold-regularized nonnegative matrix factorization"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "Factorize a data matrix as described by a JSON config");
  run->add_option("--config", config, "Run configuration (JSON)")->required();

  std::string kind;
  std::uint64_t seed = 0;
  std::string out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic dataset");
  synth->add_option("--kind", kind, "low_rank | two_clusters | noisy_features | two_rings")
      ->required();
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mrnmf::cli::kConfigError;
  }

  if (*run) return mrnmf::cli::run(config, std::cerr);
  return mrnmf::cli::synth(kind, seed, out, std::cerr);
}
