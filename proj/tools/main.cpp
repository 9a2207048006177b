#include <CLI11.hpp>

#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Koopman voice-transform verification pipelines"};
  app.require_subcommand(1);

  koopnet::cli::Options options;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 0.0;

  for (const char* name : {"verify", "decompose", "reconstruct", "wavelet"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", options.config, "JSON experiment config")->required();
    sub->add_option("--out", out, "report path (default: stdout)");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--tol", tol, "override the pass/fail tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : koopnet::cli::kExitInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  options.command = chosen->get_name();
  if (chosen->count("--out")) options.out = out;
  if (chosen->count("--seed")) options.seed = seed;
  if (chosen->count("--tol")) options.tol = tol;

  const koopnet::cli::RunResult result = koopnet::cli::run(options);
  if (!result.diagnostic.empty()) std::cerr << "koopnet: " << result.diagnostic << '\n';
  if (!options.out && !result.report.is_null()) std::cout << koopnet::cli::render(result.report);
  return result.exit_code;
}
