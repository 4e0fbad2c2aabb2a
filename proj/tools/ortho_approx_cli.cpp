// ortho-approx: Gram-Schmidt approximation experiments.
//
//   ortho-approx <command> [--seed S] [--n N] [--d D | --k K] [--trials T]
//                [--eps E[,E...]] [--scales t1,t2,...]
//                [--variant normalized|scaled_raw|raw] [--in PATH] [--vec PATH]
//                [--out PATH] [--format csv|jsonl] [--normalize]
//
// Exit codes: 0 success, 1 numerical failure, 2 usage / config / file error.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ortho_approx/experiments.hpp"
#include "ortho_approx/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gram-Schmidt orthonormalization and its data-matrix approximations",
               "ortho-approx"};
  app.set_version_flag("--version", std::string(oapx::tool_version()));

  std::string command;
  std::string variant;
  std::string format = "csv";
  oapx::ExperimentConfig config;

  const std::map<std::string, oapx::OutputFormat> formats{{"csv", oapx::OutputFormat::Csv},
                                                          {"jsonl", oapx::OutputFormat::Jsonl}};

  app.add_option("command", command,
                 "orthogonalize | error-factor | certify | scaling-study | concentration | "
                 "coherence | haar-approx | bench")
      ->required();
  app.add_option("--seed", config.seed, "64-bit seed");
  app.add_option("--n", config.n, "ambient dimension (rows)");
  auto* d_opt = app.add_option("--d", config.d, "basis size (columns)");
  auto* k_opt = app.add_option("--k", config.d, "number of Gaussian columns");
  d_opt->excludes(k_opt);
  app.add_option("--trials", config.trials, "trials, seeds, paths or repetitions");
  app.add_option("--eps", config.epsilons, "tail thresholds")->delimiter(',');
  app.add_option("--scales", config.scales, "strictly decreasing perturbation scales")
      ->delimiter(',');
  app.add_option("--variant", variant, "normalized | scaled_raw | raw");
  app.add_option("--in", config.in_path, "input matrix (CSV or OAPXMAT1 binary)");
  app.add_option("--vec", config.vec_path, "input vector for certify");
  app.add_option("--out", config.out_path, "output path (stdout when omitted)");
  app.add_option("--format", format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_flag("--normalize", config.normalize, "normalize input columns first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto parsed = oapx::parse_command(command);
  if (!parsed) {
    std::cerr << "error: unknown command '" << command << "'\n";
    return 2;
  }
  config.command = *parsed;
  if (!variant.empty()) {
    config.variant = oapx::parse_variant(variant);
    if (!config.variant) {
      std::cerr << "error: invalid --variant: '" << variant << "'\n";
      return 2;
    }
  }
  config.format = formats.at(format);
  config.workers = oapx::worker_count();

  return oapx::run_command(config, std::cout, std::cerr);
}
