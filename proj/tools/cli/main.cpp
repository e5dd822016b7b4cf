#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
  using estfam::cli::Format;

  CLI::App app{
      "Finite-population mean estimation with auxiliary data: estimator-"
      "family analytics, SRSWOR simulation, and reproduction of the "
      "published efficiency table"};
  app.require_subcommand(1);

  const std::map<std::string, Format> format_names{
      {"text", Format::kText}, {"csv", Format::kCsv}, {"json", Format::kJson}};
  auto format_option = [&format_names](CLI::App* cmd, Format& target) {
    cmd->add_option("--format", target, "output format: text, csv, or json")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  };

  estfam::cli::MomentsOptions moments;
  estfam::cli::AnalyzeOptions analyze;
  estfam::cli::SimulateOptions simulate;
  estfam::cli::ReproduceOptions reproduce;

  CLI::App* moments_cmd = app.add_subcommand(
      "moments", "Population constants of a unit-level CSV");
  moments_cmd->add_option("--input", moments.input,
                          "population CSV with header y,x")
      ->required();
  moments_cmd->add_option("--n", moments.sample_size,
                          "sample size; also reports the design factor f1");
  format_option(moments_cmd, moments.format);

  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze",
      "First-order bias, MSE, PRE, and optimal alpha per estimator");
  analyze_cmd->add_option("--input", analyze.input,
                          "population CSV with header y,x");
  analyze_cmd->add_option("--params", analyze.params,
                          "key=value population-constants file");
  analyze_cmd->add_option("--n", analyze.sample_size,
                          "sample size (required with --input; overrides the "
                          "params file's n)");
  analyze_cmd->add_option("--estimators", analyze.estimators,
                          "'catalog' or comma list of alpha:a:b:g");
  format_option(analyze_cmd, analyze.format);

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Seeded SRSWOR Monte Carlo versus the analytic summary");
  simulate_cmd->add_option("--input", simulate.input,
                           "population CSV with header y,x (simulation needs "
                           "unit-level data)")
      ->required();
  simulate_cmd->add_option("--n", simulate.sample_size, "sample size")
      ->required();
  simulate_cmd->add_option("--reps", simulate.replications,
                           "number of replications (>= 1)");
  simulate_cmd->add_option("--seed", simulate.seed, "RNG seed (default 0)")
      ->envname("ESTFAM_SEED");
  simulate_cmd->add_option("--estimators", simulate.estimators,
                           "'catalog' or comma list of alpha:a:b:g");
  simulate_cmd->add_option("--threads", simulate.threads,
                           "worker threads (0 = hardware concurrency); the "
                           "report is identical for any value");
  format_option(simulate_cmd, simulate.format);

  CLI::App* reproduce_cmd = app.add_subcommand(
      "reproduce-table51",
      "Recompute the published PRE table from the embedded constants; exits "
      "nonzero when any row deviates by more than 1%");
  format_option(reproduce_cmd, reproduce.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : estfam::cli::kExitUsage;
  }

  if (moments_cmd->parsed())
    return estfam::cli::cmd_moments(moments, std::cout, std::cerr);
  if (analyze_cmd->parsed())
    return estfam::cli::cmd_analyze(analyze, std::cout, std::cerr);
  if (simulate_cmd->parsed())
    return estfam::cli::cmd_simulate(simulate, std::cout, std::cerr);
  if (reproduce_cmd->parsed())
    return estfam::cli::cmd_reproduce_table51(reproduce, std::cout, std::cerr);
  return estfam::cli::kExitUsage;
}
