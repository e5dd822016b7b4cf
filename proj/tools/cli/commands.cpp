#include "commands.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "estfam/analytics.hpp"
#include "estfam/errors.hpp"
#include "estfam/family.hpp"
#include "estfam/moments.hpp"
#include "estfam/rng.hpp"
#include "estfam/simulator.hpp"
#include "io.hpp"
#include "reference.hpp"

namespace estfam::cli {

namespace {

/// simulate adds exact-enumeration columns only below this subset count
/// (tighter than the library guard, to keep the command snappy).
constexpr std::uint64_t kExactColumnsLimit = 1'000'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

// "catalog" or a comma list of alpha:a:b:g quadruples (keyed e1, e2, ...).
// nullopt on malformed lists -- a usage error, not a data error.
std::optional<std::vector<NamedEstimator>> parse_estimators(
    const std::string& text, const PopulationMoments& m) {
  if (text == "catalog") return catalog(m);
  std::vector<NamedEstimator> entries;
  for (const std::string& token : split(text, ',')) {
    const std::vector<std::string> fields = split(token, ':');
    if (fields.size() != 4) return std::nullopt;
    std::array<double, 4> v{};
    for (std::size_t f = 0; f < 4; ++f) {
      const auto parsed = parse_strict_double(fields[f]);
      if (!parsed || !std::isfinite(*parsed)) return std::nullopt;
      v[f] = *parsed;
    }
    NamedEstimator named;
    named.key = "e" + std::to_string(entries.size() + 1);
    named.config = EstimatorConfig{v[0], v[1], v[2], v[3], named.key};
    named.description = "command-line configuration";
    entries.push_back(std::move(named));
  }
  if (entries.empty()) return std::nullopt;
  return entries;
}

std::optional<double> try_optimal_alpha(const EstimatorConfig& cfg,
                                        const PopulationMoments& m) {
  try {
    return optimal_alpha(ConfigShape{cfg.a, cfg.b, cfg.g}, m);
  } catch (const NoInteriorOptimum&) {
    return std::nullopt;
  }
}

void push_analysis_row(Table& table, const std::string& key,
                       const AnalyticSummary& s,
                       std::optional<double> alpha_opt) {
  table.rows.push_back({
      Cell::of_text(key),
      Cell::of_number(s.config.alpha),
      Cell::of_number(s.config.a),
      Cell::of_number(s.config.b),
      Cell::of_number(s.config.g),
      Cell::of_number(s.lambda),
      Cell::of_number(s.bias),
      Cell::of_number(s.mse),
      Cell::of_number(s.pre),
      alpha_opt ? Cell::of_number(*alpha_opt) : Cell::missing(),
      Cell::of_number(s.gap_to_min),
  });
}

int report_data_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return kExitData;
}

}  // namespace

int cmd_moments(const MomentsOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    const PopulationData pop = read_population_csv(options.input);
    const PopulationMoments m = compute_moments(pop);

    Table table;
    table.command = "moments";
    table.columns = {"quantity", "value"};
    auto push = [&table](const char* name, Cell cell) {
      table.rows.push_back({Cell::of_text(name), std::move(cell)});
    };
    push("N", Cell::of_integer(m.population_size));
    if (options.sample_size) {
      push("n", Cell::of_integer(*options.sample_size));
      push("f1", Cell::of_number(sampling_fraction_factor(
                     m.population_size, *options.sample_size)));
    }
    push("mean_y", Cell::of_number(m.mean_y));
    push("mean_x", Cell::of_number(m.mean_x));
    push("var_y", Cell::of_number(m.var_y));
    push("var_x", Cell::of_number(m.var_x));
    push("cv2_y", Cell::of_number(m.cv2_y));
    push("cv2_x", Cell::of_number(m.cv2_x));
    push("rho", Cell::of_number(m.rho));
    push("beta1_x", Cell::of_number(m.beta1_x));
    push("beta2_x", Cell::of_number(m.beta2_x));
    push("sigma_x", Cell::of_number(m.sigma_x));
    render(table, options.format, out);
    return kExitOk;
  } catch (const Error& e) {
    return report_data_error(e, err);
  }
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out,
                std::ostream& err) {
  const bool has_input = !options.input.empty();
  const bool has_params = !options.params.empty();
  if (has_input == has_params) {
    err << "error: analyze needs exactly one of --input or --params\n";
    return kExitUsage;
  }
  try {
    PopulationMoments m;
    std::size_t population_size = 0;
    std::size_t sample_size = 0;
    if (has_input) {
      if (!options.sample_size) {
        err << "error: --n is required with --input\n";
        return kExitUsage;
      }
      m = compute_moments(read_population_csv(options.input));
      population_size = m.population_size;
      sample_size = *options.sample_size;
    } else {
      const ParameterFile file = read_parameter_file(options.params);
      m = file.moments;
      population_size = file.population_size;
      sample_size = options.sample_size.value_or(file.sample_size);
    }
    const double f1 = sampling_fraction_factor(population_size, sample_size);

    const auto estimators = parse_estimators(options.estimators, m);
    if (!estimators) {
      err << "error: --estimators expects 'catalog' or a comma list of "
             "alpha:a:b:g\n";
      return kExitUsage;
    }

    Table table;
    table.command = "analyze";
    table.metadata.emplace_back("N", Cell::of_integer(population_size));
    table.metadata.emplace_back("n", Cell::of_integer(sample_size));
    table.metadata.emplace_back("f1", Cell::of_number(f1));
    table.columns = {"key",  "alpha", "a",   "b",         "g",         "lambda",
                     "bias", "mse",   "pre", "alpha_opt", "gap_to_min"};

    for (const NamedEstimator& named : *estimators) {
      push_analysis_row(table, named.key, named_analysis(named, m, f1),
                        try_optimal_alpha(named.config, m));
    }

    // Closing row: the family member at the optimal alpha, in the shape
    // (a=1, b=0, g=1) for which lambda = 1 and alpha_opt = rho*C_y/C_x.
    const double alpha_opt = optimal_alpha(ConfigShape{1.0, 0.0, 1.0}, m);
    const EstimatorConfig best{alpha_opt, 1.0, 0.0, 1.0, "t_opt"};
    push_analysis_row(table, "t_opt", summarize(best, m, f1), alpha_opt);

    render(table, options.format, out);
    return kExitOk;
  } catch (const Error& e) {
    return report_data_error(e, err);
  }
}

int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err) {
  if (options.input.empty()) {
    err << "error: simulate needs --input (unit-level data)\n";
    return kExitUsage;
  }
  if (options.replications < 1) {
    err << "error: --reps must be at least 1\n";
    return kExitUsage;
  }
  try {
    const PopulationData pop = read_population_csv(options.input);
    const PopulationMoments m = compute_moments(pop);
    const double f1 = sampling_fraction_factor(pop.size(), options.sample_size);

    const auto estimators = parse_estimators(options.estimators, m);
    if (!estimators) {
      err << "error: --estimators expects 'catalog' or a comma list of "
             "alpha:a:b:g\n";
      return kExitUsage;
    }

    SimulationPlan plan;
    plan.sample_size = options.sample_size;
    plan.replications = options.replications;
    plan.seed = options.seed;
    plan.estimators.reserve(estimators->size());
    for (const NamedEstimator& named : *estimators)
      plan.estimators.push_back(named.config);

    const EmpiricalSummary mc = run_monte_carlo(pop, plan, options.threads);

    std::optional<ExactSummary> exact;
    if (subset_count(pop.size(), options.sample_size, kExactColumnsLimit)) {
      try {
        exact = enumerate_exact(pop, options.sample_size, plan.estimators);
      } catch (const DomainFailure&) {
        // Some subset leaves an estimator's domain, so the exact
        // expectation does not exist; the columns are omitted.
        exact.reset();
      }
    }

    Table table;
    table.command = "simulate";
    table.metadata.emplace_back("N", Cell::of_integer(pop.size()));
    table.metadata.emplace_back("n", Cell::of_integer(options.sample_size));
    table.metadata.emplace_back("replications",
                                Cell::of_integer(mc.replications));
    table.metadata.emplace_back("seed", Cell::of_integer(mc.seed));
    table.metadata.emplace_back("rng", Cell::of_text(kRngName));
    table.metadata.emplace_back("exact", Cell::of_text(exact ? "yes" : "no"));

    table.columns = {"key",     "bias_emp", "bias_ana", "bias_abs_dev",
                     "se_bias", "mse_emp",  "mse_ana",  "mse_rel_dev",
                     "se_mse",  "pre_emp",  "pre_ana",  "failures"};
    if (exact) {
      table.columns.push_back("bias_exact");
      table.columns.push_back("mse_exact");
    }

    const double v0 = unit_variance(m, f1);
    for (std::size_t e = 0; e < estimators->size(); ++e) {
      const NamedEstimator& named = (*estimators)[e];
      const EstimatorStats& st = mc.per_estimator[e];
      const AnalyticSummary s = named_analysis(named, m, f1);
      std::vector<Cell> row;
      row.push_back(Cell::of_text(named.key));
      row.push_back(Cell::of_number(st.empirical_bias));
      row.push_back(Cell::of_number(s.bias));
      row.push_back(Cell::of_number(std::fabs(s.bias - st.empirical_bias)));
      row.push_back(Cell::of_number(st.se_of_bias));
      row.push_back(Cell::of_number(st.empirical_mse));
      row.push_back(Cell::of_number(s.mse));
      row.push_back(st.empirical_mse > 0.0
                        ? Cell::of_number(std::fabs(s.mse - st.empirical_mse) /
                                          st.empirical_mse)
                        : Cell::missing());
      row.push_back(Cell::of_number(st.se_of_mse));
      row.push_back(st.empirical_mse > 0.0
                        ? Cell::of_number(100.0 * v0 / st.empirical_mse)
                        : Cell::missing());
      row.push_back(Cell::of_number(s.pre));
      row.push_back(Cell::of_integer(st.domain_failures));
      if (exact) {
        row.push_back(Cell::of_number(exact->per_estimator[e].exact_bias));
        row.push_back(Cell::of_number(exact->per_estimator[e].exact_mse));
      }
      table.rows.push_back(std::move(row));
    }
    render(table, options.format, out);
    return kExitOk;
  } catch (const Error& e) {
    return report_data_error(e, err);
  }
}

int cmd_reproduce_table51(const ReproduceOptions& options, std::ostream& out,
                          std::ostream& err) {
  try {
    const ParameterFile ref = reference_constants();
    const PopulationMoments& m = ref.moments;
    const double f1 =
        sampling_fraction_factor(ref.population_size, ref.sample_size);

    std::vector<double> computed;
    for (const NamedEstimator& named : catalog(m))
      computed.push_back(named_analysis(named, m, f1).pre);
    const double alpha_opt = optimal_alpha(ConfigShape{1.0, 0.0, 1.0}, m);
    computed.push_back(
        summarize(EstimatorConfig{alpha_opt, 1.0, 0.0, 1.0, "t_opt"}, m, f1)
            .pre);

    Table table;
    table.command = "reproduce-table51";
    table.metadata.emplace_back("N", Cell::of_integer(ref.population_size));
    table.metadata.emplace_back("n", Cell::of_integer(ref.sample_size));
    table.columns = {"key", "paper_pre", "computed_pre", "rel_dev"};

    bool within_tolerance = true;
    const auto reference = reference_pre_table();
    for (std::size_t i = 0; i < reference.size(); ++i) {
      const double rel = (computed[i] - reference[i].pre) / reference[i].pre;
      within_tolerance = within_tolerance && std::fabs(rel) <= 0.01;
      table.rows.push_back({Cell::of_text(reference[i].key),
                            Cell::of_number(reference[i].pre),
                            Cell::of_number(computed[i]),
                            Cell::of_number(rel)});
    }
    render(table, options.format, out);
    if (!within_tolerance) {
      err << "error: published efficiency values not reproduced within 1%\n";
      return kExitTolerance;
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_data_error(e, err);
  }
}

}  // namespace estfam::cli
