#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "estfam/analytics.hpp"
#include "estfam/family.hpp"
#include "estfam/moments.hpp"
#include "estfam/rng.hpp"

namespace estfam {

/// Exact enumeration refuses designs with more subsets than this.
inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

struct SimulationPlan {
  std::size_t sample_size = 0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<EstimatorConfig> estimators;
};

/// Per-estimator Monte Carlo result. Deviations are against the true
/// population mean; standard errors are plain Monte Carlo SEs over the
/// non-failed replications.
struct EstimatorStats {
  double mean_estimate = 0.0;
  double empirical_bias = 0.0;
  double empirical_mse = 0.0;
  double se_of_bias = 0.0;
  double se_of_mse = 0.0;
  std::uint64_t domain_failures = 0;
};

struct EmpiricalSummary {
  std::vector<EstimatorStats> per_estimator;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
};

struct ExactEstimatorStats {
  double exact_bias = 0.0;
  double exact_mse = 0.0;
};

struct ExactSummary {
  std::vector<ExactEstimatorStats> per_estimator;
  std::uint64_t sample_count = 0;  ///< C(N, n)
};

/// C(N, n) if it is <= cap, otherwise nullopt. Exact integer arithmetic.
std::optional<std::uint64_t> subset_count(std::size_t population_size,
                                          std::size_t sample_size,
                                          std::uint64_t cap);

/// Draw one SRSWOR sample by partial Fisher-Yates over the index array;
/// every size-n subset is equally likely. Deterministic given the stream
/// state. Throws InvalidDesign unless 1 <= n < N.
SampleData draw_srswor(const PopulationData& pop, std::size_t sample_size,
                       SplitMix64& stream);

/// Seeded Monte Carlo over plan.replications SRSWOR samples. All estimators
/// are evaluated on the same sample within a replication. Replication i uses
/// an independent stream seeded with SplitMix64::mix(plan.seed, i), and
/// accumulation is chunked with a fixed merge order, so the summary is
/// bit-identical for any worker thread count (0 = hardware concurrency).
///
/// Evaluation errors (SingularLambda, InvalidBase) are counted per estimator
/// and excluded from its accumulators; AllSamplesFailed is thrown when an
/// estimator fails on every replication.
EmpiricalSummary run_monte_carlo(const PopulationData& pop,
                                 const SimulationPlan& plan,
                                 unsigned threads = 0);

/// Exact finite-population expectation: iterate all C(N, n) subsets in
/// lexicographic order. Throws TooLarge when C(N, n) > kEnumerationGuard
/// and DomainFailure when any estimator fails on any subset (an exact
/// expectation cannot silently skip subsets).
ExactSummary enumerate_exact(const PopulationData& pop, std::size_t sample_size,
                             std::span<const EstimatorConfig> estimators);

/// Observed (bias, mse) pair in estimator-list order, for comparison
/// against analytic summaries.
struct ObservedStat {
  double bias = 0.0;
  double mse = 0.0;
};

std::vector<ObservedStat> observed_stats(const EmpiricalSummary& summary);
std::vector<ObservedStat> observed_stats(const ExactSummary& summary);

/// Pass thresholds: absolute for bias, relative (to the observed value)
/// for MSE.
struct CompareTolerances {
  double bias_abs = 0.0;
  double mse_rel = 0.0;
};

struct DeviationRow {
  double bias_abs_dev = 0.0;
  double bias_rel_dev = 0.0;
  double mse_abs_dev = 0.0;
  double mse_rel_dev = 0.0;
  bool bias_pass = false;
  bool mse_pass = false;
};

struct DeviationReport {
  std::vector<DeviationRow> rows;
  bool ranking_agreement = false;  ///< empirical PRE order matches analytic
  bool all_pass = false;
};

/// Per-estimator deviations of analytic bias/MSE from the observed values,
/// pass/fail against the tolerances, and whether ordering the estimators by
/// observed MSE reproduces the analytic ordering. Relative deviations use
/// the observed value as reference. Throws MismatchedLists when the inputs
/// have different lengths.
DeviationReport compare_to_theory(std::span<const ObservedStat> observed,
                                  std::span<const AnalyticSummary> analytic,
                                  const CompareTolerances& tolerances);

}  // namespace estfam
