#include "estfam/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "estfam/compensated.hpp"
#include "estfam/errors.hpp"

namespace estfam {

namespace {

/// Replications per accumulation chunk. Chunk boundaries and the chunk
/// merge order are fixed, so the reduction is independent of how chunks
/// are distributed over worker threads.
constexpr std::uint64_t kChunk = 4096;

struct EstimatorAccum {
  NeumaierSum sum_d;   ///< t - mean_y
  NeumaierSum sum_d2;  ///< squared deviations
  NeumaierSum sum_d4;  ///< fourth powers, for the SE of the MSE
  std::uint64_t failures = 0;
};

double population_mean(const std::vector<double>& values) {
  NeumaierSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

// Partial Fisher-Yates: after the loop, perm[0..sample_size) is a uniform
// ordered sample without replacement.
void draw_indices(std::size_t population_size, std::size_t sample_size,
                  SplitMix64& stream, std::vector<std::size_t>& perm) {
  perm.resize(population_size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::uint64_t j =
        i + stream.below(static_cast<std::uint64_t>(population_size - i));
    std::swap(perm[i], perm[static_cast<std::size_t>(j)]);
  }
}

void check_design(const PopulationData& pop, std::size_t sample_size) {
  if (pop.y.size() != pop.x.size())
    throw MismatchedLists("y and x columns differ in length");
  if (sample_size < 1 || sample_size >= pop.size())
    throw InvalidDesign("sample size must satisfy 1 <= n < N");
}

double relative_deviation(double abs_dev, double reference) {
  if (reference == 0.0)
    return abs_dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return abs_dev / std::fabs(reference);
}

}  // namespace

std::optional<std::uint64_t> subset_count(std::size_t population_size,
                                          std::size_t sample_size,
                                          std::uint64_t cap) {
  if (sample_size > population_size) return std::uint64_t{0};
  const std::uint64_t k = std::min<std::uint64_t>(
      sample_size, population_size - sample_size);
  const std::uint64_t base = population_size - k;
  std::uint64_t c = 1;
  if (c > cap) return std::nullopt;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c == C(base + i - 1, i - 1), so the product is divisible by i and
    // the division is exact. C(base + i, i) is nondecreasing in i, which
    // makes the early abort sound.
    const unsigned __int128 product =
        static_cast<unsigned __int128>(c) * (base + i);
    const unsigned __int128 next = product / i;
    if (next > cap) return std::nullopt;
    c = static_cast<std::uint64_t>(next);
  }
  return c;
}

SampleData draw_srswor(const PopulationData& pop, std::size_t sample_size,
                       SplitMix64& stream) {
  check_design(pop, sample_size);
  std::vector<std::size_t> perm;
  draw_indices(pop.size(), sample_size, stream, perm);
  SampleData sample;
  sample.indices.assign(perm.begin(),
                        perm.begin() + static_cast<std::ptrdiff_t>(sample_size));
  sample.y.reserve(sample_size);
  sample.x.reserve(sample_size);
  for (std::size_t i = 0; i < sample_size; ++i) {
    sample.y.push_back(pop.y[perm[i]]);
    sample.x.push_back(pop.x[perm[i]]);
  }
  return sample;
}

EmpiricalSummary run_monte_carlo(const PopulationData& pop,
                                 const SimulationPlan& plan,
                                 unsigned threads) {
  check_design(pop, plan.sample_size);
  if (plan.replications < 1)
    throw InvalidDesign("at least one replication required");

  const double pop_mean_y = population_mean(pop.y);
  const double pop_mean_x = population_mean(pop.x);
  const std::size_t estimator_count = plan.estimators.size();
  const std::uint64_t reps = plan.replications;
  const std::uint64_t chunk_count = (reps + kChunk - 1) / kChunk;

  std::vector<std::vector<EstimatorAccum>> chunks(chunk_count);
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<bool> aborted{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    try {
      std::vector<std::size_t> perm;
      const double sample_count = static_cast<double>(plan.sample_size);
      for (;;) {
        if (aborted.load(std::memory_order_relaxed)) return;
        const std::uint64_t c =
            next_chunk.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunk_count) return;
        const std::uint64_t first = c * kChunk;
        const std::uint64_t last = std::min(first + kChunk, reps);
        std::vector<EstimatorAccum> acc(estimator_count);
        for (std::uint64_t r = first; r < last; ++r) {
          SplitMix64 stream(SplitMix64::mix(plan.seed, r));
          draw_indices(pop.size(), plan.sample_size, stream, perm);
          NeumaierSum sum_y;
          NeumaierSum sum_x;
          for (std::size_t i = 0; i < plan.sample_size; ++i) {
            sum_y.add(pop.y[perm[i]]);
            sum_x.add(pop.x[perm[i]]);
          }
          const double mean_y_s = sum_y.value() / sample_count;
          const double mean_x_s = sum_x.value() / sample_count;
          for (std::size_t e = 0; e < estimator_count; ++e) {
            double t;
            try {
              t = evaluate(plan.estimators[e], mean_y_s, mean_x_s, pop_mean_x);
            } catch (const InvalidBase&) {
              ++acc[e].failures;
              continue;
            } catch (const SingularLambda&) {
              ++acc[e].failures;
              continue;
            }
            const double d = t - pop_mean_y;
            const double d2 = d * d;
            acc[e].sum_d.add(d);
            acc[e].sum_d2.add(d2);
            acc[e].sum_d4.add(d2 * d2);
          }
        }
        chunks[c] = std::move(acc);
      }
    } catch (...) {
      const std::scoped_lock lock(error_mutex);
      if (!aborted.exchange(true)) first_error = std::current_exception();
    }
  };

  unsigned worker_count =
      threads != 0 ? threads : std::thread::hardware_concurrency();
  if (worker_count == 0) worker_count = 1;
  worker_count = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count, chunk_count));

  if (worker_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  if (aborted.load()) std::rethrow_exception(first_error);

  // Merge in chunk-index order: the totals never depend on which worker
  // produced which chunk.
  std::vector<EstimatorAccum> total(estimator_count);
  for (std::uint64_t c = 0; c < chunk_count; ++c) {
    for (std::size_t e = 0; e < estimator_count; ++e) {
      total[e].sum_d.merge(chunks[c][e].sum_d);
      total[e].sum_d2.merge(chunks[c][e].sum_d2);
      total[e].sum_d4.merge(chunks[c][e].sum_d4);
      total[e].failures += chunks[c][e].failures;
    }
  }

  EmpiricalSummary summary;
  summary.replications = reps;
  summary.seed = plan.seed;
  summary.per_estimator.resize(estimator_count);
  for (std::size_t e = 0; e < estimator_count; ++e) {
    const std::uint64_t ok = reps - total[e].failures;
    if (ok == 0) {
      const std::string label = plan.estimators[e].name.empty()
                                    ? "estimator #" + std::to_string(e)
                                    : plan.estimators[e].name;
      throw AllSamplesFailed(label + " failed on every replication", e);
    }
    const double count = static_cast<double>(ok);
    const double mean_d = total[e].sum_d.value() / count;
    const double mean_d2 = total[e].sum_d2.value() / count;
    const double mean_d4 = total[e].sum_d4.value() / count;

    EstimatorStats& st = summary.per_estimator[e];
    st.empirical_bias = mean_d;
    st.mean_estimate = pop_mean_y + mean_d;
    st.empirical_mse = mean_d2;
    st.domain_failures = total[e].failures;
    if (ok >= 2) {
      st.se_of_bias =
          std::sqrt(std::max(0.0, mean_d2 - mean_d * mean_d) / (count - 1.0));
      st.se_of_mse = std::sqrt(std::max(0.0, mean_d4 - mean_d2 * mean_d2) /
                               (count - 1.0));
    }
  }
  return summary;
}

ExactSummary enumerate_exact(const PopulationData& pop,
                             std::size_t sample_size,
                             std::span<const EstimatorConfig> estimators) {
  check_design(pop, sample_size);
  const auto count = subset_count(pop.size(), sample_size, kEnumerationGuard);
  if (!count)
    throw TooLarge("C(N, n) exceeds the enumeration guard of 10^7 subsets");

  const std::size_t population_size = pop.size();
  const double pop_mean_y = population_mean(pop.y);
  const double pop_mean_x = population_mean(pop.x);
  const double sample_count = static_cast<double>(sample_size);

  std::vector<NeumaierSum> sum_d(estimators.size());
  std::vector<NeumaierSum> sum_d2(estimators.size());

  std::vector<std::size_t> idx(sample_size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::uint64_t rank = 0;
  for (;;) {
    NeumaierSum sum_y;
    NeumaierSum sum_x;
    for (const std::size_t i : idx) {
      sum_y.add(pop.y[i]);
      sum_x.add(pop.x[i]);
    }
    const double mean_y_s = sum_y.value() / sample_count;
    const double mean_x_s = sum_x.value() / sample_count;
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      double t;
      try {
        t = evaluate(estimators[e], mean_y_s, mean_x_s, pop_mean_x);
      } catch (const Error& err) {
        throw DomainFailure("subset " + std::to_string(rank) + ": " +
                                err.what(),
                            static_cast<std::size_t>(rank), e);
      }
      const double d = t - pop_mean_y;
      sum_d[e].add(d);
      sum_d2[e].add(d * d);
    }
    ++rank;

    // Lexicographic successor of the index combination.
    std::size_t pos = sample_size;
    while (pos > 0 && idx[pos - 1] == pos - 1 + population_size - sample_size)
      --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < sample_size; ++j) idx[j] = idx[j - 1] + 1;
  }

  ExactSummary summary;
  summary.sample_count = *count;
  summary.per_estimator.resize(estimators.size());
  const double total = static_cast<double>(*count);
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    summary.per_estimator[e].exact_bias = sum_d[e].value() / total;
    summary.per_estimator[e].exact_mse = sum_d2[e].value() / total;
  }
  return summary;
}

std::vector<ObservedStat> observed_stats(const EmpiricalSummary& summary) {
  std::vector<ObservedStat> out;
  out.reserve(summary.per_estimator.size());
  for (const EstimatorStats& st : summary.per_estimator)
    out.push_back(ObservedStat{st.empirical_bias, st.empirical_mse});
  return out;
}

std::vector<ObservedStat> observed_stats(const ExactSummary& summary) {
  std::vector<ObservedStat> out;
  out.reserve(summary.per_estimator.size());
  for (const ExactEstimatorStats& st : summary.per_estimator)
    out.push_back(ObservedStat{st.exact_bias, st.exact_mse});
  return out;
}

DeviationReport compare_to_theory(std::span<const ObservedStat> observed,
                                  std::span<const AnalyticSummary> analytic,
                                  const CompareTolerances& tolerances) {
  if (observed.size() != analytic.size())
    throw MismatchedLists(
        "observed and analytic estimator lists differ in length");

  DeviationReport report;
  report.rows.resize(observed.size());
  bool all_pass = true;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    DeviationRow& row = report.rows[i];
    row.bias_abs_dev = std::fabs(analytic[i].bias - observed[i].bias);
    row.mse_abs_dev = std::fabs(analytic[i].mse - observed[i].mse);
    row.bias_rel_dev = relative_deviation(row.bias_abs_dev, observed[i].bias);
    row.mse_rel_dev = relative_deviation(row.mse_abs_dev, observed[i].mse);
    row.bias_pass = row.bias_abs_dev <= tolerances.bias_abs;
    row.mse_pass = row.mse_rel_dev <= tolerances.mse_rel;
    all_pass = all_pass && row.bias_pass && row.mse_pass;
  }
  report.all_pass = all_pass;

  std::vector<std::size_t> observed_order(observed.size());
  std::vector<std::size_t> analytic_order(observed.size());
  std::iota(observed_order.begin(), observed_order.end(), std::size_t{0});
  std::iota(analytic_order.begin(), analytic_order.end(), std::size_t{0});
  std::stable_sort(observed_order.begin(), observed_order.end(),
                   [&](std::size_t lhs, std::size_t rhs) {
                     return observed[lhs].mse < observed[rhs].mse;
                   });
  std::stable_sort(analytic_order.begin(), analytic_order.end(),
                   [&](std::size_t lhs, std::size_t rhs) {
                     return analytic[lhs].mse < analytic[rhs].mse;
                   });
  report.ranking_agreement = observed_order == analytic_order;
  return report;
}

}  // namespace estfam
