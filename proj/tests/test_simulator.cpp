#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "doctest.h"
#include "estfam/analytics.hpp"
#include "estfam/errors.hpp"
#include "estfam/family.hpp"
#include "estfam/moments.hpp"
#include "estfam/rng.hpp"
#include "estfam/simulator.hpp"
#include "test_support.hpp"

using doctest::Approx;
using estfam::AllSamplesFailed;
using estfam::AnalyticSummary;
using estfam::compare_to_theory;
using estfam::CompareTolerances;
using estfam::compute_moments;
using estfam::DeviationReport;
using estfam::DomainFailure;
using estfam::draw_srswor;
using estfam::EmpiricalSummary;
using estfam::enumerate_exact;
using estfam::EstimatorConfig;
using estfam::ExactSummary;
using estfam::InvalidDesign;
using estfam::MismatchedLists;
using estfam::ObservedStat;
using estfam::observed_stats;
using estfam::PopulationData;
using estfam::PopulationMoments;
using estfam::run_monte_carlo;
using estfam::SampleData;
using estfam::SimulationPlan;
using estfam::SplitMix64;
using estfam::subset_count;
using estfam::TooLarge;

namespace {

EstimatorConfig cfg(double alpha, double a, double b, double g) {
  EstimatorConfig c;
  c.alpha = alpha;
  c.a = a;
  c.b = b;
  c.g = g;
  return c;
}

SimulationPlan make_plan(std::size_t n, std::uint64_t reps, std::uint64_t seed,
                         std::vector<EstimatorConfig> estimators) {
  SimulationPlan plan;
  plan.sample_size = n;
  plan.replications = reps;
  plan.seed = seed;
  plan.estimators = std::move(estimators);
  return plan;
}

bool same_stats(const EmpiricalSummary& a, const EmpiricalSummary& b) {
  if (a.per_estimator.size() != b.per_estimator.size()) return false;
  for (std::size_t i = 0; i < a.per_estimator.size(); ++i) {
    const auto& l = a.per_estimator[i];
    const auto& r = b.per_estimator[i];
    if (l.mean_estimate != r.mean_estimate) return false;
    if (l.empirical_bias != r.empirical_bias) return false;
    if (l.empirical_mse != r.empirical_mse) return false;
    if (l.se_of_bias != r.se_of_bias) return false;
    if (l.se_of_mse != r.se_of_mse) return false;
    if (l.domain_failures != r.domain_failures) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("subset counts") {
  const std::uint64_t big = 10'000'000;
  CHECK(subset_count(12, 4, big) == 495);
  CHECK(subset_count(20, 8, big) == 125970);
  CHECK(subset_count(4, 2, big) == 6);
  CHECK(subset_count(5, 0, big) == 1);
  CHECK(subset_count(5, 5, big) == 1);
  CHECK(subset_count(5, 6, big) == 0);
  CHECK(!subset_count(40, 20, big));
  CHECK(subset_count(12, 4, 495) == 495);
  CHECK(!subset_count(12, 4, 494));
  // a count needing 64-bit headroom, exact
  CHECK(subset_count(1'000'000, 2, 1'000'000'000'000ull) == 499'999'500'000ull);
}

TEST_CASE("srswor draws are deterministic and well formed") {
  const PopulationData pop = ts::load_population("mc12.csv");

  SplitMix64 first(42u);
  SplitMix64 second(42u);
  const SampleData a = draw_srswor(pop, 4, first);
  const SampleData b = draw_srswor(pop, 4, second);
  CHECK(a.indices == b.indices);
  CHECK(a.y == b.y);

  REQUIRE(a.size() == 4);
  std::array<bool, 12> seen{};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t idx = a.indices[i];
    REQUIRE(idx < 12);
    CHECK(!seen[idx]);
    seen[idx] = true;
    CHECK(a.y[i] == pop.y[idx]);
    CHECK(a.x[i] == pop.x[idx]);
  }

  SplitMix64 rng(1u);
  CHECK_THROWS_AS(draw_srswor(pop, 0, rng), InvalidDesign);
  CHECK_THROWS_AS(draw_srswor(pop, 12, rng), InvalidDesign);
}

TEST_CASE("srswor draws are uniform over subsets") {
  // N = 5, n = 4: the omitted unit identifies the subset. Each of the five
  // subsets should appear 20000 +- 600 times in 100000 draws (the margin is
  // beyond 4 sigma of the binomial).
  PopulationData pop;
  pop.y = {1.0, 2.0, 3.0, 4.0, 5.0};
  pop.x = {5.0, 4.0, 3.0, 2.0, 1.0};

  SplitMix64 rng(123u);
  std::array<int, 5> omitted{};
  for (int rep = 0; rep < 100000; ++rep) {
    const SampleData s = draw_srswor(pop, 4, rng);
    std::array<bool, 5> in{};
    for (const std::size_t idx : s.indices) in[idx] = true;
    for (std::size_t u = 0; u < 5; ++u)
      if (!in[u]) ++omitted[u];
  }
  for (std::size_t u = 0; u < 5; ++u) {
    CAPTURE(u);
    CHECK(omitted[u] > 20000 - 600);
    CHECK(omitted[u] < 20000 + 600);
  }

  // n = 1 from N = 2 picks each unit with frequency 1/2 +- 0.01.
  PopulationData two;
  two.y = {1.0, 2.0};
  two.x = {2.0, 1.0};
  SplitMix64 coin(99u);
  int zero_count = 0;
  for (int rep = 0; rep < 100000; ++rep)
    if (draw_srswor(two, 1, coin).indices[0] == 0) ++zero_count;
  CHECK(std::abs(zero_count / 100000.0 - 0.5) < 0.01);
}

TEST_CASE("monte carlo is bit-identical across thread counts") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const PopulationMoments m = compute_moments(pop);
  const auto configs = ts::catalog_configs(m);

  // replication counts straddling the chunk size, including one chunk only
  for (const std::uint64_t reps : {100ull, 4096ull, 4097ull, 20000ull}) {
    CAPTURE(reps);
    const SimulationPlan plan = make_plan(4, reps, 7u, configs);
    const EmpiricalSummary one = run_monte_carlo(pop, plan, 1);
    const EmpiricalSummary three = run_monte_carlo(pop, plan, 3);
    const EmpiricalSummary eight = run_monte_carlo(pop, plan, 8);
    const EmpiricalSummary all = run_monte_carlo(pop, plan, 0);
    CHECK(same_stats(one, three));
    CHECK(same_stats(one, eight));
    CHECK(same_stats(one, all));
    CHECK(one.replications == reps);
    CHECK(one.seed == 7u);
  }
}

TEST_CASE("estimators share each replication's sample") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const auto plan = make_plan(
      4, 5000, 11u, {cfg(1.0, 1.0, 0.0, 1.0), cfg(1.0, 1.0, 0.0, 1.0)});
  const EmpiricalSummary s = run_monte_carlo(pop, plan);
  REQUIRE(s.per_estimator.size() == 2);
  CHECK(s.per_estimator[0].mean_estimate == s.per_estimator[1].mean_estimate);
  CHECK(s.per_estimator[0].empirical_mse == s.per_estimator[1].empirical_mse);
}

TEST_CASE("the sample mean is empirically unbiased") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const auto plan = make_plan(4, 200000, 3u, {cfg(0.0, 1.0, 0.0, 0.0)});
  const EmpiricalSummary s = run_monte_carlo(pop, plan);
  const auto& t0 = s.per_estimator[0];

  CHECK(std::abs(t0.empirical_bias) <= 4.0 * t0.se_of_bias);
  // V(ybar) under this design, from the exact enumeration oracle
  CHECK(std::abs(t0.empirical_mse - 8.639989577714642) <=
        4.0 * t0.se_of_mse);
  CHECK(t0.domain_failures == 0);
  CHECK(t0.empirical_mse >=
        t0.empirical_bias * t0.empirical_bias - 1e-9);
}

TEST_CASE("monte carlo matches exact enumeration on the catalog") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const PopulationMoments m = compute_moments(pop);
  const auto configs = ts::catalog_configs(m);

  const ExactSummary exact = enumerate_exact(pop, 4, configs);
  REQUIRE(exact.sample_count == 495);

  const EmpiricalSummary mc =
      run_monte_carlo(pop, make_plan(4, 100000, 20260816u, configs));
  for (std::size_t e = 0; e < configs.size(); ++e) {
    CAPTURE(e);
    const auto& st = mc.per_estimator[e];
    const auto& ex = exact.per_estimator[e];
    CHECK(std::abs(st.empirical_bias - ex.exact_bias) <= 4.0 * st.se_of_bias);
    CHECK(std::abs(st.empirical_mse - ex.exact_mse) <= 4.0 * st.se_of_mse);
    CHECK(st.domain_failures == 0);
    CHECK(st.empirical_mse >=
          st.empirical_bias * st.empirical_bias - 1e-9);
  }
}

TEST_CASE("domain failures are counted and excluded") {
  // x-means of size-4 subsets of 1..12 range over [2.5, 10.5], so the base
  // xbar - 6 changes sign across subsets and a fractional exponent fails on
  // some draws but not others.
  PopulationData pop;
  for (int i = 1; i <= 12; ++i) {
    pop.y.push_back(10.0 + i);
    pop.x.push_back(static_cast<double>(i));
  }
  const auto plan = make_plan(4, 5000, 17u, {cfg(1.0, 1.0, -6.0, 0.5)});
  const EmpiricalSummary s = run_monte_carlo(pop, plan);
  const auto& st = s.per_estimator[0];
  CHECK(st.domain_failures > 0);
  CHECK(st.domain_failures < 5000);
  CHECK(std::isfinite(st.mean_estimate));
  CHECK(std::isfinite(st.empirical_mse));

  // The same configuration makes an exact expectation undefined.
  const std::vector<EstimatorConfig> bad = {cfg(1.0, 1.0, -6.0, 0.5)};
  CHECK_THROWS_AS(enumerate_exact(pop, 4, bad), DomainFailure);
  try {
    enumerate_exact(pop, 4, bad);
  } catch (const DomainFailure& e) {
    CHECK(e.estimator_index() == 0);
    CHECK(e.subset_rank() < 495);
  }
}

TEST_CASE("an estimator failing every replication aborts the run") {
  const PopulationData pop = ts::load_population("mc12.csv");
  // base = xbar - 1000 < 0 always; the fractional exponent never applies
  const auto plan = make_plan(
      4, 200, 5u, {cfg(0.0, 1.0, 0.0, 0.0), cfg(1.0, 1.0, -1000.0, 0.5)});
  CHECK_THROWS_AS(run_monte_carlo(pop, plan), AllSamplesFailed);
  try {
    run_monte_carlo(pop, plan);
  } catch (const AllSamplesFailed& e) {
    CHECK(e.estimator_index() == 1);
  }
}

TEST_CASE("exact enumeration of a four-unit population") {
  PopulationData pop;
  pop.y = {1.0, 2.0, 3.0, 4.0};
  pop.x = {4.0, 3.0, 2.0, 1.0};
  const std::vector<EstimatorConfig> mean_only = {cfg(0.0, 1.0, 0.0, 0.0)};
  const ExactSummary s = enumerate_exact(pop, 2, mean_only);

  CHECK(s.sample_count == 6);
  REQUIRE(s.per_estimator.size() == 1);
  // all six deviations are exact dyadics, so the bias is exactly zero
  CHECK(s.per_estimator[0].exact_bias == 0.0);
  CHECK(s.per_estimator[0].exact_mse == Approx(5.0 / 12.0).epsilon(1e-15));
  // and 5/12 equals f1 * S_y^2 = (1/4) * (5/3)
  CHECK(s.per_estimator[0].exact_mse ==
        Approx(estfam::sampling_fraction_factor(4, 2) * 5.0 / 3.0)
            .epsilon(1e-15));
}

TEST_CASE("exact enumeration reproduces frozen catalog values") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const PopulationMoments m = compute_moments(pop);
  const auto configs = ts::catalog_configs(m);
  const ExactSummary s = enumerate_exact(pop, 4, configs);
  REQUIRE(s.sample_count == 495);
  REQUIRE(s.per_estimator.size() == 14);

  // Recomputed independently from the raw subsets; biases near zero use an
  // absolute margin, everything else a relative one.
  CHECK(std::abs(s.per_estimator[0].exact_bias) <= 1e-12);
  CHECK(s.per_estimator[0].exact_mse ==
        Approx(8.639989577714642).epsilon(1e-10));
  CHECK(s.per_estimator[1].exact_bias ==
        Approx(0.481853438877995).epsilon(1e-10));
  CHECK(s.per_estimator[1].exact_mse ==
        Approx(26.815087015633537).epsilon(1e-10));
  CHECK(s.per_estimator[2].exact_bias ==
        Approx(-0.22500007235013966).epsilon(1e-10));
  CHECK(s.per_estimator[2].exact_mse ==
        Approx(3.9475743379587307).epsilon(1e-10));
  CHECK(s.per_estimator[9].exact_bias ==
        Approx(-0.20526312033816374).epsilon(1e-10));
  CHECK(s.per_estimator[9].exact_mse ==
        Approx(3.8767014565316296).epsilon(1e-10));
  CHECK(s.per_estimator[13].exact_bias ==
        Approx(-0.19354849787435302).epsilon(1e-10));
  CHECK(s.per_estimator[13].exact_mse ==
        Approx(3.878515915369051).epsilon(1e-10));
}

TEST_CASE("enumeration refuses oversized designs") {
  PopulationData pop;
  for (int i = 0; i < 40; ++i) {
    pop.y.push_back(1.0 + i);
    pop.x.push_back(2.0 + i);
  }
  const std::vector<EstimatorConfig> mean_only = {cfg(0.0, 1.0, 0.0, 0.0)};
  CHECK_THROWS_AS(enumerate_exact(pop, 20, mean_only), TooLarge);
}

TEST_CASE("first-order mse is adequate at low coefficients of variation") {
  const PopulationData pop = ts::load_population("lowcv12.csv");
  const PopulationMoments m = compute_moments(pop);
  const double f1 = estfam::sampling_fraction_factor(12, 4);
  const auto named = estfam::catalog(m);
  const auto configs = ts::catalog_configs(m);
  const ExactSummary exact = enumerate_exact(pop, 4, configs);

  for (std::size_t e = 0; e < named.size(); ++e) {
    CAPTURE(named[e].key);
    // every catalog member keeps lambda in (0, 1] on this population
    if (named[e].config.g != 0.0) {
      const double lam = estfam::lambda_factor(
          named[e].config.a, named[e].config.b, m.mean_x);
      CHECK(lam > 0.0);
      CHECK(lam <= 1.0);
    }
    const double analytic = estfam::first_order_mse(named[e].config, m, f1);
    const double ex = exact.per_estimator[e].exact_mse;
    CHECK(std::abs(analytic - ex) / ex <= 0.02);
  }

  // frozen spot checks of the enumeration itself
  CHECK(exact.per_estimator[1].exact_mse ==
        Approx(0.6241768938803158).epsilon(1e-10));
  CHECK(exact.per_estimator[9].exact_mse ==
        Approx(3.468239663187899).epsilon(1e-10));
}

TEST_CASE("a small positive population is near first order at tiny spread") {
  PopulationData pop;
  pop.y = {100.5, 99.2, 101.3, 100.1, 98.9};
  pop.x = {100.0, 101.0, 99.0, 102.0, 98.0};
  const PopulationMoments m = compute_moments(pop);
  REQUIRE(m.cv_x() <= 0.05);

  const std::vector<EstimatorConfig> ratio = {cfg(1.0, 1.0, 0.0, 1.0)};
  const ExactSummary exact = enumerate_exact(pop, 2, ratio);
  const double analytic = estfam::first_order_mse(
      ratio[0], m, estfam::sampling_fraction_factor(5, 2));
  CHECK(std::abs(analytic - exact.per_estimator[0].exact_mse) /
            exact.per_estimator[0].exact_mse <=
        0.25);
}

TEST_CASE("comparisons against theory") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const PopulationMoments m = compute_moments(pop);
  const double f1 = estfam::sampling_fraction_factor(12, 4);

  std::vector<AnalyticSummary> analytic;
  for (const auto& named : estfam::catalog(m))
    analytic.push_back(estfam::named_analysis(named, m, f1));

  // observations identical to the theory pass any positive tolerance
  std::vector<ObservedStat> observed;
  for (const auto& s : analytic) observed.push_back({s.bias, s.mse});
  const CompareTolerances tight{1e-15, 1e-15};
  const DeviationReport equal_report =
      compare_to_theory(observed, analytic, tight);
  CHECK(equal_report.all_pass);
  CHECK(equal_report.ranking_agreement);
  for (const auto& row : equal_report.rows) {
    CHECK(row.bias_abs_dev == 0.0);
    CHECK(row.mse_abs_dev == 0.0);
    CHECK(row.bias_pass);
    CHECK(row.mse_pass);
  }

  // doubling one analytic mse is a 100% relative deviation
  std::vector<AnalyticSummary> doubled = analytic;
  doubled[3].mse *= 2.0;
  const DeviationReport dbl =
      compare_to_theory(observed, doubled, CompareTolerances{1.0, 0.99});
  CHECK(!dbl.all_pass);
  CHECK(!dbl.rows[3].mse_pass);
  CHECK(dbl.rows[3].mse_rel_dev == Approx(1.0).epsilon(1e-12));
  CHECK(compare_to_theory(observed, doubled, CompareTolerances{1.0, 1.01})
            .all_pass);

  // bias deviations are judged on an absolute scale
  std::vector<AnalyticSummary> shifted = analytic;
  shifted[0].bias += 0.05;
  CHECK(compare_to_theory(observed, shifted, CompareTolerances{0.06, 1.0})
            .all_pass);
  CHECK(!compare_to_theory(observed, shifted, CompareTolerances{0.04, 1.0})
             .all_pass);

  // swapping two mse values breaks the ranking agreement
  std::vector<AnalyticSummary> swapped = analytic;
  std::swap(swapped[1].mse, swapped[9].mse);
  CHECK(!compare_to_theory(observed, swapped, CompareTolerances{100.0, 100.0})
             .ranking_agreement);

  observed.pop_back();
  CHECK_THROWS_AS(compare_to_theory(observed, analytic, tight),
                  MismatchedLists);
}

TEST_CASE("observed stats adapters") {
  const PopulationData pop = ts::load_population("mc12.csv");
  const PopulationMoments m = compute_moments(pop);
  const auto configs = ts::catalog_configs(m);

  const ExactSummary exact = enumerate_exact(pop, 4, configs);
  const auto from_exact = observed_stats(exact);
  REQUIRE(from_exact.size() == 14);
  CHECK(from_exact[1].bias == exact.per_estimator[1].exact_bias);
  CHECK(from_exact[1].mse == exact.per_estimator[1].exact_mse);

  const EmpiricalSummary mc =
      run_monte_carlo(pop, make_plan(4, 1000, 2u, configs));
  const auto from_mc = observed_stats(mc);
  REQUIRE(from_mc.size() == 14);
  CHECK(from_mc[2].bias == mc.per_estimator[2].empirical_bias);
  CHECK(from_mc[2].mse == mc.per_estimator[2].empirical_mse);
}

}  // TEST_SUITE
