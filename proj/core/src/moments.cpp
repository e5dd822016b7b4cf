#include "estfam/moments.hpp"

#include <cmath>
#include <cstddef>

#include "estfam/compensated.hpp"
#include "estfam/errors.hpp"

namespace estfam {

namespace {

double checked_divide(double numerator, double denominator, const char* what) {
  if (denominator == 0.0) throw DegenerateInput(what);
  return numerator / denominator;
}

}  // namespace

DesignSpec DesignSpec::make(std::size_t population_size,
                            std::size_t sample_size) {
  return DesignSpec{population_size, sample_size,
                    sampling_fraction_factor(population_size, sample_size)};
}

double sampling_fraction_factor(std::size_t population_size,
                                std::size_t sample_size) {
  if (sample_size == 0 || sample_size >= population_size)
    throw InvalidDesign("sample size must satisfy 1 <= n < N");
  const auto big_n = static_cast<double>(population_size);
  const auto small_n = static_cast<double>(sample_size);
  return (big_n - small_n) / (small_n * big_n);
}

PopulationMoments compute_moments(const PopulationData& pop) {
  const std::size_t count = pop.size();
  if (count < 2) throw DegenerateInput("population needs at least two units");
  if (pop.y.size() != pop.x.size())
    throw MismatchedLists("y and x columns differ in length");

  const auto big_n = static_cast<double>(count);

  NeumaierSum sum_y;
  NeumaierSum sum_x;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(pop.y[i]) || !std::isfinite(pop.x[i]))
      throw DegenerateInput("population contains a non-finite value");
    sum_y.add(pop.y[i]);
    sum_x.add(pop.x[i]);
  }
  const double mean_y = sum_y.value() / big_n;
  const double mean_x = sum_x.value() / big_n;

  // Second pass over the centered values: variances, covariance, and the
  // third/fourth central moments of x in one sweep.
  NeumaierSum ss_y;
  NeumaierSum ss_x;
  NeumaierSum ss_xy;
  NeumaierSum cube_x;
  NeumaierSum quart_x;
  for (std::size_t i = 0; i < count; ++i) {
    const double dy = pop.y[i] - mean_y;
    const double dx = pop.x[i] - mean_x;
    ss_y.add(dy * dy);
    ss_x.add(dx * dx);
    ss_xy.add(dy * dx);
    cube_x.add(dx * dx * dx);
    quart_x.add((dx * dx) * (dx * dx));
  }

  const double sxx = ss_x.value();
  const double syy = ss_y.value();
  if (sxx == 0.0) throw DegenerateInput("x has zero variance");
  if (syy == 0.0) throw DegenerateInput("y has zero variance");

  PopulationMoments m;
  m.population_size = count;
  m.mean_y = mean_y;
  m.mean_x = mean_x;
  m.var_y = syy / (big_n - 1.0);
  m.var_x = sxx / (big_n - 1.0);
  m.cv2_y = checked_divide(m.var_y, mean_y * mean_y, "mean of y is zero");
  m.cv2_x = checked_divide(m.var_x, mean_x * mean_x, "mean of x is zero");
  // Written so that y == x gives exactly 1 (both factors under the root are
  // the same value, and sqrt(s*s) == |s| in IEEE arithmetic).
  m.rho = ss_xy.value() / std::sqrt(sxx * syy);

  const double m2 = sxx / big_n;
  const double m3 = cube_x.value() / big_n;
  const double m4 = quart_x.value() / big_n;
  m.beta1_x = (m3 * m3) / (m2 * m2 * m2);
  m.beta2_x = m4 / (m2 * m2);
  m.sigma_x = std::sqrt(m.var_x);
  return m;
}

SampleMeans sample_means(const SampleData& sample) {
  if (sample.y.empty()) throw EmptySample("sample has no units");
  if (sample.y.size() != sample.x.size())
    throw MismatchedLists("sample y and x columns differ in length");
  NeumaierSum sum_y;
  NeumaierSum sum_x;
  for (std::size_t i = 0; i < sample.y.size(); ++i) {
    sum_y.add(sample.y[i]);
    sum_x.add(sample.x[i]);
  }
  const auto count = static_cast<double>(sample.y.size());
  return SampleMeans{sum_y.value() / count, sum_x.value() / count};
}

}  // namespace estfam
