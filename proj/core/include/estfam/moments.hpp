#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace estfam {

/// A finite population of paired observations: y is the study variable
/// whose mean is being estimated, x the auxiliary variable whose
/// population-level constants are assumed known.
struct PopulationData {
  std::vector<double> y;
  std::vector<double> x;

  std::size_t size() const noexcept { return y.size(); }
};

/// SRSWOR design: population size N, sample size n, and the factor
/// f1 = (N - n)/(n N) that scales every first-order variance.
struct DesignSpec {
  std::size_t population_size = 0;
  std::size_t sample_size = 0;
  double f1 = 0.0;

  static DesignSpec make(std::size_t population_size, std::size_t sample_size);
};

/// Population constants. Variances S^2 (and the covariance behind rho) use
/// divisor N-1 so that E(e^2) = f1*C^2 holds exactly under SRSWOR; the
/// central moments behind beta1/beta2 use divisor N, with
/// beta1 = m3^2/m2^3 and beta2 = m4/m2^2.
struct PopulationMoments {
  std::size_t population_size = 0;
  double mean_y = 0.0;
  double mean_x = 0.0;
  double var_y = 0.0;    ///< S_y^2
  double var_x = 0.0;    ///< S_x^2
  double cv2_y = 0.0;    ///< C_y^2 = S_y^2 / mean_y^2
  double cv2_x = 0.0;    ///< C_x^2 = S_x^2 / mean_x^2
  double rho = 0.0;      ///< correlation of (y, x)
  double beta1_x = 0.0;  ///< squared skewness of x
  double beta2_x = 0.0;  ///< kurtosis of x (normal gives 3)
  double sigma_x = 0.0;  ///< sqrt(S_x^2)

  double cv_y() const noexcept { return std::sqrt(cv2_y); }
  double cv_x() const noexcept { return std::sqrt(cv2_x); }
};

/// One SRSWOR sample: the drawn values plus the population indices they
/// came from.
struct SampleData {
  std::vector<double> y;
  std::vector<double> x;
  std::vector<std::size_t> indices;

  std::size_t size() const noexcept { return y.size(); }
};

struct SampleMeans {
  double mean_y = 0.0;
  double mean_x = 0.0;
};

/// Compute every population constant in one pass pair. Throws
/// DegenerateInput when a constant is undefined: mismatched lengths,
/// N < 2, non-finite values, zero mean (CVs), or zero variance (rho,
/// beta1, beta2).
PopulationMoments compute_moments(const PopulationData& pop);

/// f1 = (N - n)/(n N). Throws InvalidDesign unless 1 <= n < N.
double sampling_fraction_factor(std::size_t population_size,
                                std::size_t sample_size);

/// Arithmetic means of the sample's y and x. Throws EmptySample.
SampleMeans sample_means(const SampleData& sample);

}  // namespace estfam
