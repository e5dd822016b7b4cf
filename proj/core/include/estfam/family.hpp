#pragma once

#include <string>
#include <vector>

#include "estfam/moments.hpp"

namespace estfam {

/// Relative guard applied to the lambda denominator and to the bracket
/// base before dividing or exponentiating.
inline constexpr double kSingularGuard = 1e-12;

/// Parameters of one member of the estimator family
///
///   t = ybar * [ (a*Xbar + b) / (alpha*(a*xbar + b) + (1-alpha)*(a*Xbar + b)) ]^g
///
/// where ybar, xbar are sample means and Xbar is the known population mean
/// of the auxiliary variable. a and b are real numbers or known population
/// constants of x (sigma_x, C_x, beta1, beta2, rho).
struct EstimatorConfig {
  double alpha = 0.0;
  double a = 1.0;
  double b = 0.0;
  double g = 0.0;
  std::string name;
};

/// A catalog entry: short key plus parameters resolved against one
/// population's constants.
struct NamedEstimator {
  std::string key;
  EstimatorConfig config;
  std::string description;
};

/// lambda = a*mean_x / (a*mean_x + b). Throws SingularLambda when the
/// denominator vanishes under the kSingularGuard relative test.
double lambda_factor(double a, double b, double mean_x);

/// Evaluate one family member. Returns sample_mean_y exactly when g == 0
/// or alpha == 0, and exactly when sample_mean_x == pop_mean_x (the base
/// is formed as (a*Xbar + b) + alpha*a*(xbar - Xbar) so the bracket
/// collapses to 1 with no rounding). Integer exponents with |g| <= 8 use
/// repeated multiplication.
///
/// Throws SingularLambda when a*pop_mean_x + b vanishes, InvalidBase when
/// the base is zero for integer g != 0 or non-positive for fractional g.
double evaluate(const EstimatorConfig& cfg, double sample_mean_y,
                double sample_mean_x, double pop_mean_x);

/// The named catalog t0..t13 resolved against m. t0 is the sample mean;
/// its conventional table row has a = b = 0, which the catalog stores as
/// (alpha=0, a=1, b=0, g=0) to keep lambda well defined.
std::vector<NamedEstimator> catalog(const PopulationMoments& m);

/// True iff |alpha*lambda| * e1_bound < 1, the expandability condition
/// behind the first-order bias and MSE approximations. e1_bound is a
/// caller-supplied bound on the relative deviation |xbar/Xbar - 1|, e.g.
/// 3*sqrt(f1*C_x^2) or the maximum over all samples.
bool expansion_validity(const EstimatorConfig& cfg, const PopulationMoments& m,
                        double e1_bound);

}  // namespace estfam
