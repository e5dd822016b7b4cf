#pragma once

#include "estfam/family.hpp"
#include "estfam/moments.hpp"

namespace estfam {

/// First-order bias/MSE summary of one family member against one
/// population.
struct AnalyticSummary {
  EstimatorConfig config;
  double lambda = 0.0;
  double bias = 0.0;        ///< units of mean_y
  double mse = 0.0;         ///< units of mean_y^2
  double pre = 0.0;         ///< percent relative efficiency vs the sample mean
  double gap_to_min = 0.0;  ///< mse - minimum_mse, >= 0 up to rounding
};

/// (a, b, g) with alpha left free, for the optimal-alpha solver.
struct ConfigShape {
  double a = 1.0;
  double b = 0.0;
  double g = 1.0;
};

/// V(t0) = f1 * mean_y^2 * C_y^2, the variance of the sample mean.
double unit_variance(const PopulationMoments& m, double f1);

/// First-order bias
///   f1 * mean_y * [ g(g+1)/2 * alpha^2 lambda^2 C_x^2
///                   - alpha lambda g rho C_y C_x ].
double first_order_bias(const EstimatorConfig& cfg, const PopulationMoments& m,
                        double f1);

/// First-order MSE
///   f1 * mean_y^2 * [ C_y^2 + alpha^2 lambda^2 g^2 C_x^2
///                     - 2 alpha lambda g rho C_y C_x ].
/// Always >= minimum_mse up to rounding.
double first_order_mse(const EstimatorConfig& cfg, const PopulationMoments& m,
                       double f1);

/// The alpha minimizing the first-order MSE: K/(lambda g) with
/// K = rho C_y / C_x. Throws NoInteriorOptimum when lambda*g == 0.
double optimal_alpha(const ConfigShape& shape, const PopulationMoments& m);

/// min MSE over alpha: f1 * mean_y^2 * C_y^2 (1 - rho^2). Shape-independent;
/// equals the first-order variance of the linear regression estimator.
double minimum_mse(const PopulationMoments& m, double f1);

/// 100 * V(t0) / mse. Throws ZeroMse unless mse > 0.
double percent_relative_efficiency(double mse, const PopulationMoments& m,
                                   double f1);

/// Full first-order summary for an arbitrary config.
AnalyticSummary summarize(const EstimatorConfig& cfg,
                          const PopulationMoments& m, double f1);

/// Full first-order summary for a catalog entry.
AnalyticSummary named_analysis(const NamedEstimator& named,
                               const PopulationMoments& m, double f1);

/// MSE(named) - minimum_mse, always >= 0 up to rounding. Equal to
/// f1 * mean_y^2 * (alpha lambda g C_x - rho C_y)^2.
double efficiency_gap(const NamedEstimator& named, const PopulationMoments& m,
                      double f1);

/// The gap with the f1 * mean_y^2 factor divided out, i.e. the squared
/// term (alpha lambda g C_x - rho C_y)^2 itself.
double normalized_efficiency_gap(const NamedEstimator& named,
                                 const PopulationMoments& m, double f1);

}  // namespace estfam
