#include "estfam/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "estfam/errors.hpp"

namespace estfam {

namespace {

// Single shared association for every f1*mean_y^2-scaled quantity so
// identities such as PRE(t0) == 100 hold exactly, not just to rounding.
double design_scaled(const PopulationMoments& m, double f1, double bracket) {
  return ((f1 * m.mean_y) * m.mean_y) * bracket;
}

}  // namespace

double unit_variance(const PopulationMoments& m, double f1) {
  return design_scaled(m, f1, m.cv2_y);
}

double first_order_bias(const EstimatorConfig& cfg, const PopulationMoments& m,
                        double f1) {
  const double lam = lambda_factor(cfg.a, cfg.b, m.mean_x);
  const double u = cfg.alpha * lam;
  const double bracket = 0.5 * cfg.g * (cfg.g + 1.0) * u * u * m.cv2_x -
                         u * cfg.g * m.rho * m.cv_y() * m.cv_x();
  return (f1 * m.mean_y) * bracket;
}

double first_order_mse(const EstimatorConfig& cfg, const PopulationMoments& m,
                       double f1) {
  const double lam = lambda_factor(cfg.a, cfg.b, m.mean_x);
  const double u = cfg.alpha * lam * cfg.g;
  const double bracket =
      m.cv2_y + u * u * m.cv2_x - 2.0 * u * m.rho * m.cv_y() * m.cv_x();
  return design_scaled(m, f1, bracket);
}

double optimal_alpha(const ConfigShape& shape, const PopulationMoments& m) {
  const double lam = lambda_factor(shape.a, shape.b, m.mean_x);
  if (lam * shape.g == 0.0) {
    throw NoInteriorOptimum(
        "first-order MSE is constant in alpha when lambda*g == 0");
  }
  const double k = m.rho * m.cv_y() / m.cv_x();
  return k / (lam * shape.g);
}

double minimum_mse(const PopulationMoments& m, double f1) {
  return design_scaled(m, f1, m.cv2_y * (1.0 - m.rho * m.rho));
}

double percent_relative_efficiency(double mse, const PopulationMoments& m,
                                   double f1) {
  if (!(mse > 0.0)) throw ZeroMse("PRE needs a strictly positive MSE");
  return 100.0 * (unit_variance(m, f1) / mse);
}

AnalyticSummary summarize(const EstimatorConfig& cfg,
                          const PopulationMoments& m, double f1) {
  AnalyticSummary s;
  s.config = cfg;
  s.lambda = lambda_factor(cfg.a, cfg.b, m.mean_x);
  s.bias = first_order_bias(cfg, m, f1);
  s.mse = first_order_mse(cfg, m, f1);
  s.pre = percent_relative_efficiency(s.mse, m, f1);
  s.gap_to_min = std::max(s.mse - minimum_mse(m, f1), 0.0);
  return s;
}

AnalyticSummary named_analysis(const NamedEstimator& named,
                               const PopulationMoments& m, double f1) {
  return summarize(named.config, m, f1);
}

double efficiency_gap(const NamedEstimator& named, const PopulationMoments& m,
                      double f1) {
  return std::max(first_order_mse(named.config, m, f1) - minimum_mse(m, f1),
                  0.0);
}

double normalized_efficiency_gap(const NamedEstimator& named,
                                 const PopulationMoments& m, double f1) {
  const double lam = lambda_factor(named.config.a, named.config.b, m.mean_x);
  const double term = named.config.alpha * lam * named.config.g * m.cv_x() -
                      m.rho * m.cv_y();
  return term * term;
}

}  // namespace estfam
