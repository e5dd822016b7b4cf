#include "estfam/family.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "estfam/errors.hpp"

namespace estfam {

namespace {

bool is_small_integer(double g) {
  return std::nearbyint(g) == g && std::fabs(g) <= 8.0;
}

// ratio^k by repeated multiplication for integer |k| <= 8; keeps 1.0^k
// exactly 1.0 so the bracket collapses without rounding.
double integer_power(double ratio, long k) {
  const long reps = std::labs(k);
  double p = 1.0;
  for (long i = 0; i < reps; ++i) p *= ratio;
  return k < 0 ? 1.0 / p : p;
}

}  // namespace

double lambda_factor(double a, double b, double mean_x) {
  const double numerator = a * mean_x;
  const double denominator = numerator + b;
  if (denominator == 0.0 ||
      std::fabs(denominator) < kSingularGuard * std::fabs(numerator)) {
    throw SingularLambda("lambda denominator a*mean_x + b vanishes");
  }
  return numerator / denominator;
}

double evaluate(const EstimatorConfig& cfg, double sample_mean_y,
                double sample_mean_x, double pop_mean_x) {
  if (cfg.g == 0.0) return sample_mean_y;

  const double numerator = cfg.a * pop_mean_x + cfg.b;
  if (numerator == 0.0 ||
      std::fabs(numerator) <
          kSingularGuard * std::fabs(cfg.a * pop_mean_x)) {
    throw SingularLambda("a*mean_x + b vanishes; bracket undefined");
  }
  if (cfg.alpha == 0.0) return sample_mean_y;

  // base = alpha*(a*xbar + b) + (1-alpha)*(a*Xbar + b), regrouped so that
  // xbar == Xbar gives base == numerator with no rounding.
  const double shift = cfg.alpha * cfg.a * (sample_mean_x - pop_mean_x);
  const double base = numerator + shift;
  const double scale = std::fabs(numerator) + std::fabs(shift);

  if (is_small_integer(cfg.g)) {
    if (base == 0.0 || std::fabs(base) < kSingularGuard * scale) {
      throw InvalidBase("bracket base is zero for integer exponent");
    }
    return sample_mean_y *
           integer_power(numerator / base, static_cast<long>(cfg.g));
  }

  const double ratio = numerator / base;
  if (base <= 0.0 || std::fabs(base) < kSingularGuard * scale ||
      ratio <= 0.0) {
    throw InvalidBase("bracket base non-positive for fractional exponent");
  }
  return sample_mean_y * std::pow(ratio, cfg.g);
}

std::vector<NamedEstimator> catalog(const PopulationMoments& m) {
  const double cx = m.cv_x();
  auto entry = [](std::string key, double alpha, double a, double b, double g,
                  std::string description) {
    EstimatorConfig cfg{alpha, a, b, g, key};
    return NamedEstimator{std::move(key), std::move(cfg),
                          std::move(description)};
  };
  return {
      entry("t0", 0.0, 1.0, 0.0, 0.0,
            "sample mean (conventional table row a = b = 0, stored with "
            "a = 1, b = 0 to keep lambda well defined)"),
      entry("t1", 1.0, 1.0, 0.0, 1.0, "classical ratio"),
      entry("t2", 1.0, 1.0, 0.0, -1.0, "classical product"),
      entry("t3", 1.0, 1.0, cx, 1.0, "ratio, x shifted by C_x"),
      entry("t4", 1.0, 1.0, cx, -1.0, "product, x shifted by C_x"),
      entry("t5", 1.0, m.beta2_x, cx, -1.0,
            "product, x scaled by beta2 and shifted by C_x"),
      entry("t6", 1.0, cx, m.beta2_x, -1.0,
            "product, x scaled by C_x and shifted by beta2"),
      entry("t7", 1.0, 1.0, m.sigma_x, -1.0, "product, x shifted by sigma_x"),
      entry("t8", 1.0, m.beta1_x, m.sigma_x, -1.0,
            "product, x scaled by beta1 and shifted by sigma_x"),
      entry("t9", 1.0, m.beta2_x, m.sigma_x, -1.0,
            "product, x scaled by beta2 and shifted by sigma_x"),
      entry("t10", 1.0, 1.0, m.rho, 1.0, "ratio, x shifted by rho"),
      entry("t11", 1.0, 1.0, m.rho, -1.0, "product, x shifted by rho"),
      entry("t12", 1.0, 1.0, m.beta2_x, 1.0, "ratio, x shifted by beta2"),
      entry("t13", 1.0, 1.0, m.beta2_x, -1.0, "product, x shifted by beta2"),
  };
}

bool expansion_validity(const EstimatorConfig& cfg, const PopulationMoments& m,
                        double e1_bound) {
  const double lam = lambda_factor(cfg.a, cfg.b, m.mean_x);
  return std::fabs(cfg.alpha * lam) * e1_bound < 1.0;
}

}  // namespace estfam
