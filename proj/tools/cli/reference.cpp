#include "reference.hpp"

#include <array>
#include <cmath>

namespace estfam::cli {

ParameterFile reference_constants() {
  ParameterFile file;
  file.population_size = 20;
  file.sample_size = 8;

  PopulationMoments& m = file.moments;
  m.population_size = 20;
  m.mean_y = 19.55;
  m.mean_x = 18.8;
  m.cv2_y = 0.1262;
  m.cv2_x = 0.1555;
  m.rho = -0.9199;
  m.beta1_x = 0.5473;
  m.beta2_x = 3.0613;
  m.var_y = m.cv2_y * m.mean_y * m.mean_y;
  m.var_x = m.cv2_x * m.mean_x * m.mean_x;
  m.sigma_x = m.mean_x * std::sqrt(m.cv2_x);
  return file;
}

std::span<const ReferenceRow> reference_pre_table() {
  static constexpr std::array<ReferenceRow, 15> kRows{{
      {"t0", 100.0},
      {"t1", 23.39},
      {"t2", 526.45},
      {"t3", 23.91},
      {"t4", 550.05},
      {"t5", 534.49},
      {"t6", 582.17},
      {"t7", 591.37},
      {"t8", 436.19},
      {"t9", 633.64},
      {"t10", 22.17},
      {"t11", 465.25},
      {"t12", 27.21},
      {"t13", 644.17},
      {"t_opt", 650.26},
  }};
  return kRows;
}

}  // namespace estfam::cli
