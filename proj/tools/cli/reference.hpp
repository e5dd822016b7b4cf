#pragma once

#include <span>

#include "io.hpp"

namespace estfam::cli {

/// Published bivariate-population summary (N=20, n=8) embedded for the
/// reproduction command. sigma_x is not part of the published list; it is
/// derived as mean_x * sqrt(cv2_x).
ParameterFile reference_constants();

/// One published percent-relative-efficiency value.
struct ReferenceRow {
  const char* key;
  double pre;
};

/// The published PRE table: t0..t13 plus the optimal family member t_opt.
std::span<const ReferenceRow> reference_pre_table();

}  // namespace estfam::cli
