#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "estfam/errors.hpp"
#include "estfam/moments.hpp"

namespace estfam::cli {

/// Syntax error in an input file. line() is 1-based; 0 marks file-level
/// problems (unreadable file, missing key).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : what + " at line " + std::to_string(line)),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A population CSV with fewer than two data rows.
class TooFewRows : public Error {
 public:
  using Error::Error;
};

/// Summary-level input: design sizes plus population constants, as an
/// alternative to unit-level data.
struct ParameterFile {
  std::size_t population_size = 0;
  std::size_t sample_size = 0;
  PopulationMoments moments;
};

/// Full-token double parse (leading/trailing whitespace trimmed);
/// nullopt on anything else.
std::optional<double> parse_strict_double(const std::string& token);

/// Read a unit-level population: header exactly `y,x`, one decimal pair
/// per row, at least two rows, LF or CRLF endings.
PopulationData read_population_csv(const std::string& path);

/// Read a key=value parameter file (# starts a comment). Required keys:
/// N, n, mean_y, mean_x, cv2_y, cv2_x, rho, beta1_x, beta2_x. Optional:
/// sigma_x, derived as |mean_x|*sqrt(cv2_x) when absent.
ParameterFile read_parameter_file(const std::string& path);

}  // namespace estfam::cli
