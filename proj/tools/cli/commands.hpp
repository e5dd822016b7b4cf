#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "report.hpp"

namespace estfam::cli {

/// Process exit codes. Usage, data, and tolerance failures are distinct so
/// scripts can tell them apart.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitTolerance = 4;

struct MomentsOptions {
  std::string input;
  std::optional<std::size_t> sample_size;
  Format format = Format::kText;
};

struct AnalyzeOptions {
  std::string input;   ///< unit-level CSV; mutually exclusive with params
  std::string params;  ///< summary-level parameter file
  std::optional<std::size_t> sample_size;  ///< overrides the params file's n
  std::string estimators = "catalog";
  Format format = Format::kText;
};

struct SimulateOptions {
  std::string input;  ///< simulation needs unit-level data
  std::size_t sample_size = 0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::string estimators = "catalog";
  Format format = Format::kText;
  unsigned threads = 0;  ///< worker threads; 0 = hardware concurrency
};

struct ReproduceOptions {
  Format format = Format::kText;
};

int cmd_moments(const MomentsOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_analyze(const AnalyzeOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_reproduce_table51(const ReproduceOptions& options, std::ostream& out,
                          std::ostream& err);

}  // namespace estfam::cli
