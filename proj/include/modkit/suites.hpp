#ifndef MODKIT_SUITES_HPP
#define MODKIT_SUITES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modkit/io.hpp"

namespace modkit {

struct SuiteOptions {
  int dim = 0;     // 0: suite default (standard: random d in 1..8, wedge: 4)
  int trials = 0;  // 0: suite default
  std::uint64_t seed = 1;
  std::optional<double> tol;  // replaces every numeric tolerance
  int grid_n = 256;
  double grid_l = 4.0;
  int fermi_dim = 0;  // 0: sweep 1..4
  std::string preset;
};

const std::vector<std::string>& suite_names();  // excludes "all"

// Throws UsageError for unknown commands or out-of-range options.
Report run_suite(const std::string& command, const SuiteOptions& opts);

Json options_to_json(const std::string& command, const SuiteOptions& opts);

}  // namespace modkit

#endif
