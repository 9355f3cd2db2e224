#pragma once

#include <map>
#include <string>
#include <vector>

#include "randproj/bench/report.hpp"

namespace randproj::bench {

/// String-valued settings; list-valued keys take comma-separated values.
using ExperimentConfig = std::map<std::string, std::string>;

/// jl, factor-bench, eigenfaces, kpca, svm-grid, ls-bench
const std::vector<std::string>& experiment_names();

/// Keys accepted by `name`, sorted. Throws std::invalid_argument for unknown names.
std::vector<std::string> experiment_keys(const std::string& name);

/// Runs one experiment. Unknown experiment names and unknown or malformed
/// keys throw std::invalid_argument (every offending key is listed). The
/// report's parameters hold every effective setting, defaults included.
ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config);

}  // namespace randproj::bench
