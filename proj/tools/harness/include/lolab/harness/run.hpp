#pragma once

#include "lolab/harness/config.hpp"

#include <iosfwd>

namespace lolab::harness {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_validation = 2;
inline constexpr int exit_capacity = 3;
inline constexpr int exit_output = 4;

inline constexpr const char* tool_version = "0.1.0";

/// Runs the experiment and writes report.csv, summary.json and (for commands
/// that produce a curve) plot.dat into config.output. Returns the exit status;
/// diagnostics go to `err`.
int run(const ExperimentConfig& config, std::ostream& err);

} // namespace lolab::harness
