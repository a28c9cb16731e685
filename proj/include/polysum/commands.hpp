#pragma once

#include <iosfwd>

#include "polysum/config.hpp"

namespace polysum {

// Process exit codes shared by the CLI and the command implementations.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNoConvergence = 3;

// Each command writes its files under config.output_dir and logs progress to
// `log`; the return value is the process exit code.

// Per-trial CSVs of component roots and sum zeros plus a JSON manifest.
int cmd_simulate(const ExperimentConfig& config, std::ostream& log);

// Limit-measure density grid and weak-integral table for the configured bumps.
int cmd_predict(const ExperimentConfig& config, std::ostream& log);

// Empirical linear statistics vs predicted values; fails on any |z| > 3.
int cmd_compare(const ExperimentConfig& config, std::ostream& log);

// Deterministic exact-formula and containment checks.
int cmd_verify(const ExperimentConfig& config, std::ostream& log);

// Ratio-event, potential-gap and concentration diagnostics across the n list.
int cmd_diagnose(const ExperimentConfig& config, std::ostream& log);

}  // namespace polysum
