#pragma once

#include <ostream>

#include "tnlab/app/config.hpp"

namespace tnlab::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
};

// Each command writes its data files and manifest.json under config.out and
// reports progress on `log`. Errors propagate as exceptions.

/// eigenvalues.csv, curve.csv, distances.csv (per N when several are given).
void cmd_spectrum(const RunConfig& config, std::ostream& log);
/// aggregate.json and trials/ with one JSON report and eigenvalue CSV per trial.
void cmd_weyl(const RunConfig& config, std::ostream& log);
/// residuals.jsonl, one record per (N, z).
void cmd_grushin_verify(const RunConfig& config, std::ostream& log);
/// potential.csv with empirical and limiting log potentials.
void cmd_potential(const RunConfig& config, std::ostream& log);

/// Full command line: parses, dispatches and maps failures to exit codes
/// (2 for configuration errors, 3 for solver errors).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnlab::app
