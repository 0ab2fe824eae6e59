#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaussprec/figures.hpp"
#include "gaussprec/scenario.hpp"

namespace gaussprec {

/// Process exit codes of the front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and anything unexpected
  kExitConfig = 2,
  kExitDegenerate = 3,
  kExitOracleMismatch = 4,
};

/// Bounds at the scenario's fixed point (any sweep is ignored), one
/// "name = value" line each. Nothing is written if evaluation fails.
void cmd_bounds(const ScenarioConfig& cfg, std::ostream& out);

/// One row per sweep point (or a single row without a sweep); the first
/// column is the swept quantity, then the configured outputs.
CsvTable sweep_table(const ScenarioConfig& cfg);
void cmd_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out);

/// Writes <out_dir>/figNx.csv for every panel and returns the paths.
std::vector<std::filesystem::path> cmd_figure(int figure, const std::filesystem::path& out_dir);

/// Compares Fock-space B_S, B_R and R with the phase-space pipeline at each
/// scenario point and prints a table. Returns kExitOk or kExitOracleMismatch.
int cmd_oracle_check(const ScenarioConfig& cfg, int cutoff, double rel_tol, std::ostream& out);

/// Full command line (args[0] is the program name). Maps failures to
/// ExitCode values and reports them on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussprec
