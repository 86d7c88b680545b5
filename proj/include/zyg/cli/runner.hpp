#pragma once

#include <string>
#include <vector>

#include "zyg/cli/config.hpp"
#include "zyg/cli/report.hpp"

namespace zyg::cli {

enum class Command { KernelsCheck, NormsBmo, NormsEquivalence, AwfVerify, OffEstimate, CompactProbe, MultiplierAudit };

/// "kernels-check", "norms-bmo", ... (also the output file stem).
std::string to_string(Command c);
std::vector<Command> all_commands();

struct RunResult {
  ReportBundle bundle;
  std::vector<CsvTable> tables;
  std::vector<std::string> invariant_failures;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCalibration = 2;
inline constexpr int kExitInvariant = 3;

/// Runs one subcommand. Throws ConfigError (bad names/values), CalibrationFailure
/// or WitnessFailure; invariant-suite failures are collected, not thrown.
RunResult run(const ExperimentConfig& config, Command command, bool stamp = false);

/// Writes <out>/<command>.json and <out>/<table>.csv.
void write_outputs(const RunResult& result, const std::string& out_dir);

}  // namespace zyg::cli
