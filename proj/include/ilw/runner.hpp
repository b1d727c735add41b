#ifndef ILW_RUNNER_HPP
#define ILW_RUNNER_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "ilw/config.hpp"

namespace ilw {

// Exit codes shared by the library entry points and the executable.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_abort = 3;
inline constexpr int exit_io_error = 4;

struct RunOutcome {
    int exit_code = exit_ok;
    std::filesystem::path run_dir;
    std::vector<std::string> messages;
};

// Each run writes into <output.directory>/run-<config hash>: the canonical
// config echo, field checkpoints with their index, scalar CSVs, and an
// atomically written manifest. A manifest with "completed": false marks a
// run that aborted after partial output.
RunOutcome run_simulate(const ExperimentConfig& config);
RunOutcome run_soliton(const ExperimentConfig& config);
RunOutcome run_limits(const ExperimentConfig& config);
RunOutcome run_inequalities(const ExperimentConfig& config);

// Recompute the diagnostics of a persisted simulate run from its stored
// checkpoints; emits diagnose.csv, byte-identical to diagnostics.csv.
RunOutcome run_diagnose(const ExperimentConfig& config);

// Full command-line interface (subcommands simulate | soliton | limits |
// check-inequalities | diagnose; any config key as --section.key=value).
int cli_main(int argc, const char* const* argv);

}  // namespace ilw

#endif
