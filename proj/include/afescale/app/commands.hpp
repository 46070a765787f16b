// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_APP_COMMANDS_HPP
#define AFESCALE_APP_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afescale/app/config.hpp"

namespace afescale::app {

struct CommandOptions {
    bool with_plot = false;
    std::optional<std::uint64_t> seed;       // overrides monte_carlo.seed
    std::optional<std::size_t> samples;      // overrides monte_carlo.samples
};

struct OutputFile {
    std::string name;
    std::string content;
};

struct CommandResult {
    std::string report;              // human-readable summary
    std::vector<OutputFile> files;   // CSV (contract of record) and plots
    bool tolerance_ok = true;        // reproduction gates only
};

CommandResult run_optimize_chain(const AnalysisConfig& config);
CommandResult run_scale(const AnalysisConfig& config);
CommandResult run_qam(const AnalysisConfig& config, const CommandOptions& options);
CommandResult run_coding(const AnalysisConfig& config, const CommandOptions& options);
CommandResult run_fading(const AnalysisConfig& config, const CommandOptions& options);
CommandResult run_interference(const AnalysisConfig& config, const CommandOptions& options);

/// Runs a bundled reproduction target and checks its outputs against the
/// pinned reference values; `tolerance_ok` reflects the gates.
CommandResult run_reproduce(const std::string& target,
                            const std::optional<AnalysisConfig>& config_override,
                            const CommandOptions& options);

/// Writes every output file under out_dir (created if missing).
void write_outputs(const CommandResult& result, const std::string& out_dir);

} // namespace afescale::app

#endif
