#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "fluxvar/config.hpp"
#include "fluxvar/report.hpp"

namespace fluxvar {

/// Exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitError = 2;

struct CommandOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
    std::filesystem::path out_dir = ".";
    TableFormat format = TableFormat::Csv;
    /// Ensemble worker cap; 0 defers to FLUXVAR_THREADS, then OpenMP.
    int threads = 0;
};

/// Resolves, parses and applies the --seed/--paths overrides.
ExperimentConfig load_experiment(const CommandOptions& options);

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_examples(std::ostream& out, std::ostream& err);

/// Writes one path as <out_dir>/<name>_path<index>.csv.
int cmd_trajectory(const CommandOptions& options, std::uint64_t path_index, std::optional<double> t_total,
                   std::ostream& out, std::ostream& err);

}  // namespace fluxvar
