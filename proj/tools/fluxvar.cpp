#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fluxvar/commands.hpp"

namespace {

void add_config_flags(CLI::App* cmd, fluxvar::CommandOptions& o, std::optional<std::uint64_t>& seed,
                      std::optional<std::uint64_t>& paths) {
    cmd->add_option("--config", o.config, "Config file or bundled example name (example1..example6)")->required();
    cmd->add_option("--seed", seed, "Override sim.seed");
    cmd->add_option("--paths", paths, "Override sim.n_paths");
    cmd->add_option("--threads", o.threads, "Worker cap (default: FLUXVAR_THREADS, then all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic reaction-chain simulator and flux-variance checker"};
    app.require_subcommand(1);

    fluxvar::CommandOptions opts;
    std::optional<std::uint64_t> seed, paths;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t path_index = 0;
    std::optional<double> t_total;

    auto* validate = app.add_subcommand("validate", "Parse a config and check the chain's assumptions");
    add_config_flags(validate, opts, seed, paths);

    auto* run = app.add_subcommand("run", "Run the requested outputs and write tables");
    add_config_flags(run, opts, seed, paths);
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--format", format, "Table format")
        ->check(CLI::IsMember({"csv", "text"}));

    auto* verify = app.add_subcommand("verify", "Run the requested checks; exit 0 iff every verdict is as expected");
    add_config_flags(verify, opts, seed, paths);

    app.add_subcommand("examples", "List the bundled example configs");

    auto* trajectory = app.add_subcommand("trajectory", "Export one simulated path as CSV");
    add_config_flags(trajectory, opts, seed, paths);
    trajectory->add_option("--out", out_dir, "Output directory");
    trajectory->add_option("--path", path_index, "Path index");
    trajectory->add_option("--t-total", t_total, "Override sim.t_total");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fluxvar::kExitError;
    }

    opts.seed = seed;
    opts.paths = paths;
    opts.out_dir = out_dir;
    opts.format = format == "text" ? fluxvar::TableFormat::Text : fluxvar::TableFormat::Csv;

    if (*validate) return fluxvar::cmd_validate(opts, std::cout, std::cerr);
    if (*run) return fluxvar::cmd_run(opts, std::cout, std::cerr);
    if (*verify) return fluxvar::cmd_verify(opts, std::cout, std::cerr);
    if (*trajectory) return fluxvar::cmd_trajectory(opts, path_index, t_total, std::cout, std::cerr);
    return fluxvar::cmd_examples(std::cout, std::cerr);
}
