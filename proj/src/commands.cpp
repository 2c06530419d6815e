#include "fluxvar/commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "fluxvar/error.hpp"
#include "fluxvar/experiment.hpp"

namespace fluxvar {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
    } catch (const SimulationError& e) {
        err << "simulation failed: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitError;
}

int effective_threads(const CommandOptions& o) { return o.threads > 0 ? o.threads : threads_from_environment(); }

std::filesystem::path output_path(const CommandOptions& o, const ExperimentConfig& c, const std::string& suffix,
                                  const std::string& ext) {
    return o.out_dir / (c.name + "_" + suffix + ext);
}

template <class Writer>
void write_file(const std::filesystem::path& path, std::ostream& out, Writer&& writer) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    writer(f);
    f.flush();
    if (!f) throw Error("failed writing '" + path.string() + "'");
    out << "wrote " << path.string() << '\n';
}

}  // namespace

ExperimentConfig load_experiment(const CommandOptions& options) {
    if (options.config.empty()) throw ConfigError("config", "no config given");
    ExperimentConfig c = load_experiment_file(resolve_config(options.config));
    if (options.seed) c.sim.master_seed = *options.seed;
    if (options.paths) {
        if (*options.paths < 2) throw ConfigError("sim.n_paths", "an ensemble needs at least 2 paths");
        c.sim.n_paths = *options.paths;
    }
    c.sim.validate();
    return c;
}

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig c = load_experiment(options);
        const ValidationReport report = validate_chain(c.chain);
        out << c.name << ": " << c.chain.complexes.size() << " complexes, input rate "
            << format_number(c.chain.input_rate) << '\n';
        for (const auto& issue : report.issues) {
            out << "  " << (issue.severity == Severity::Violation ? "violation" : "warning") << " ["
                << to_string(issue.assumption) << "]";
            if (issue.reaction) out << " F" << *issue.reaction + 1;
            out << ": " << issue.message << '\n';
        }
        if (!report.simulatable) {
            err << "config error: chain: not simulatable\n";
            return kExitError;
        }
        const ChainModel model(c.chain);
        const auto x0 = initial_state_vector(model, c.initial_state);
        const EquilibriumPoint eq = solve_equilibrium(model, x0);
        out << "  equilibrium:";
        for (std::size_t s = 0; s < model.species_count(); ++s)
            out << ' ' << model.species_names()[s] << '=' << format_number(eq.x[s]);
        out << " (residual " << format_number(eq.max_residual) << ")\n";
        out << "ok\n";
        return kExitOk;
    });
}

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig c = load_experiment(options);
        const ExperimentResults r = run_experiment(c, effective_threads(options));
        std::filesystem::create_directories(options.out_dir);
        const bool csv = options.format == TableFormat::Csv;
        const std::string ext = csv ? ".csv" : ".txt";
        const TableFormat fmt = options.format;

        if (r.fluxes)
            write_file(output_path(options, c, "flux", ext), out,
                       [&](std::ostream& os) { write_quantities(os, flux_rows(*r.fluxes), fmt); });
        if (r.ensemble && std::find(c.outputs.begin(), c.outputs.end(), OutputKind::SpeciesTable) != c.outputs.end())
            write_file(output_path(options, c, "species", ext), out,
                       [&](std::ostream& os) { write_quantities(os, species_table(*r.ensemble), fmt); });
        if (r.variance_ordering)
            write_file(output_path(options, c, "ordering", ext), out, [&](std::ostream& os) {
                write_ordering(os, *r.variance_ordering, fmt);
                if (!csv) os << '\n';
                write_ordering(os, *r.cv_ordering, csv ? TableFormat::Csv : TableFormat::Text);
            });
        if (r.timeavg)
            write_file(output_path(options, c, "timeavg", ext), out,
                       [&](std::ostream& os) { write_timeavg(os, *r.timeavg, fmt); });
        if (r.gdiag)
            write_file(output_path(options, c, "gdiag", ext), out,
                       [&](std::ostream& os) { write_gdiag(os, *r.gdiag, fmt); });
        if (r.lyapunov && r.lyapunov->spec)
            write_file(output_path(options, c, "lyapunov", ".json"), out,
                       [&](std::ostream& os) { write_lyapunov_json(os, *r.lyapunov->spec); });
        if (r.couple)
            write_file(output_path(options, c, "couple", ".csv"), out,
                       [&](std::ostream& os) { write_coupling_csv(os, r.couple->result); });
        if (r.lyapunov && !r.lyapunov->spec) {
            err << "lyapunov: " << r.lyapunov->error << '\n';
            return kExitVerdict;
        }
        return kExitOk;
    });
}

int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ExperimentConfig c = load_experiment(options);
        const ExperimentResults r = run_experiment(c, effective_threads(options));
        const auto lines = verdicts(c, r);
        bool all = true;
        for (const auto& l : lines) {
            out << (l.pass ? "PASS " : "FAIL ") << c.name << ": " << l.name;
            if (!l.detail.empty()) out << " -- " << l.detail;
            out << '\n';
            all = all && l.pass;
        }
        out << c.name << ": " << (all ? "all checks passed" : "some checks failed") << '\n';
        return all ? kExitOk : kExitVerdict;
    });
}

int cmd_examples(std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto names = bundled_config_names();
        if (names.empty()) {
            err << "no bundled configs found in " << bundled_config_dir().string() << '\n';
            return kExitError;
        }
        for (const auto& n : names) {
            const ExperimentConfig c = load_experiment_file(bundled_config_dir() / (n + ".json"));
            out << n;
            if (!c.description.empty()) out << "  " << c.description;
            out << '\n';
        }
        return kExitOk;
    });
}

int cmd_trajectory(const CommandOptions& options, std::uint64_t path_index, std::optional<double> t_total,
                   std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ExperimentConfig c = load_experiment(options);
        if (t_total) {
            c.sim.t_total = *t_total;
            if (c.sim.t_burn >= c.sim.t_total) c.sim.t_burn = 0.0;
            c.sim.validate();
        }
        const ChainModel model(c.chain);
        const auto x0 = initial_state_vector(model, c.initial_state);
        const Trajectory traj = simulate_path(model, c.noise, c.sim, path_index, x0);
        std::filesystem::create_directories(options.out_dir);
        write_file(output_path(options, c, "path" + std::to_string(path_index), ".csv"), out,
                   [&](std::ostream& os) { write_trajectory_csv(os, traj); });
        return kExitOk;
    });
}

}  // namespace fluxvar
