#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fluxvar/chain.hpp"
#include "fluxvar/noise.hpp"
#include "fluxvar/simulator.hpp"

namespace fluxvar {

enum class OutputKind { FluxTable, SpeciesTable, Ordering, TimeAverage, GDiagnostic, Lyapunov, Couple };

const char* to_string(OutputKind k);

struct TimeAverageParams {
    double t_total = 5000.0;
    double t_burn = 20.0;
    std::size_t n_batches = 50;
    std::uint64_t path = 0;
};

struct CoupleParams {
    std::map<std::string, double> x0;
    std::map<std::string, double> y0;
    double t_total = 100.0;
    double tolerance = 1e-3;
};

struct LyapunovParams {
    double R = 100.0;
    std::uint64_t points = 100000;
    /// Diffusion used for the white-noise generator; the noise sigma when unset.
    std::optional<double> sigma;
    std::optional<double> delta;
};

struct Expectations {
    std::string ordering = "strictly-decreasing";
};

struct ExperimentConfig {
    std::string name;
    std::string description;
    ChainSpec chain;
    NoiseModel noise;
    SimConfig sim;
    std::map<std::string, double> initial_state;
    std::vector<OutputKind> outputs;
    TimeAverageParams timeavg;
    CoupleParams couple;
    LyapunovParams lyapunov;
    Expectations expect;
};

/// Each parser throws ConfigError naming the offending field with the given
/// dotted prefix, e.g. "sim.dt" or "chain.kinetics[1].params.vmax".
ChainSpec parse_chain(const nlohmann::json& j, const std::string& prefix = "chain");
NoiseModel parse_noise(const nlohmann::json& j, const std::string& prefix = "noise");
SimConfig parse_sim(const nlohmann::json& j, const std::string& prefix = "sim");
ExperimentConfig parse_experiment(const nlohmann::json& j);

ExperimentConfig load_experiment_file(const std::filesystem::path& path);

/// Directory holding the bundled example configs (FLUXVAR_CONFIG_DIR
/// overrides the built-in location).
std::filesystem::path bundled_config_dir();
std::vector<std::string> bundled_config_names();

/// A readable file path, or the name of a bundled config.
std::filesystem::path resolve_config(const std::string& path_or_name);

/// Full initial state for a model from a by-name map; missing species take
/// their deterministic equilibrium value.
std::vector<double> initial_state_vector(const ChainModel& model, const std::map<std::string, double>& values,
                                         const std::string& field = "initial_state");

}  // namespace fluxvar
