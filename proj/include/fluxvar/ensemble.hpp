#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxvar/chain.hpp"
#include "fluxvar/noise.hpp"
#include "fluxvar/simulator.hpp"

namespace fluxvar {

/// Moments of one quantity pooled over paths and post-burn recording times.
struct QuantityStats {
    std::string name;
    std::uint64_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double cv = 0.0;
    double se_mean = 0.0;
    double se_var = 0.0;
    double se_cv = 0.0;
    /// Per-batch moments; batches are contiguous path-index ranges.
    std::vector<double> batch_mean;
    std::vector<double> batch_variance;
    /// Stationarity sanity check: pooled variance over each half of the window.
    double variance_first_half = 0.0;
    double variance_second_half = 0.0;
};

struct EnsembleResult {
    double input_rate = 0.0;
    std::vector<QuantityStats> species;
    std::vector<QuantityStats> fluxes;
    /// I + xi(t) for process-driven chains; absent for white noise.
    std::optional<QuantityStats> input;
    std::uint64_t n_paths = 0;
    std::uint64_t samples_per_path = 0;
    std::size_t n_batches = 0;
    std::uint64_t clamp_events = 0;
    std::uint64_t total_steps = 0;
};

struct EnsembleOptions {
    std::size_t n_batches = 20;
    /// Worker count for the parallel kernel; 0 keeps the OpenMP default.
    int threads = 0;
    /// Shared initial state; the deterministic equilibrium when empty.
    std::vector<double> initial_state;
};

/// Monte Carlo ensemble, paths distributed over OpenMP workers. Per-path
/// moments are reduced in path-index order, so the result does not depend on
/// the worker count. A failing path aborts with its index (lowest index wins).
EnsembleResult run_ensemble(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                            const EnsembleOptions& options = {});

/// Serial reference for run_ensemble; bit-identical output.
EnsembleResult run_ensemble_serial(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                                   const EnsembleOptions& options = {});

/// Worker cap from FLUXVAR_THREADS, 0 when unset or invalid.
int threads_from_environment();

}  // namespace fluxvar
