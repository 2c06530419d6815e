#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxvar/analysis.hpp"
#include "fluxvar/config.hpp"
#include "fluxvar/ensemble.hpp"
#include "fluxvar/lyapunov.hpp"

namespace fluxvar {

struct CoupleOutcome {
    CouplingResult result;
    double tolerance = 0.0;
    bool pass = false;
};

struct LyapunovOutcome {
    std::optional<LyapunovSpec> spec;
    std::string error;  // set when construction or certification failed
};

/// Everything an experiment's requested outputs produce.
struct ExperimentResults {
    std::optional<EnsembleResult> ensemble;
    std::optional<FluxStats> fluxes;
    std::optional<OrderingReport> variance_ordering;
    std::optional<OrderingReport> cv_ordering;
    std::vector<MeanCheck> mean_checks;
    std::optional<TimeAverageReport> timeavg;
    std::optional<GDiagnostic> gdiag;
    std::optional<LyapunovOutcome> lyapunov;
    std::optional<CoupleOutcome> couple;
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SingleSpeciesChain {
    ChainModel model;
    std::vector<double> initial_state;
};

/// Chain used by the single-species analyses (G diagnostic, Lyapunov): the
/// model itself when every complex has one species, otherwise its MSC
/// reduction at the experiment's initial state.
SingleSpeciesChain single_species_model(const ChainModel& model, const std::vector<double>& initial_state);

/// Runs every requested output. `threads` caps the ensemble workers (0 keeps
/// the OpenMP default).
ExperimentResults run_experiment(const ExperimentConfig& config, int threads = 0);

/// Pass/fail lines for the verdicts the results support.
std::vector<CheckLine> verdicts(const ExperimentConfig& config, const ExperimentResults& results);

}  // namespace fluxvar
