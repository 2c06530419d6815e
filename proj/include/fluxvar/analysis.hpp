#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fluxvar/chain.hpp"
#include "fluxvar/ensemble.hpp"
#include "fluxvar/simulator.hpp"

namespace fluxvar {

/// Significance multiplier used by every verdict.
inline constexpr double kSignificance = 3.0;

struct FluxStats {
    double input_rate = 0.0;
    std::optional<QuantityStats> input;
    std::vector<QuantityStats> fluxes;  // ordered down the chain
};

/// Throws AnalysisError when the ensemble has no post-burn samples.
FluxStats flux_table(const EnsembleResult& result);
std::vector<QuantityStats> species_table(const EnsembleResult& result);

enum class Verdict { StrictlyDecreasing, Violated, Inconclusive };
const char* to_string(Verdict v);

enum class OrderingMetric { Variance, CV };
const char* to_string(OrderingMetric m);

struct PairVerdict {
    std::string upper;
    std::string lower;
    double upper_value = 0.0;
    double lower_value = 0.0;
    double difference = 0.0;  // upper - lower
    double pooled_se = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

struct OrderingReport {
    OrderingMetric metric = OrderingMetric::Variance;
    std::vector<PairVerdict> pairs;
    Verdict overall = Verdict::Inconclusive;
};

/// Adjacent-pair verdicts down the chain (starting with the input
/// perturbation when present and `include_input`). A pair is
/// strictly-decreasing when the drop exceeds kSignificance pooled standard
/// errors and violated when it is below -kSignificance.
OrderingReport check_ordering(const FluxStats& stats, OrderingMetric metric = OrderingMetric::Variance,
                              bool include_input = true);

struct MeanCheck {
    std::string name;
    double mean = 0.0;
    double se = 0.0;
    bool pass = false;
};

/// Every flux mean equals I within kSignificance standard errors.
std::vector<MeanCheck> check_mean_flux(const FluxStats& stats);

struct TimeAverageOptions {
    double t_burn = 20.0;
    std::size_t n_batches = 50;
    double min_window = 100.0;
};

struct TimeAverageEntry {
    std::string name;
    double a = 0.0;   // (1/t) int F_i ds, or (1/t) int xi ds for the input
    double se_a = 0.0;
    double b = 0.0;   // (1/t) int (F_i - I)^2 ds, or (1/t) int xi^2 ds
    double se_b = 0.0;
};

struct InequalityCheck {
    std::string lhs;
    std::string rhs;
    double difference = 0.0;  // lhs - rhs
    double se = 0.0;
    bool pass = false;        // difference >= -kSignificance * se
};

struct TimeAverageReport {
    double window = 0.0;
    std::optional<TimeAverageEntry> input;  // B_0 exists only for process-driven chains
    std::vector<TimeAverageEntry> fluxes;
    std::vector<bool> part1;                // |A_i - I| <= kSignificance * se
    std::vector<InequalityCheck> part2;     // B_0 - B_i
    std::vector<InequalityCheck> part3;     // B_i - B_{i+1}

    bool all_pass() const;
};

/// Pathwise time averages over the post-burn window, with batch-means
/// standard errors. Throws AnalysisError when the window is shorter than
/// options.min_window.
TimeAverageReport time_average_check(const Trajectory& traj, double input_rate, const TimeAverageOptions& options = {});

struct GTerms {
    std::size_t flux = 0;         // zero-based index i (>= 1)
    double dissipation = 0.0;     // avg of -2 (F_i - I)^2
    double cross = 0.0;           // avg of 2 (F_i - I) xi_{i-1}, xi_{i-1} = F_{i-1} - I
    double balance = 0.0;         // dissipation + cross
    double se_balance = 0.0;
    double se_cross = 0.0;
    double boundary = 0.0;        // (G(x_end) - G(x_start)) / window
    bool balanced = false;        // |balance| < kSignificance * se_balance
};

struct GDiagnostic {
    double window = 0.0;
    std::vector<GTerms> terms;
};

/// G(x) = (2/v) int_0^x (F_i(y) - I) dy for a single-species complex of
/// multiplicity v, by adaptive Simpson to 1e-10.
double g_function(const ChainModel& model, std::size_t flux, double x);

/// Stationary balance of the two terms of dG/dt along one path, for every flux
/// i >= 2. Requires single-species complexes (run msc_reduce first).
GDiagnostic g_diagnostic(const Trajectory& traj, const ChainModel& model, const TimeAverageOptions& options = {});

}  // namespace fluxvar
