#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fluxvar/analysis.hpp"
#include "fluxvar/ensemble.hpp"
#include "fluxvar/lyapunov.hpp"
#include "fluxvar/simulator.hpp"

namespace fluxvar {

enum class TableFormat { Csv, Text };

/// Shortest-round-trip-safe number formatting used by every writer.
std::string format_number(double v);

/// quantity, mean, variance, cv, se_mean, se_var
void write_quantity_csv(std::ostream& os, const std::vector<QuantityStats>& rows);

/// Quantities as columns, mean/variance/CV (and their standard errors) as rows.
void write_quantity_text(std::ostream& os, const std::vector<QuantityStats>& rows);

void write_quantities(std::ostream& os, const std::vector<QuantityStats>& rows, TableFormat format);

/// Input perturbation (when present) followed by the fluxes.
std::vector<QuantityStats> flux_rows(const FluxStats& stats);

void write_ordering(std::ostream& os, const OrderingReport& report, TableFormat format);
void write_timeavg(std::ostream& os, const TimeAverageReport& report, TableFormat format);
void write_gdiag(std::ostream& os, const GDiagnostic& diag, TableFormat format);

/// time, divergence, x_first, y_first
void write_coupling_csv(std::ostream& os, const CouplingResult& result);

/// {"V": [...], "c": ..., "k": ..., "R": ..., "margin": ...}
void write_lyapunov_json(std::ostream& os, const LyapunovSpec& spec);

/// time, x_<name>..., F_1...F_n, xi
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace fluxvar
