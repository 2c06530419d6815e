#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fluxvar/chain.hpp"
#include "fluxvar/noise.hpp"

namespace fluxvar {

/// Quadratic Lyapunov function V(x) = sum_i (V_i/2) S_i(x)^2 with
/// S_i = sum_{j<=i} (x_j - xbar_j)/v_j, together with drift constants (c, k)
/// certified on the box [0, R]^n.
struct LyapunovSpec {
    std::vector<double> V;
    std::vector<double> xbar;
    double sigma = 0.0;
    double delta = 1e-3;
    double c = 0.0;
    double k = 0.0;
    double R = 0.0;
    /// Minimum over the certification points of c - k|x| - AV(x).
    double margin = 0.0;
    std::vector<double> worst_point;
    std::uint64_t points_checked = 0;
    /// Per-coordinate line bounds p_j(y) <= c_j - k_j y.
    std::vector<double> c_j;
    std::vector<double> k_j;
};

struct LyapunovOptions {
    std::size_t probe_points = 20001;
    std::uint64_t certify_points = 100000;
    /// Worker count for certification; 0 keeps the OpenMP default.
    int threads = 0;
    /// Doubling cap for each V_j (as a power of two).
    int max_doublings = 60;
};

/// V(x) for coefficients V and equilibrium xbar.
double lyapunov_value(const ChainModel& model, std::span<const double> V, std::span<const double> xbar,
                      std::span<const double> x);

/// Generator of the white-noise system applied to V at x:
/// (1/2) sigma^2 theta(x)^2 sum V_i + sum_j (x_j - xbar_j)/v_j sum_{i>=j} V_i (I - F_i).
/// Requires single-species complexes. Throws DomainError on a size mismatch.
double generator_apply(const ChainModel& model, std::span<const double> V, std::span<const double> xbar,
                       double sigma, const ThetaCutoff& cutoff, std::span<const double> x);

inline double generator_apply(const ChainModel& model, const LyapunovSpec& spec, std::span<const double> x) {
    return generator_apply(model, spec.V, spec.xbar, spec.sigma, ThetaCutoff{spec.delta}, x);
}

/// Builds V_n = 1, ..., V_1 by doubling until each coordinate's drift bound
/// has negative slope at R, fits (c_j, k_j), and certifies the full bound on
/// options.certify_points Halton points in [0, R]^n. Throws SaturationError
/// when a flux does not exceed I by R or the doubling cap is hit, ChainError
/// for chains with multi-species complexes, and AnalysisError when the
/// certification margin is negative (the message names the worst point).
LyapunovSpec construct_coefficients(const ChainModel& model, double sigma, const ThetaCutoff& cutoff, double R,
                                    const LyapunovOptions& options = {});

/// Same, from an unchecked spec: a saturation violation is reported as
/// SaturationError instead of failing model construction.
LyapunovSpec construct_coefficients(const ChainSpec& spec, double sigma, const ThetaCutoff& cutoff, double R,
                                    const LyapunovOptions& options = {});

struct DriftReport {
    double min_margin = 0.0;
    std::size_t argmin = 0;
    std::vector<double> worst_point;
};

/// Margin c - k|x|_2 - AV(x) at every point (row-major, n per point); returns
/// the minimum and its lowest index. Never throws on a negative margin.
DriftReport verify_drift(const LyapunovSpec& spec, const ChainModel& model, std::span<const double> points);

/// Point i (from 1) of the n-dimensional Halton sequence scaled to [0, R]^n.
void halton_point(std::uint64_t index, double R, std::span<double> out);

/// Minimum margin over Halton points 1..count; OpenMP and serial variants give
/// the same answer.
DriftReport certify_grid(const LyapunovSpec& spec, const ChainModel& model, std::uint64_t count, int threads = 0);
DriftReport certify_grid_serial(const LyapunovSpec& spec, const ChainModel& model, std::uint64_t count);

}  // namespace fluxvar
