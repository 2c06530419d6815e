#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fluxvar/chain.hpp"
#include "fluxvar/error.hpp"
#include "fluxvar/noise.hpp"

namespace fluxvar {

struct SimConfig {
    double dt = 1e-3;
    double t_total = 60.0;
    double t_burn = 20.0;
    std::uint64_t n_paths = 2000;
    std::uint64_t master_seed = 1;
    std::uint64_t record_stride = 100;
    unsigned brownian_refinement = 0;

    /// Throws ConfigError naming the offending "sim.*" field.
    void validate() const;

    std::uint64_t step_count() const { return static_cast<std::uint64_t>(std::llround(t_total / dt)); }
    /// First step index whose time is at or after t_burn.
    std::uint64_t burn_steps() const { return static_cast<std::uint64_t>(std::ceil(t_burn / dt - 1e-9)); }
};

/// One realized path on the recording grid. Rows are recording times.
struct Trajectory {
    std::vector<std::string> species_names;
    std::size_t n_species = 0;
    std::size_t n_reactions = 0;
    double input_rate = 0.0;
    /// True when input_noise holds a perturbation process xi(t); false when it
    /// holds the white-noise record sigma * theta * dB / dt.
    bool input_is_process = false;
    std::vector<double> times;
    std::vector<double> states;
    std::vector<double> fluxes;
    std::vector<double> input_noise;
    std::uint64_t clamp_events = 0;
    std::uint64_t steps = 0;

    std::size_t size() const noexcept { return times.size(); }
    std::span<const double> state(std::size_t r) const {
        return std::span<const double>(states).subspan(r * n_species, n_species);
    }
    std::span<const double> flux(std::size_t r) const {
        return std::span<const double>(fluxes).subspan(r * n_reactions, n_reactions);
    }
};

struct StepOutcome {
    std::size_t clamped = 0;
};

/// One Euler-Maruyama step in place: x += drift(x) dt + u * input_increment,
/// where input_increment is sigma * theta * dB (white) or xi * dt (process).
/// Negative components are set to zero and counted. Throws SimulationError on
/// a non-finite result.
StepOutcome step(const ChainModel& model, std::span<double> state, double input_increment, double dt,
                 std::uint64_t step_index = 0);

/// Default initial state: the deterministic equilibrium.
std::vector<double> default_initial_state(const ChainModel& model);

/// Integrates path `path_index` from x0 (equilibrium when empty).
Trajectory simulate_path(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                         std::uint64_t path_index, std::span<const double> x0 = {});

struct CouplingResult {
    std::vector<double> times;
    std::vector<double> divergence;  // sup-norm |x(t) - y(t)|
    std::vector<double> first_x;
    std::vector<double> first_y;
    /// Recorded times where the first coordinate left the initial ordering.
    std::size_t order_violations = 0;
    double final_divergence() const { return divergence.empty() ? 0.0 : divergence.back(); }
};

/// Two solutions from x0 and y0 driven by the identical noise realization.
CouplingResult couple_paths(const ChainModel& model, const NoiseModel& noise, std::span<const double> x0,
                            std::span<const double> y0, const SimConfig& config, std::uint64_t path_index = 0);

namespace detail {

/// Allocation-free Euler update given the fluxes at the current state.
/// Returns the number of clamped components, or -1 on a non-finite result.
inline long advance(const ChainModel& model, std::span<double> x, std::span<const double> f, double increment,
                    double dt, std::span<double> scratch) {
    model.drift(f, scratch);
    const auto u = model.noise_direction();
    long clamped = 0;
    bool finite = true;
    for (std::size_t s = 0; s < x.size(); ++s) {
        double v = x[s] + scratch[s] * dt + u[s] * increment;
        finite = finite && std::isfinite(v);
        if (v < 0.0) {
            v = 0.0;
            ++clamped;
        }
        x[s] = v;
    }
    return finite ? clamped : -1;
}

/// Drives one path and calls obs(step, time, x, fluxes, input) at every
/// recording step. Returns the number of clamp events.
template <class Observer>
std::uint64_t integrate(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                        std::uint64_t path_index, std::span<const double> x0, Observer&& obs) {
    const std::size_t ns = model.species_count();
    const std::size_t nr = model.reaction_count();
    std::vector<double> x(x0.begin(), x0.end());
    std::vector<double> f(nr), scratch(ns);
    const double dt = config.dt;
    const std::uint64_t n = config.step_count();
    NoiseStream stream(config.master_seed, path_index, dt, StreamDomain::Input, config.brownian_refinement);

    const auto* white = std::get_if<WhiteNoiseInput>(&noise);
    const auto* ou = std::get_if<FrozenOUNoise>(&noise);
    double xi = ou ? sample_stationary_init(*ou, config.master_seed, path_index, dt) : 0.0;
    const auto gate = model.gate_terms();

    std::uint64_t clamps = 0;
    for (std::uint64_t k = 0;; ++k) {
        model.fluxes(x, f);
        const double dB = stream.increment(k);
        double increment;
        double emitted;
        if (white) {
            increment = white->sigma * gate_value(white->cutoff, gate, x) * dB;
            emitted = increment / dt;
        } else {
            emitted = ou_emit(xi, *ou);
            increment = emitted * dt;
        }
        if (k % config.record_stride == 0) obs(k, static_cast<double>(k) * dt, std::span<const double>(x),
                                               std::span<const double>(f), emitted);
        if (k == n) break;
        const long c = advance(model, x, f, increment, dt, scratch);
        if (c < 0) throw SimulationError(path_index, k, "non-finite state");
        clamps += static_cast<std::uint64_t>(c);
        if (ou) xi = ou_step(xi, *ou, dt, dB);
    }
    return clamps;
}

}  // namespace detail

}  // namespace fluxvar
