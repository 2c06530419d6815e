#include "fluxvar/simulator.hpp"

namespace fluxvar {

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("sim.dt", "must be positive");
    if (!(t_total > 0.0) || !std::isfinite(t_total)) throw ConfigError("sim.t_total", "must be positive");
    if (!(t_burn >= 0.0)) throw ConfigError("sim.t_burn", "must be nonnegative");
    if (!(t_burn < t_total)) throw ConfigError("sim.t_burn", "must be smaller than sim.t_total");
    if (dt > t_total / 100.0 * (1.0 + 1e-12)) throw ConfigError("sim.dt", "must not exceed t_total / 100");
    if (n_paths < 1) throw ConfigError("sim.n_paths", "must be positive");
    if (record_stride < 1) throw ConfigError("sim.record_stride", "must be positive");
    if (brownian_refinement > 20) throw ConfigError("sim.brownian_refinement", "must be at most 20");
}

StepOutcome step(const ChainModel& model, std::span<double> state, double input_increment, double dt,
                 std::uint64_t step_index) {
    if (state.size() != model.species_count()) throw DomainError("state size does not match species count");
    for (double v : state) {
        if (!(v >= 0.0)) throw DomainError("state must be nonnegative");
    }
    std::vector<double> f(model.reaction_count()), scratch(model.species_count());
    model.fluxes(state, f);
    const long c = detail::advance(model, state, f, input_increment, dt, scratch);
    if (c < 0) throw SimulationError(0, step_index, "non-finite state");
    return {static_cast<std::size_t>(c)};
}

std::vector<double> default_initial_state(const ChainModel& model) { return solve_equilibrium(model).x; }

Trajectory simulate_path(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                         std::uint64_t path_index, std::span<const double> x0) {
    config.validate();
    std::vector<double> start = x0.empty() ? default_initial_state(model) : std::vector<double>(x0.begin(), x0.end());
    if (start.size() != model.species_count()) throw DomainError("initial state size does not match species count");

    Trajectory traj;
    traj.species_names = model.species_names();
    traj.n_species = model.species_count();
    traj.n_reactions = model.reaction_count();
    traj.input_rate = model.input_rate();
    traj.input_is_process = std::holds_alternative<FrozenOUNoise>(noise);
    const std::uint64_t records = config.step_count() / config.record_stride + 1;
    traj.times.reserve(records);
    traj.states.reserve(records * traj.n_species);
    traj.fluxes.reserve(records * traj.n_reactions);
    traj.input_noise.reserve(records);

    traj.clamp_events = detail::integrate(
        model, noise, config, path_index, start,
        [&](std::uint64_t, double t, std::span<const double> x, std::span<const double> f, double input) {
            traj.times.push_back(t);
            traj.states.insert(traj.states.end(), x.begin(), x.end());
            traj.fluxes.insert(traj.fluxes.end(), f.begin(), f.end());
            traj.input_noise.push_back(input);
        });
    traj.steps = config.step_count();
    return traj;
}

CouplingResult couple_paths(const ChainModel& model, const NoiseModel& noise, std::span<const double> x0,
                            std::span<const double> y0, const SimConfig& config, std::uint64_t path_index) {
    config.validate();
    const std::size_t ns = model.species_count();
    if (x0.size() != ns || y0.size() != ns) throw DomainError("initial states must match species count");

    std::vector<double> x(x0.begin(), x0.end()), y(y0.begin(), y0.end());
    std::vector<double> fx(model.reaction_count()), fy(model.reaction_count()), scratch(ns);
    const double dt = config.dt;
    const std::uint64_t n = config.step_count();
    NoiseStream stream(config.master_seed, path_index, dt, StreamDomain::Input, config.brownian_refinement);
    const auto* white = std::get_if<WhiteNoiseInput>(&noise);
    const auto* ou = std::get_if<FrozenOUNoise>(&noise);
    double xi = ou ? sample_stationary_init(*ou, config.master_seed, path_index, dt) : 0.0;
    const bool x_above = x0[0] >= y0[0];

    CouplingResult out;
    for (std::uint64_t k = 0;; ++k) {
        if (k % config.record_stride == 0) {
            double sup = 0.0;
            for (std::size_t s = 0; s < ns; ++s) sup = std::max(sup, std::abs(x[s] - y[s]));
            out.times.push_back(static_cast<double>(k) * dt);
            out.divergence.push_back(sup);
            out.first_x.push_back(x[0]);
            out.first_y.push_back(y[0]);
            if (x_above ? x[0] < y[0] : x[0] > y[0]) ++out.order_violations;
        }
        if (k == n) break;
        const double dB = stream.increment(k);
        double inc_x, inc_y;
        if (white) {
            inc_x = white->sigma * gate_value(white->cutoff, model.gate_terms(), x) * dB;
            inc_y = white->sigma * gate_value(white->cutoff, model.gate_terms(), y) * dB;
        } else {
            inc_x = inc_y = ou_emit(xi, *ou) * dt;
            xi = ou_step(xi, *ou, dt, dB);
        }
        model.fluxes(x, fx);
        model.fluxes(y, fy);
        if (detail::advance(model, x, fx, inc_x, dt, scratch) < 0 ||
            detail::advance(model, y, fy, inc_y, dt, scratch) < 0) {
            throw SimulationError(path_index, k, "non-finite state in coupled pair");
        }
    }
    return out;
}

}  // namespace fluxvar
