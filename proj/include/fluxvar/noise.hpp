#pragma once

#include <limits>
#include <span>
#include <variant>

#include "fluxvar/chain.hpp"
#include "fluxvar/rng.hpp"

namespace fluxvar {

/// Smooth gate theta_delta: 0 for x <= 0, 1 for x >= delta, C-infinity and
/// strictly increasing in between (ratio of exp(-1/s) bumps).
struct ThetaCutoff {
    double delta = 1e-3;

    double operator()(double x) const noexcept;
};

inline double theta_eval(const ThetaCutoff& cutoff, double x) noexcept { return cutoff(x); }

/// Product of theta over the chain's gate terms (every first-complex species).
double gate_value(const ThetaCutoff& cutoff, std::span<const GateTerm> terms, std::span<const double> x) noexcept;

/// sigma * theta_delta(gate) dB added to the first complex.
struct WhiteNoiseInput {
    double sigma = 1.0;
    ThetaCutoff cutoff{};
};

/// d xi = -xi dt + sigma dB inside (lower, upper), drift only at or beyond a
/// bound. The state itself is not clamped; the perturbation fed to the chain
/// is clamp(xi, lower, upper).
struct FrozenOUNoise {
    double sigma = 1.0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

using NoiseModel = std::variant<WhiteNoiseInput, FrozenOUNoise>;

/// One Euler step; the regime is chosen from the pre-step value.
double ou_step(double xi, const FrozenOUNoise& params, double dt, double dW) noexcept;

/// Perturbation seen by the chain for OU state xi.
double ou_emit(double xi, const FrozenOUNoise& params) noexcept;

/// Length of the pre-burn, in mean-reversion times.
inline constexpr double kStationaryInitTime = 20.0;

/// Runs the OU process from 0 for kStationaryInitTime using the stream's
/// OuInit domain and returns the endpoint.
double sample_stationary_init(const FrozenOUNoise& params, std::uint64_t master_seed, std::uint64_t path_index,
                              double dt);

}  // namespace fluxvar
