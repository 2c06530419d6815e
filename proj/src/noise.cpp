#include "fluxvar/noise.hpp"

#include <algorithm>
#include <cmath>

namespace fluxvar {

namespace {

inline double bump(double s) noexcept { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double ThetaCutoff::operator()(double x) const noexcept {
    if (x <= 0.0) return 0.0;
    if (x >= delta) return 1.0;
    const double s = x / delta;
    const double a = bump(s);
    const double b = bump(1.0 - s);
    return a / (a + b);
}

double gate_value(const ThetaCutoff& cutoff, std::span<const GateTerm> terms, std::span<const double> x) noexcept {
    double g = 1.0;
    for (const GateTerm& t : terms) g *= cutoff(t.scale * x[t.species] + t.offset);
    return g;
}

double ou_step(double xi, const FrozenOUNoise& p, double dt, double dW) noexcept {
    const double drifted = xi - xi * dt;
    if (xi <= p.lower || xi >= p.upper) return drifted;
    return drifted + p.sigma * dW;
}

double ou_emit(double xi, const FrozenOUNoise& p) noexcept { return std::clamp(xi, p.lower, p.upper); }

double sample_stationary_init(const FrozenOUNoise& params, std::uint64_t master_seed, std::uint64_t path_index,
                              double dt) {
    if (params.sigma == 0.0) return 0.0;
    NoiseStream stream(master_seed, path_index, dt, StreamDomain::OuInit);
    const auto steps = static_cast<std::uint64_t>(std::llround(kStationaryInitTime / dt));
    double xi = 0.0;
    for (std::uint64_t k = 0; k < steps; ++k) xi = ou_step(xi, params, dt, stream.increment(k));
    return xi;
}

}  // namespace fluxvar
