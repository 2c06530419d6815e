#include "fluxvar/lyapunov.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fluxvar/chain.hpp"
#include "fluxvar/error.hpp"

namespace fluxvar {

namespace {

constexpr std::array<unsigned, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

/// Species index and 1/multiplicity of each complex's only member.
struct Coordinates {
    std::vector<std::size_t> species;
    std::vector<double> weight;
};

Coordinates coordinates(const ChainModel& model) {
    Coordinates c;
    for (std::size_t i = 0; i < model.reaction_count(); ++i) {
        const auto slots = model.complex_slots(i);
        if (slots.size() != 1)
            throw ChainError("complex " + std::to_string(i + 1) +
                             " has several species; reduce the chain to single-species complexes first");
        c.species.push_back(slots[0].species);
        c.weight.push_back(1.0 / slots[0].multiplicity);
    }
    if (model.species_count() != model.reaction_count()) throw ChainError("species are shared between complexes");
    return c;
}

void check_sizes(const ChainModel& model, std::size_t v, std::size_t xbar, std::size_t x) {
    const std::size_t n = model.reaction_count();
    if (v != n || xbar != model.species_count() || x != model.species_count())
        throw DomainError("Lyapunov data does not match the chain dimension");
}

std::string format_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

double margin_at(const LyapunovSpec& spec, const ChainModel& model, std::span<const double> x) {
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    return spec.c - spec.k * std::sqrt(norm2) - generator_apply(model, spec, x);
}

struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::uint64_t index = 0;

    void offer(double v, std::uint64_t i) {
        if (v < value || (v == value && i < index)) {
            value = v;
            index = i;
        }
    }
};

DriftReport finish(const LyapunovSpec& spec, const Best& best, std::size_t n) {
    DriftReport r;
    r.min_margin = best.value;
    r.argmin = static_cast<std::size_t>(best.index);
    r.worst_point.assign(n, 0.0);
    halton_point(best.index, spec.R, r.worst_point);
    return r;
}

}  // namespace

double lyapunov_value(const ChainModel& model, std::span<const double> V, std::span<const double> xbar,
                      std::span<const double> x) {
    check_sizes(model, V.size(), xbar.size(), x.size());
    const Coordinates co = coordinates(model);
    double s = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < V.size(); ++i) {
        const std::size_t sp = co.species[i];
        s += (x[sp] - xbar[sp]) * co.weight[i];
        total += 0.5 * V[i] * s * s;
    }
    return total;
}

double generator_apply(const ChainModel& model, std::span<const double> V, std::span<const double> xbar,
                       double sigma, const ThetaCutoff& cutoff, std::span<const double> x) {
    check_sizes(model, V.size(), xbar.size(), x.size());
    const Coordinates co = coordinates(model);
    const std::size_t n = V.size();
    const double I = model.input_rate();

    double sum_v = 0.0;
    for (double v : V) sum_v += v;
    const double theta = gate_value(cutoff, model.gate_terms(), x);
    double total = 0.5 * sigma * sigma * theta * theta * sum_v;

    // Suffix sums of V_i (I - F_i) from the last complex upward.
    double tail = 0.0;
    for (std::size_t j = n; j-- > 0;) {
        tail += V[j] * (I - model.flux(j, x));
        const std::size_t sp = co.species[j];
        total += (x[sp] - xbar[sp]) * co.weight[j] * tail;
    }
    return total;
}

void halton_point(std::uint64_t index, double R, std::span<double> out) {
    if (out.size() > kPrimes.size()) throw DomainError("Halton points are limited to 16 dimensions");
    for (std::size_t d = 0; d < out.size(); ++d) {
        const unsigned base = kPrimes[d];
        double f = 1.0;
        double r = 0.0;
        for (std::uint64_t i = index; i > 0; i /= base) {
            f /= base;
            r += f * static_cast<double>(i % base);
        }
        out[d] = R * r;
    }
}

DriftReport verify_drift(const LyapunovSpec& spec, const ChainModel& model, std::span<const double> points) {
    const std::size_t n = model.species_count();
    if (n == 0 || points.size() % n != 0) throw DomainError("point array is not a multiple of the dimension");
    const std::size_t count = points.size() / n;
    Best best;
    for (std::size_t p = 0; p < count; ++p) best.offer(margin_at(spec, model, points.subspan(p * n, n)), p);
    DriftReport r;
    r.min_margin = best.value;
    r.argmin = static_cast<std::size_t>(best.index);
    if (count > 0) {
        const auto w = points.subspan(r.argmin * n, n);
        r.worst_point.assign(w.begin(), w.end());
    }
    return r;
}

DriftReport certify_grid_serial(const LyapunovSpec& spec, const ChainModel& model, std::uint64_t count) {
    const std::size_t n = model.species_count();
    std::vector<double> x(n);
    Best best;
    for (std::uint64_t i = 1; i <= count; ++i) {
        halton_point(i, spec.R, x);
        best.offer(margin_at(spec, model, x), i);
    }
    return finish(spec, best, n);
}

DriftReport certify_grid(const LyapunovSpec& spec, const ChainModel& model, std::uint64_t count, int threads) {
    const std::size_t n = model.species_count();
    Best best;
    const auto total = static_cast<std::int64_t>(count);
#ifdef _OPENMP
    const int workers = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(workers)
#else
    (void)threads;
#endif
    {
        std::vector<double> x(n);
        Best local;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t i = 1; i <= total; ++i) {
            halton_point(static_cast<std::uint64_t>(i), spec.R, x);
            local.offer(margin_at(spec, model, x), static_cast<std::uint64_t>(i));
        }
#ifdef _OPENMP
#pragma omp critical(fluxvar_certify)
#endif
        best.offer(local.value, local.index);
    }
    return finish(spec, best, n);
}

LyapunovSpec construct_coefficients(const ChainModel& model, double sigma, const ThetaCutoff& cutoff, double R,
                                    const LyapunovOptions& options) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("certification radius must be positive");
    if (options.probe_points < 2) throw DomainError("probe grid needs at least 2 points");
    const Coordinates co = coordinates(model);
    const std::size_t n = model.reaction_count();
    const double I = model.input_rate();

    LyapunovSpec spec;
    spec.sigma = sigma;
    spec.delta = cutoff.delta;
    spec.R = R;
    spec.xbar = solve_equilibrium(model).x;
    spec.V.assign(n, 1.0);
    spec.c_j.assign(n, 0.0);
    spec.k_j.assign(n, 0.0);

    // F_i with its species set to y and everything else at equilibrium.
    std::vector<double> probe = spec.xbar;
    auto flux_at = [&](std::size_t i, double y) {
        const std::size_t sp = co.species[i];
        const double saved = probe[sp];
        probe[sp] = y;
        const double f = model.flux(i, probe);
        probe[sp] = saved;
        return f;
    };

    std::vector<double> excess_at_r(n);
    for (std::size_t i = 0; i < n; ++i) excess_at_r[i] = std::max(flux_at(i, R) - I, 0.0);

    for (std::size_t j = n; j-- > 0;) {
        double downstream = 0.0;         // sum_{i>j} V_i
        double downstream_excess = 0.0;  // sum_{i>j} V_i (F_i(R) - I)^+
        for (std::size_t i = j + 1; i < n; ++i) {
            downstream += spec.V[i];
            downstream_excess += spec.V[i] * excess_at_r[i];
        }
        const double f_r = flux_at(j, R);
        if (!(f_r > I))
            throw SaturationError("F" + std::to_string(j + 1) + " stays at or below the input rate on [0, R]");

        auto g = [&](double fj) { return spec.V[j] * (I - fj) + I * downstream; };
        int doublings = 0;
        while (!(g(f_r) < 0.0)) {
            if (j + 1 == n || ++doublings > options.max_doublings)
                throw SaturationError("V" + std::to_string(j + 1) + " exceeds 2^" +
                                      std::to_string(options.max_doublings) + " without a negative drift slope");
            spec.V[j] *= 2.0;
        }

        const double w = co.weight[j];
        const double xb = spec.xbar[co.species[j]];
        const double kj = -w * g(f_r);
        double best = kj * xb;
        double prev = 0.0;
        double slack = 0.0;
        for (std::size_t m = 0; m < options.probe_points; ++m) {
            const double y = R * static_cast<double>(m) / static_cast<double>(options.probe_points - 1);
            const double fj = flux_at(j, y);
            const double p = y >= xb ? (y - xb) * w * g(fj)
                                     : (xb - y) * w * (spec.V[j] * (fj - I) + downstream_excess);
            const double q = p + kj * y;
            if (m > 0) slack = std::max(slack, std::abs(q - prev));
            prev = q;
            best = std::max(best, q);
        }
        spec.k_j[j] = kj;
        spec.c_j[j] = best + slack;
    }

    double sum_v = 0.0;
    for (double v : spec.V) sum_v += v;
    spec.c = 0.5 * sigma * sigma * sum_v;
    spec.k = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        spec.c += spec.c_j[j];
        spec.k = std::min(spec.k, spec.k_j[j]);
    }

    const DriftReport report = certify_grid(spec, model, options.certify_points, options.threads);
    spec.margin = report.min_margin;
    spec.worst_point = report.worst_point;
    spec.points_checked = options.certify_points;
    if (spec.margin < 0.0)
        throw AnalysisError("drift bound fails at " + format_point(spec.worst_point) + " (margin " +
                            std::to_string(spec.margin) + ")");
    return spec;
}

LyapunovSpec construct_coefficients(const ChainSpec& spec, double sigma, const ThetaCutoff& cutoff, double R,
                                    const LyapunovOptions& options) {
    const ValidationReport report = validate_chain(spec);
    for (const auto& issue : report.issues) {
        if (issue.assumption == Assumption::Saturation && issue.severity == Severity::Violation)
            throw SaturationError(issue.message);
    }
    return construct_coefficients(ChainModel(spec), sigma, cutoff, R, options);
}

}  // namespace fluxvar
