#include "fluxvar/ensemble.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fluxvar/stats.hpp"

namespace fluxvar {

namespace {

struct PathMoments {
    std::vector<RunningMoments> full, first, second;
    std::uint64_t clamps = 0;
};

struct Layout {
    std::size_t ns, nr;
    bool has_input;
    std::size_t quantities() const { return ns + nr + (has_input ? 1 : 0); }
};

struct Plan {
    const ChainModel& model;
    const NoiseModel& noise;
    const SimConfig& config;
    std::vector<double> x0;
    Layout layout;
    std::uint64_t burn_record;   // first post-burn step index on the recording grid
    std::uint64_t half_record;   // first step index of the second half
    std::uint64_t samples;
};

Plan make_plan(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
               const EnsembleOptions& options) {
    config.validate();
    if (config.n_paths < 2) throw ConfigError("sim.n_paths", "an ensemble needs at least 2 paths");
    std::vector<double> x0 = options.initial_state.empty() ? default_initial_state(model) : options.initial_state;
    if (x0.size() != model.species_count()) throw DomainError("initial state size does not match species count");
    const Layout layout{model.species_count(), model.reaction_count(), std::holds_alternative<FrozenOUNoise>(noise)};
    const std::uint64_t stride = config.record_stride;
    const std::uint64_t burn = (config.burn_steps() + stride - 1) / stride * stride;
    const std::uint64_t n = config.step_count();
    if (burn > n) throw ConfigError("sim.t_burn", "no recorded samples after burn-in");
    const std::uint64_t samples = (n - burn) / stride + 1;
    const std::uint64_t half = burn + (samples / 2) * stride;
    return {model, noise, config, std::move(x0), layout, burn, half, samples};
}

PathMoments run_one(const Plan& plan, std::uint64_t path) {
    const std::size_t nq = plan.layout.quantities();
    PathMoments pm{std::vector<RunningMoments>(nq), std::vector<RunningMoments>(nq), std::vector<RunningMoments>(nq), 0};
    const double I = plan.model.input_rate();
    pm.clamps = detail::integrate(
        plan.model, plan.noise, plan.config, path, plan.x0,
        [&](std::uint64_t k, double, std::span<const double> x, std::span<const double> f, double input) {
            if (k < plan.burn_record) return;
            auto& half = k < plan.half_record ? pm.first : pm.second;
            std::size_t q = 0;
            auto push = [&](double v) {
                pm.full[q].push(v);
                half[q].push(v);
                ++q;
            };
            for (double v : x) push(v);
            for (double v : f) push(v);
            if (plan.layout.has_input) push(I + input);
        });
    return pm;
}

QuantityStats summarize(std::string name, std::size_t q, const std::vector<PathMoments>& paths, std::size_t batches) {
    QuantityStats s;
    s.name = std::move(name);
    const std::size_t P = paths.size();
    RunningMoments total, first, second;
    std::vector<double> batch_cv;
    for (std::size_t b = 0; b < batches; ++b) {
        RunningMoments batch;
        for (std::size_t p = b * P / batches; p < (b + 1) * P / batches; ++p) batch.merge(paths[p].full[q]);
        s.batch_mean.push_back(batch.mean);
        s.batch_variance.push_back(batch.variance());
        batch_cv.push_back(coefficient_of_variation(batch.mean, batch.variance()));
        total.merge(batch);
    }
    for (const auto& pm : paths) {
        first.merge(pm.first[q]);
        second.merge(pm.second[q]);
    }
    s.count = total.count;
    s.mean = total.mean;
    s.variance = total.variance();
    s.cv = coefficient_of_variation(s.mean, s.variance);
    s.se_mean = batch_standard_error(s.batch_mean);
    s.se_var = batch_standard_error(s.batch_variance);
    s.se_cv = batch_standard_error(batch_cv);
    s.variance_first_half = first.variance();
    s.variance_second_half = second.variance();
    return s;
}

EnsembleResult reduce(const Plan& plan, const std::vector<PathMoments>& paths, std::size_t requested_batches) {
    EnsembleResult r;
    r.input_rate = plan.model.input_rate();
    r.n_paths = paths.size();
    r.samples_per_path = plan.samples;
    r.n_batches = std::clamp<std::size_t>(requested_batches, 2, paths.size());
    r.total_steps = plan.config.step_count() * paths.size();
    for (const auto& pm : paths) r.clamp_events += pm.clamps;

    std::size_t q = 0;
    for (const auto& name : plan.model.species_names()) r.species.push_back(summarize(name, q++, paths, r.n_batches));
    for (std::size_t i = 0; i < plan.layout.nr; ++i) {
        r.fluxes.push_back(summarize("F_" + std::to_string(i + 1), q++, paths, r.n_batches));
    }
    if (plan.layout.has_input) r.input = summarize("I+xi", q, paths, r.n_batches);
    return r;
}

}  // namespace

EnsembleResult run_ensemble(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                            const EnsembleOptions& options) {
    const Plan plan = make_plan(model, noise, config, options);
    const auto n = static_cast<std::int64_t>(config.n_paths);
    std::vector<PathMoments> paths(config.n_paths);
    std::vector<std::exception_ptr> errors(config.n_paths);

#ifdef _OPENMP
    const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
#endif
    for (std::int64_t p = 0; p < n; ++p) {
        try {
            paths[p] = run_one(plan, static_cast<std::uint64_t>(p));
        } catch (...) {
            errors[p] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return reduce(plan, paths, options.n_batches);
}

EnsembleResult run_ensemble_serial(const ChainModel& model, const NoiseModel& noise, const SimConfig& config,
                                   const EnsembleOptions& options) {
    const Plan plan = make_plan(model, noise, config, options);
    std::vector<PathMoments> paths;
    paths.reserve(config.n_paths);
    for (std::uint64_t p = 0; p < config.n_paths; ++p) paths.push_back(run_one(plan, p));
    return reduce(plan, paths, options.n_batches);
}

int threads_from_environment() {
    const char* env = std::getenv("FLUXVAR_THREADS");
    if (!env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096) return 0;
    return static_cast<int>(v);
}

}  // namespace fluxvar
