#include "fluxvar/experiment.hpp"

#include <cmath>
#include <cstdio>

#include "fluxvar/error.hpp"

namespace fluxvar {

namespace {

bool wants(const ExperimentConfig& c, OutputKind k) {
    for (OutputKind o : c.outputs)
        if (o == k) return true;
    return false;
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Trajectory long_path(const ExperimentConfig& config, const ChainModel& model, const std::vector<double>& x0) {
    SimConfig sim = config.sim;
    sim.t_total = config.timeavg.t_total;
    sim.t_burn = config.timeavg.t_burn;
    return simulate_path(model, config.noise, sim, config.timeavg.path, x0);
}

}  // namespace

SingleSpeciesChain single_species_model(const ChainModel& model, const std::vector<double>& initial_state) {
    bool single = true;
    for (std::size_t i = 0; i < model.reaction_count(); ++i) single = single && model.complex_slots(i).size() == 1;
    if (single && !model.has_shared_species()) return {model, initial_state};
    MscReduction r = msc_reduce(model, initial_state);
    return {ChainModel(std::move(r.reduced)), restrict_state(r.reduction, initial_state)};
}

ExperimentResults run_experiment(const ExperimentConfig& config, int threads) {
    const ChainModel model(config.chain);
    const std::vector<double> x0 = initial_state_vector(model, config.initial_state);
    ExperimentResults out;

    if (wants(config, OutputKind::FluxTable) || wants(config, OutputKind::SpeciesTable) ||
        wants(config, OutputKind::Ordering)) {
        EnsembleOptions opts;
        opts.threads = threads;
        opts.initial_state = x0;
        out.ensemble = run_ensemble(model, config.noise, config.sim, opts);
        out.fluxes = flux_table(*out.ensemble);
        out.mean_checks = check_mean_flux(*out.fluxes);
        if (wants(config, OutputKind::Ordering)) {
            out.variance_ordering = check_ordering(*out.fluxes, OrderingMetric::Variance);
            out.cv_ordering = check_ordering(*out.fluxes, OrderingMetric::CV);
        }
    }

    if (wants(config, OutputKind::TimeAverage)) {
        const Trajectory traj = long_path(config, model, x0);
        TimeAverageOptions opts;
        opts.t_burn = config.timeavg.t_burn;
        opts.n_batches = config.timeavg.n_batches;
        out.timeavg = time_average_check(traj, model.input_rate(), opts);
    }

    if (wants(config, OutputKind::GDiagnostic)) {
        const SingleSpeciesChain reduced = single_species_model(model, x0);
        const Trajectory traj = long_path(config, reduced.model, reduced.initial_state);
        TimeAverageOptions opts;
        opts.t_burn = config.timeavg.t_burn;
        opts.n_batches = config.timeavg.n_batches;
        out.gdiag = g_diagnostic(traj, reduced.model, opts);
    }

    if (wants(config, OutputKind::Lyapunov)) {
        LyapunovOutcome lo;
        double sigma = 0.0;
        ThetaCutoff cutoff;
        if (const auto* w = std::get_if<WhiteNoiseInput>(&config.noise)) {
            sigma = w->sigma;
            cutoff = w->cutoff;
        } else {
            sigma = std::get<FrozenOUNoise>(config.noise).sigma;
        }
        if (config.lyapunov.sigma) sigma = *config.lyapunov.sigma;
        if (config.lyapunov.delta) cutoff.delta = *config.lyapunov.delta;
        LyapunovOptions opts;
        opts.certify_points = config.lyapunov.points;
        opts.threads = threads;
        try {
            const SingleSpeciesChain reduced = single_species_model(model, x0);
            lo.spec = construct_coefficients(reduced.model, sigma, cutoff, config.lyapunov.R, opts);
        } catch (const ChainError& e) {
            lo.error = e.what();
        } catch (const AnalysisError& e) {
            lo.error = e.what();
        }
        out.lyapunov = std::move(lo);
    }

    if (wants(config, OutputKind::Couple)) {
        SimConfig sim = config.sim;
        sim.t_total = config.couple.t_total;
        if (sim.t_burn >= sim.t_total) sim.t_burn = 0.0;
        const auto a = initial_state_vector(model, config.couple.x0, "couple.x0");
        const auto b = initial_state_vector(model, config.couple.y0, "couple.y0");
        CoupleOutcome co;
        co.result = couple_paths(model, config.noise, a, b, sim, 0);
        co.tolerance = config.couple.tolerance;
        co.pass = co.result.final_divergence() < co.tolerance && co.result.order_violations == 0;
        out.couple = std::move(co);
    }
    return out;
}

std::vector<CheckLine> verdicts(const ExperimentConfig& config, const ExperimentResults& r) {
    std::vector<CheckLine> lines;
    for (const auto& m : r.mean_checks)
        lines.push_back({"mean " + m.name + " = I", m.pass,
                         fixed(m.mean, 6) + " vs " + fixed(config.chain.input_rate, 6) + " (se " + fixed(m.se) + ")"});

    auto ordering_line = [&](const OrderingReport& rep) {
        std::string detail;
        for (const auto& p : rep.pairs) {
            if (!detail.empty()) detail += "; ";
            detail += p.upper + ">" + p.lower + ": " + to_string(p.verdict) + " (" + fixed(p.difference) + " +- " +
                      fixed(p.pooled_se) + ")";
        }
        const bool pass = std::string(to_string(rep.overall)) == config.expect.ordering;
        lines.push_back({std::string(to_string(rep.metric)) + " ordering " + to_string(rep.overall) + " (expected " +
                             config.expect.ordering + ")",
                         pass, detail});
    };
    if (r.variance_ordering) ordering_line(*r.variance_ordering);
    if (r.cv_ordering) ordering_line(*r.cv_ordering);

    if (r.timeavg) {
        const auto& t = *r.timeavg;
        for (std::size_t i = 0; i < t.fluxes.size(); ++i)
            lines.push_back({"time average A" + std::to_string(i + 1) + " = I", t.part1[i],
                             fixed(t.fluxes[i].a, 6) + " (se " + fixed(t.fluxes[i].se_a) + ")"});
        for (const auto& c : t.part2)
            lines.push_back({c.lhs + " >= " + c.rhs, c.pass, fixed(c.difference) + " (se " + fixed(c.se) + ")"});
        for (const auto& c : t.part3)
            lines.push_back({c.lhs + " >= " + c.rhs, c.pass, fixed(c.difference) + " (se " + fixed(c.se) + ")"});
    }
    if (r.gdiag) {
        for (const auto& g : r.gdiag->terms)
            lines.push_back({"G balance F_" + std::to_string(g.flux + 1), g.balanced,
                             "dissipation " + fixed(g.dissipation) + ", cross " + fixed(g.cross) + ", sum " +
                                 fixed(g.balance) + " (se " + fixed(g.se_balance) + ")"});
    }
    if (r.lyapunov) {
        if (r.lyapunov->spec)
            lines.push_back({"Lyapunov drift bound on [0, R]^n", r.lyapunov->spec->margin >= 0.0,
                             "margin " + fixed(r.lyapunov->spec->margin) + ", c " + fixed(r.lyapunov->spec->c) +
                                 ", k " + fixed(r.lyapunov->spec->k)});
        else
            lines.push_back({"Lyapunov drift bound on [0, R]^n", false, r.lyapunov->error});
    }
    if (r.couple) {
        lines.push_back({"coupled divergence < " + fixed(r.couple->tolerance), r.couple->pass,
                         "final " + fixed(r.couple->result.final_divergence()) + ", order violations " +
                             std::to_string(r.couple->result.order_violations)});
    }
    return lines;
}

}  // namespace fluxvar
