#include "fluxvar/analysis.hpp"

#include <cmath>
#include <limits>

#include "fluxvar/error.hpp"
#include "fluxvar/quadrature.hpp"
#include "fluxvar/stats.hpp"

namespace fluxvar {

namespace {

double metric_value(const QuantityStats& q, OrderingMetric m) { return m == OrderingMetric::Variance ? q.variance : q.cv; }

double metric_se(const QuantityStats& q, OrderingMetric m) { return m == OrderingMetric::Variance ? q.se_var : q.se_cv; }

std::vector<double> batch_metric(const QuantityStats& q, OrderingMetric m) {
    std::vector<double> out(q.batch_variance.size());
    for (std::size_t b = 0; b < out.size(); ++b)
        out[b] = m == OrderingMetric::Variance ? q.batch_variance[b]
                                               : coefficient_of_variation(q.batch_mean[b], q.batch_variance[b]);
    return out;
}

Verdict classify(double difference, double se) {
    if (!(se >= 0.0) || !std::isfinite(difference)) return Verdict::Inconclusive;
    if (difference > kSignificance * se) return Verdict::StrictlyDecreasing;
    if (difference < -kSignificance * se) return Verdict::Violated;
    return Verdict::Inconclusive;
}

struct Window {
    std::size_t first = 0;
    std::size_t count = 0;
    double length = 0.0;
};

Window post_burn(const Trajectory& traj, const TimeAverageOptions& options) {
    Window w;
    while (w.first < traj.size() && traj.times[w.first] < options.t_burn - 1e-9) ++w.first;
    w.count = traj.size() - w.first;
    if (w.count >= 2) w.length = traj.times.back() - traj.times[w.first];
    if (w.count < 2 || w.length < options.min_window)
        throw AnalysisError("post-burn window of " + std::to_string(w.length) + " time units is shorter than " +
                            std::to_string(options.min_window));
    if (options.n_batches < 2 || w.count < options.n_batches)
        throw AnalysisError("too few recorded samples for " + std::to_string(options.n_batches) + " batches");
    return w;
}

struct SeriesSummary {
    double mean = 0.0;
    double se = 0.0;
};

SeriesSummary summarize_series(const std::vector<double>& series, std::size_t batches) {
    double sum = 0.0;
    for (double v : series) sum += v;
    const auto bm = batch_means(series, batches);
    return {sum / static_cast<double>(series.size()), batch_standard_error(bm)};
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::StrictlyDecreasing: return "strictly-decreasing";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(OrderingMetric m) { return m == OrderingMetric::Variance ? "variance" : "cv"; }

FluxStats flux_table(const EnsembleResult& result) {
    if (result.fluxes.empty() || result.fluxes.front().count == 0)
        throw AnalysisError("ensemble has no post-burn samples");
    return {result.input_rate, result.input, result.fluxes};
}

std::vector<QuantityStats> species_table(const EnsembleResult& result) {
    if (result.species.empty() || result.species.front().count == 0)
        throw AnalysisError("ensemble has no post-burn samples");
    return result.species;
}

OrderingReport check_ordering(const FluxStats& stats, OrderingMetric metric, bool include_input) {
    std::vector<const QuantityStats*> chain;
    if (include_input && stats.input) chain.push_back(&*stats.input);
    for (const auto& f : stats.fluxes) chain.push_back(&f);

    OrderingReport report;
    report.metric = metric;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const QuantityStats& a = *chain[i];
        const QuantityStats& b = *chain[i + 1];
        PairVerdict p;
        p.upper = a.name;
        p.lower = b.name;
        p.upper_value = metric_value(a, metric);
        p.lower_value = metric_value(b, metric);
        p.difference = p.upper_value - p.lower_value;
        if (a.batch_variance.size() >= 2 && a.batch_variance.size() == b.batch_variance.size()) {
            const auto ba = batch_metric(a, metric);
            const auto bb = batch_metric(b, metric);
            std::vector<double> diff(ba.size());
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = ba[k] - bb[k];
            p.pooled_se = batch_standard_error(diff);
        } else {
            p.pooled_se = std::hypot(metric_se(a, metric), metric_se(b, metric));
        }
        p.verdict = classify(p.difference, p.pooled_se);
        report.pairs.push_back(std::move(p));
    }

    if (report.pairs.empty()) return report;
    bool all_decreasing = true;
    bool any_violated = false;
    for (const auto& p : report.pairs) {
        all_decreasing = all_decreasing && p.verdict == Verdict::StrictlyDecreasing;
        any_violated = any_violated || p.verdict == Verdict::Violated;
    }
    report.overall = all_decreasing ? Verdict::StrictlyDecreasing
                     : any_violated ? Verdict::Violated
                                    : Verdict::Inconclusive;
    return report;
}

std::vector<MeanCheck> check_mean_flux(const FluxStats& stats) {
    std::vector<MeanCheck> out;
    for (const auto& f : stats.fluxes) {
        MeanCheck m{f.name, f.mean, f.se_mean, false};
        const double gap = std::abs(f.mean - stats.input_rate);
        // A zero standard error means a deterministic run; then the identity must hold to rounding.
        m.pass = gap <= kSignificance * f.se_mean || gap <= 1e-9 * stats.input_rate;
        out.push_back(m);
    }
    return out;
}

bool TimeAverageReport::all_pass() const {
    for (bool b : part1)
        if (!b) return false;
    for (const auto& c : part2)
        if (!c.pass) return false;
    for (const auto& c : part3)
        if (!c.pass) return false;
    return true;
}

TimeAverageReport time_average_check(const Trajectory& traj, double input_rate, const TimeAverageOptions& options) {
    const Window w = post_burn(traj, options);
    const std::size_t nr = traj.n_reactions;
    const double I = input_rate;

    TimeAverageReport report;
    report.window = w.length;

    std::vector<std::vector<double>> sq(nr, std::vector<double>(w.count));
    std::vector<double> buf(w.count);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t r = 0; r < w.count; ++r) {
            const double f = traj.flux(w.first + r)[i];
            buf[r] = f;
            sq[i][r] = (f - I) * (f - I);
        }
        TimeAverageEntry e;
        e.name = "F_" + std::to_string(i + 1);
        const auto a = summarize_series(buf, options.n_batches);
        const auto b = summarize_series(sq[i], options.n_batches);
        e.a = a.mean;
        e.se_a = a.se;
        e.b = b.mean;
        e.se_b = b.se;
        report.fluxes.push_back(e);
        const double gap = std::abs(e.a - I);
        report.part1.push_back(gap <= kSignificance * e.se_a || gap <= 1e-9 * I);
    }

    auto inequality = [&](const std::string& lhs, const std::string& rhs, const std::vector<double>& u,
                          const std::vector<double>& v) {
        std::vector<double> d(u.size());
        for (std::size_t r = 0; r < d.size(); ++r) d[r] = u[r] - v[r];
        const auto s = summarize_series(d, options.n_batches);
        return InequalityCheck{lhs, rhs, s.mean, s.se, s.mean >= -kSignificance * s.se};
    };

    if (traj.input_is_process) {
        std::vector<double> xi(w.count), xi2(w.count);
        for (std::size_t r = 0; r < w.count; ++r) {
            xi[r] = traj.input_noise[w.first + r];
            xi2[r] = xi[r] * xi[r];
        }
        TimeAverageEntry e;
        e.name = "xi";
        const auto a = summarize_series(xi, options.n_batches);
        const auto b = summarize_series(xi2, options.n_batches);
        e.a = a.mean;
        e.se_a = a.se;
        e.b = b.mean;
        e.se_b = b.se;
        report.input = e;
        for (std::size_t i = 0; i < nr; ++i) report.part2.push_back(inequality("B0", "B" + std::to_string(i + 1), xi2, sq[i]));
    }
    for (std::size_t i = 0; i + 1 < nr; ++i)
        report.part3.push_back(
            inequality("B" + std::to_string(i + 1), "B" + std::to_string(i + 2), sq[i], sq[i + 1]));
    return report;
}

double g_function(const ChainModel& model, std::size_t flux, double x) {
    const auto slots = model.complex_slots(flux);
    if (slots.size() != 1) throw AnalysisError("G diagnostic needs single-species complexes");
    const auto& k = model.spec().kinetics[flux];
    const double I = model.input_rate();
    const double v = static_cast<double>(slots[0].multiplicity);
    auto integrand = [&](double y) {
        const double arg = std::max(y, 0.0);
        return k.evaluate_unchecked(std::span<const double>(&arg, 1)) - I;
    };
    return 2.0 / v * adaptive_simpson(integrand, 0.0, x, 1e-10);
}

GDiagnostic g_diagnostic(const Trajectory& traj, const ChainModel& model, const TimeAverageOptions& options) {
    if (traj.n_reactions != model.reaction_count() || traj.n_species != model.species_count())
        throw DomainError("trajectory does not belong to this chain");
    for (std::size_t i = 0; i < model.reaction_count(); ++i)
        if (model.complex_slots(i).size() != 1) throw AnalysisError("G diagnostic needs single-species complexes");

    TimeAverageOptions relaxed = options;
    relaxed.min_window = 0.0;
    const Window w = post_burn(traj, relaxed);
    const double I = model.input_rate();

    GDiagnostic out;
    out.window = w.length;
    std::vector<double> dis(w.count), cross(w.count), bal(w.count);
    for (std::size_t i = 1; i < model.reaction_count(); ++i) {
        for (std::size_t r = 0; r < w.count; ++r) {
            const auto f = traj.flux(w.first + r);
            const double e = f[i] - I;
            const double prev = f[i - 1] - I;
            dis[r] = -2.0 * e * e;
            cross[r] = 2.0 * e * prev;
            bal[r] = dis[r] + cross[r];
        }
        GTerms t;
        t.flux = i;
        t.dissipation = summarize_series(dis, options.n_batches).mean;
        const auto c = summarize_series(cross, options.n_batches);
        const auto b = summarize_series(bal, options.n_batches);
        t.cross = c.mean;
        t.se_cross = c.se;
        t.balance = b.mean;
        t.se_balance = b.se;
        const std::size_t s = model.complex_slots(i)[0].species;
        const double x_start = traj.state(w.first)[s];
        const double x_end = traj.state(traj.size() - 1)[s];
        t.boundary = w.length > 0.0 ? (g_function(model, i, x_end) - g_function(model, i, x_start)) / w.length : 0.0;
        t.balanced = std::abs(t.balance) < kSignificance * t.se_balance || std::abs(t.balance) == 0.0;
        out.terms.push_back(t);
    }
    return out;
}

}  // namespace fluxvar
