#include <gtest/gtest.h>

#include <cmath>

#include "fluxvar/analysis.hpp"
#include "fluxvar/error.hpp"
#include "fluxvar/quadrature.hpp"
#include "support.hpp"

using namespace fluxvar;
using namespace fluxvar::testing;

namespace {

QuantityStats synthetic(const std::string& name, double mean, double var, double spread, std::size_t batches = 20) {
    QuantityStats q;
    q.name = name;
    q.count = 1000;
    q.mean = mean;
    q.variance = var;
    q.cv = std::sqrt(var) / mean;
    q.se_var = spread;
    for (std::size_t b = 0; b < batches; ++b) {
        const double wobble = (b % 2 ? 1.0 : -1.0) * spread;
        q.batch_mean.push_back(mean);
        q.batch_variance.push_back(var + wobble);
    }
    return q;
}

Trajectory long_path(const ChainSpec& spec, const NoiseModel& noise, double t_total, std::uint64_t path = 0) {
    SimConfig c;
    c.t_total = t_total;
    c.t_burn = 0.0;
    return simulate_path(ChainModel(spec), noise, c, path);
}

}  // namespace

TEST(Quadrature, PolynomialAndTranscendental) {
    EXPECT_NEAR(adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0), 4.0, 1e-12);
    EXPECT_NEAR(adaptive_simpson([](double x) { return std::exp(-x); }, 0.0, 3.0), 1.0 - std::exp(-3.0), 1e-10);
    EXPECT_NEAR(adaptive_simpson([](double x) { return x; }, 3.0, 1.0), -4.0, 1e-12);
}

TEST(GFunction, ClosedForm) {
    // F(y) = 12 y / (1 + y): 2 * int_0^x (F - 10) = 2 * (12 (x - ln(1 + x)) - 10 x).
    const ChainModel m(mm_chain());
    for (double x : {0.5, 5.0, 9.0}) {
        const double expect = 2.0 * (12.0 * (x - std::log1p(x)) - 10.0 * x);
        EXPECT_NEAR(g_function(m, 1, x), expect, 1e-9);
    }
}

TEST(FluxTable, EmptyEnsembleThrows) {
    EnsembleResult e;
    EXPECT_THROW(flux_table(e), AnalysisError);
    EXPECT_THROW(species_table(e), AnalysisError);
}

TEST(Ordering, DecreasingViolatedInconclusive) {
    FluxStats s;
    s.input_rate = 10.0;
    s.fluxes = {synthetic("F_1", 10, 2.0, 0.01), synthetic("F_2", 10, 1.0, 0.01), synthetic("F_3", 10, 1.5, 0.01)};
    const auto r = check_ordering(s);
    ASSERT_EQ(r.pairs.size(), 2u);
    EXPECT_EQ(r.pairs[0].verdict, Verdict::StrictlyDecreasing);
    EXPECT_EQ(r.pairs[1].verdict, Verdict::Violated);
    EXPECT_EQ(r.overall, Verdict::Violated);

    FluxStats eq;
    eq.fluxes = {synthetic("F_1", 10, 1.0, 1e-6), synthetic("F_2", 10, 1.0, 1e-6)};
    const auto flat = check_ordering(eq);
    EXPECT_EQ(flat.pairs[0].verdict, Verdict::Inconclusive);
    EXPECT_EQ(flat.overall, Verdict::Inconclusive);
}

TEST(Ordering, FallsBackToIndependentErrorsWithoutBatches) {
    FluxStats s;
    QuantityStats a, b;
    a.name = "F_1";
    a.variance = 2.0;
    a.se_var = 0.3;
    b.name = "F_2";
    b.variance = 1.0;
    b.se_var = 0.4;
    s.fluxes = {a, b};
    const auto r = check_ordering(s);
    EXPECT_DOUBLE_EQ(r.pairs[0].pooled_se, 0.5);
    EXPECT_EQ(r.pairs[0].verdict, Verdict::Inconclusive);
}

TEST(Ordering, InputIncludedWhenPresent) {
    FluxStats s;
    s.input = synthetic("I+xi", 10, 8.0, 0.05);
    s.fluxes = {synthetic("F_1", 10, 6.8, 0.05), synthetic("F_2", 10, 3.9, 0.05)};
    EXPECT_EQ(check_ordering(s).pairs.size(), 2u);
    EXPECT_EQ(check_ordering(s, OrderingMetric::Variance, false).pairs.size(), 1u);
    EXPECT_EQ(check_ordering(s, OrderingMetric::CV).overall, Verdict::StrictlyDecreasing);
}

TEST(TimeAverage, WindowTooShort) {
    const auto traj = long_path(mm_chain(), WhiteNoiseInput{1.0, {}}, 50.0);
    EXPECT_THROW(time_average_check(traj, 10.0), AnalysisError);
}

TEST(TimeAverage, ZeroInputIsExact) {
    const ChainModel m(ChainSpec{10.0, {single("X1"), single("X2")}, {linear(), linear(2.0)}, false});
    SimConfig c;
    c.t_total = 200.0;
    const auto traj = simulate_path(m, FrozenOUNoise{0.0, -10.0}, c, 0);
    const auto r = time_average_check(traj, 10.0);
    for (const auto& e : r.fluxes) {
        EXPECT_EQ(e.a, 10.0);
        EXPECT_EQ(e.b, 0.0);
    }
    EXPECT_EQ(r.input->b, 0.0);
    EXPECT_TRUE(r.all_pass());
}

TEST(TimeAverage, WhiteNoiseHasNoInputTerm) {
    const auto traj = long_path(mm_chain(), WhiteNoiseInput{1.0, {}}, 300.0);
    const auto r = time_average_check(traj, 10.0);
    EXPECT_FALSE(r.input.has_value());
    EXPECT_TRUE(r.part2.empty());
    EXPECT_EQ(r.part3.size(), 1u);
}

TEST(TimeAverage, QuadraticChainLongPath) {
    const auto traj = long_path(quadratic_chain(), FrozenOUNoise{4.0, -10.0}, 5000.0);
    const auto r = time_average_check(traj, 10.0);
    EXPECT_NEAR(r.fluxes[0].a, 10.0, 0.1);
    EXPECT_TRUE(r.all_pass());
    EXPECT_GE(r.input->b, r.fluxes[0].b);
    EXPECT_GE(r.fluxes[0].b, r.fluxes[1].b);
}

TEST(TimeAverage, UnboundedOUSecondMoment) {
    const ChainSpec spec{10.0, {single("X")}, {linear()}, false};
    const auto traj = long_path(spec, FrozenOUNoise{4.0}, 5000.0, 1);
    const auto r = time_average_check(traj, 10.0);
    EXPECT_NEAR(r.input->b, 8.0, 0.4);
}

TEST(GDiagnostic, ZeroNoiseTermsVanish) {
    const ChainModel m(ChainSpec{10.0, {single("X1"), single("X2")}, {linear(), linear(2.0)}, false});
    SimConfig c;
    c.t_total = 200.0;
    const auto traj = simulate_path(m, FrozenOUNoise{0.0, -10.0}, c, 0);
    const auto g = g_diagnostic(traj, m);
    ASSERT_EQ(g.terms.size(), 1u);
    EXPECT_EQ(g.terms[0].dissipation, 0.0);
    EXPECT_EQ(g.terms[0].cross, 0.0);
    EXPECT_TRUE(g.terms[0].balanced);
}

TEST(GDiagnostic, BalancesOnQuadraticChain) {
    const auto traj = long_path(quadratic_chain(), FrozenOUNoise{4.0, -10.0}, 5000.0, 2);
    const ChainModel m(quadratic_chain());
    const auto g = g_diagnostic(traj, m);
    ASSERT_EQ(g.terms.size(), 1u);
    const auto& t = g.terms[0];
    EXPECT_LT(std::abs(t.balance), 3 * t.se_balance);
    EXPECT_GT(t.cross, 3 * t.se_cross);
    EXPECT_NEAR(t.boundary, t.balance, 3 * t.se_balance + 1e-3);
}

TEST(GDiagnostic, RejectsMultiSpeciesComplexes) {
    const ChainModel m(msc_chain());
    SimConfig c;
    c.t_total = 10.0;
    c.t_burn = 0.0;
    const auto traj = simulate_path(m, WhiteNoiseInput{1.0, {}}, c, 0);
    EXPECT_THROW(g_diagnostic(traj, m), AnalysisError);
}
