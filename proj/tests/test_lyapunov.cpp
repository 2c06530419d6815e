#include <gtest/gtest.h>

#include <cmath>

#include "fluxvar/error.hpp"
#include "fluxvar/lyapunov.hpp"
#include "support.hpp"

using namespace fluxvar;
using namespace fluxvar::testing;

namespace {

/// Central-difference generator: drift . grad V + (1/2) sigma^2 theta^2 u^T H u.
double fd_generator(const ChainModel& m, const LyapunovSpec& s, std::vector<double> x) {
    const std::size_t n = x.size();
    auto V = [&](const std::vector<double>& y) { return lyapunov_value(m, s.V, s.xbar, y); };
    std::vector<double> f(m.reaction_count()), drift(n);
    m.fluxes(x, f);
    m.drift(f, drift);
    const auto u = m.noise_direction();
    const double h = 1e-2;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = x, b = x;
        a[i] += h;
        b[i] -= h;
        total += drift[i] * (V(a) - V(b)) / (2 * h);
    }
    double hess = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (u[i] == 0.0 || u[j] == 0.0) continue;
            auto pp = x, pm = x, mp = x, mm = x;
            pp[i] += h, pp[j] += h;
            pm[i] += h, pm[j] -= h;
            mp[i] -= h, mp[j] += h;
            mm[i] -= h, mm[j] -= h;
            hess += u[i] * u[j] * (V(pp) - V(pm) - V(mp) + V(mm)) / (4 * h * h);
        }
    }
    const double theta = gate_value(ThetaCutoff{s.delta}, m.gate_terms(), x);
    return total + 0.5 * s.sigma * s.sigma * theta * theta * hess;
}

LyapunovOptions fast() {
    LyapunovOptions o;
    o.certify_points = 20000;
    return o;
}

}  // namespace

TEST(Lyapunov, ValueVanishesAtEquilibriumAndIsNonnegative) {
    const ChainModel m(mm_chain());
    const std::vector<double> V{3.0, 1.0}, xbar{10.0, 5.0};
    EXPECT_EQ(lyapunov_value(m, V, xbar, xbar), 0.0);
    Gen g(5);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> x{g.uniform(0, 50), g.uniform(0, 50)};
        EXPECT_GE(lyapunov_value(m, V, xbar, x), 0.0);
    }
}

TEST(Lyapunov, GeneratorAtEquilibrium) {
    const ChainModel m(mm_chain());
    const std::vector<double> V{4.0, 1.0}, xbar{10.0, 5.0};
    EXPECT_DOUBLE_EQ(generator_apply(m, V, xbar, 1.5, ThetaCutoff{}, xbar), 0.5 * 1.5 * 1.5 * 5.0);
}

TEST(Lyapunov, SingleLinearSpecies) {
    const ChainModel m(ChainSpec{10.0, {single("X")}, {linear()}, false});
    const std::vector<double> V{1.0}, xbar{10.0};
    for (double x : {0.0, 3.0, 10.0, 17.5}) {
        const std::vector<double> p{x};
        EXPECT_DOUBLE_EQ(generator_apply(m, V, xbar, 0.0, ThetaCutoff{}, p), -(x - 10.0) * (x - 10.0));
    }
    const auto spec = construct_coefficients(m, 1.0, ThetaCutoff{}, 50.0, fast());
    EXPECT_EQ(spec.V, std::vector<double>{1.0});
    EXPECT_GE(spec.margin, 0.0);
    const auto big = construct_coefficients(m, 1.0, ThetaCutoff{}, 1000.0, fast());
    EXPECT_GE(big.margin, 0.0);
}

TEST(Lyapunov, DimensionMismatchThrows) {
    const ChainModel m(mm_chain());
    const std::vector<double> V{1.0}, xbar{10.0, 5.0}, x{1.0, 1.0};
    EXPECT_THROW(generator_apply(m, V, xbar, 1.0, ThetaCutoff{}, x), DomainError);
}

TEST(Lyapunov, MatchesFiniteDifferenceOracle) {
    Gen g(31);
    const ChainSpec specs[] = {mm_chain(), quadratic_chain(), bounded_chain()};
    for (const auto& cs : specs) {
        const ChainModel m(cs);
        const auto s = construct_coefficients(m, 1.3, ThetaCutoff{}, 100.0, fast());
        for (int k = 0; k < 100; ++k) {
            std::vector<double> x(m.species_count());
            for (auto& v : x) v = k < 10 ? g.uniform(0.0, 2e-3) : g.uniform(0.0, 100.0);
            const double a = generator_apply(m, s, x);
            const double b = fd_generator(m, s, x);
            EXPECT_LE(std::abs(a - b), 1e-6 * std::max({std::abs(a), std::abs(b), 1.0})) << k;
        }
    }
}

TEST(Lyapunov, ReducedMscChainMatchesOracle) {
    const ChainModel full(msc_chain());
    const auto x0 = solve_equilibrium(full).x;
    const ChainModel m(msc_reduce(full, x0).reduced);
    const auto s = construct_coefficients(m, 2.0, ThetaCutoff{}, 100.0, fast());
    EXPECT_GE(s.margin, 0.0);
    Gen g(8);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x(m.species_count());
        for (auto& v : x) v = g.uniform(0.0, 100.0);
        const double a = generator_apply(m, s, x);
        const double b = fd_generator(m, s, x);
        EXPECT_LE(std::abs(a - b), 1e-6 * std::max({std::abs(a), std::abs(b), 1.0}));
    }
}

TEST(Lyapunov, MultiplicityTwoRepresentative) {
    const ChainSpec spec{6.0, {single("A", 2), single("B")}, {MichaelisMenten{9.0, {1.0}}, linear()}, false};
    const ChainModel m(spec);
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 60.0, fast());
    EXPECT_GE(s.margin, 0.0);
    Gen g(9);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> x{g.uniform(0, 60), g.uniform(0, 60)};
        const double a = generator_apply(m, s, x);
        EXPECT_LE(std::abs(a - fd_generator(m, s, x)), 1e-6 * std::max(std::abs(a), 1.0));
    }
}

TEST(Lyapunov, MichaelisMentenChainCertifies) {
    const ChainModel m(mm_chain());
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0);
    EXPECT_EQ(s.V.back(), 1.0);
    EXPECT_GT(s.k, 0.0);
    EXPECT_GE(s.margin, 0.0);
    EXPECT_EQ(s.points_checked, 100000u);
    // Frozen regression values for this construction.
    EXPECT_EQ(s.V, (std::vector<double>{1.0, 1.0}));
    EXPECT_NEAR(s.k, 1.881188118811881, 1e-12);
}

TEST(Lyapunov, DoublingNeededNearSaturation) {
    // F_1(R) only slightly above I forces V_1 well above V_2.
    const ChainSpec spec{10.0, {single("X1"), single("X2")}, {MichaelisMenten{10.5, {1.0}}, linear()}, false};
    const ChainModel m(spec);
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0, fast());
    EXPECT_GT(s.V[0], 1.0);
    EXPECT_GE(s.margin, 0.0);
}

TEST(Lyapunov, SaturationDiagnostic) {
    EXPECT_THROW(construct_coefficients(mm_chain(9.0), 1.0, ThetaCutoff{}, 100.0, fast()), SaturationError);
    // Valid chain, but the radius ends before F_2 exceeds I.
    EXPECT_THROW(construct_coefficients(ChainModel(mm_chain()), 1.0, ThetaCutoff{}, 4.0, fast()), SaturationError);
}

TEST(Lyapunov, VerifyDriftAtEquilibrium) {
    const ChainModel m(mm_chain());
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0, fast());
    const auto r = verify_drift(s, m, s.xbar);
    double sum_v = 0.0;
    for (double v : s.V) sum_v += v;
    EXPECT_DOUBLE_EQ(r.min_margin, s.c - s.k * std::hypot(10.0, 5.0) - 0.5 * sum_v);
    EXPECT_EQ(r.argmin, 0u);
}

TEST(Lyapunov, SaturatingDirectionKeepsDriftFarOutside) {
    // F_2 saturates at 12 > I, so LV falls like -2 V_2 x_2 while k < 2 V_2
    const ChainModel m(mm_chain());
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 20.0, fast());
    ASSERT_LT(s.k, 2.0 * s.V[1]);
    const std::vector<double> far{0.0, 1e6};
    EXPECT_GT(verify_drift(s, m, far).min_margin, 0.0);
}

TEST(Lyapunov, VerifyDriftFindsWorstPoint) {
    const ChainModel m(mm_chain());
    auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 20.0, fast());
    s.k = 1e3;
    const std::vector<double> pts{10.0, 5.0, 0.0, 1e6, 3.0, 3.0};
    const auto r = verify_drift(s, m, pts);
    EXPECT_LT(r.min_margin, 0.0);
    EXPECT_EQ(r.argmin, 1u);
    EXPECT_EQ(r.worst_point, (std::vector<double>{0.0, 1e6}));
}

TEST(Lyapunov, FreshRandomPointsStayCertified) {
    const ChainModel m(mm_chain());
    const auto s = construct_coefficients(m, 1.0, ThetaCutoff{}, 100.0);
    Gen g(4242);
    std::vector<double> pts;
    for (int i = 0; i < 10000; ++i) {
        pts.push_back(g.uniform(0, 100));
        pts.push_back(g.uniform(0, 100));
    }
    EXPECT_GE(verify_drift(s, m, pts).min_margin, 0.0);
}

TEST(Lyapunov, ParallelCertificationMatchesSerial) {
    const ChainModel m(quadratic_chain());
    const auto s = construct_coefficients(m, 4.0, ThetaCutoff{}, 100.0, fast());
    const auto serial = certify_grid_serial(s, m, 30000);
    for (int threads : {1, 2, 5}) {
        const auto par = certify_grid(s, m, 30000, threads);
        EXPECT_EQ(par.min_margin, serial.min_margin);
        EXPECT_EQ(par.argmin, serial.argmin);
    }
}

TEST(Lyapunov, RejectsMultiSpeciesComplexes) {
    EXPECT_THROW(construct_coefficients(ChainModel(msc_chain()), 1.0, ThetaCutoff{}, 100.0, fast()), ChainError);
}
