#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fluxvar/error.hpp"
#include "fluxvar/kinetics.hpp"
#include "support.hpp"

using namespace fluxvar;
using fluxvar::testing::Gen;
using fluxvar::testing::mm;

namespace {

double eval(const Kinetics& k, std::vector<double> x) { return eval_kinetics(k, x); }

Kinetics random_kinetics(Gen& g, std::size_t& arity) {
    switch (g.integer(0, 3)) {
        case 0: {
            MassAction m{g.uniform(0.1, 5.0), {}};
            arity = static_cast<std::size_t>(g.integer(1, 3));
            for (std::size_t i = 0; i < arity; ++i) m.exponents.push_back(g.integer(1, 3));
            return m;
        }
        case 1: {
            MichaelisMenten m{g.uniform(0.1, 20.0), {}};
            arity = static_cast<std::size_t>(g.integer(1, 3));
            for (std::size_t i = 0; i < arity; ++i) m.km.push_back(g.uniform(0.05, 5.0));
            return m;
        }
        case 2:
            arity = 1;
            return PowerLaw{g.uniform(0.1, 5.0), g.uniform(0.2, 3.0)};
        default:
            arity = 1;
            return RationalQuadratic{g.uniform(0.1, 5.0)};
    }
}

}  // namespace

TEST(Kinetics, MichaelisMentenAtEquilibrium) { EXPECT_DOUBLE_EQ(eval(MichaelisMenten{12.0, {1.0}}, {5.0}), 10.0); }

TEST(Kinetics, MassActionProduct) { EXPECT_DOUBLE_EQ(eval(MassAction{2.0, {1, 1}}, {2.0, 3.0}), 12.0); }

TEST(Kinetics, PowerLawAndRationalQuadratic) {
    EXPECT_DOUBLE_EQ(eval(PowerLaw{1.0, 2.0}, {3.0}), 9.0);
    EXPECT_DOUBLE_EQ(eval(RationalQuadratic{2.0}, {3.0}), 2.0 * 9.0 / 4.0);
}

TEST(Kinetics, ZeroArgumentGivesZero) {
    Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 0;
        const Kinetics k = random_kinetics(g, n);
        std::vector<double> x(n);
        for (auto& v : x) v = g.uniform(0.1, 10.0);
        x[static_cast<std::size_t>(g.integer(0, static_cast<int>(n) - 1))] = 0.0;
        EXPECT_EQ(eval_kinetics(k, x), 0.0) << k.type_name();
    }
}

TEST(Kinetics, ArityMismatchAndNegativeArgumentThrow) {
    const Kinetics k = MassAction{1.0, {1, 1}};
    EXPECT_THROW(eval(k, {1.0}), DomainError);
    EXPECT_THROW(eval(k, {1.0, -0.5}), DomainError);
    EXPECT_THROW(eval(mm(3.0), {1.0, 2.0}), DomainError);
}

TEST(Kinetics, StrictlyIncreasingProperty) {
    Gen g(12345);
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t n = 0;
        const Kinetics k = random_kinetics(g, n);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = g.uniform(0.0, 20.0);
            y[i] = x[i] + (g.integer(0, 1) ? g.uniform(1e-3, 5.0) : 0.0);
        }
        const auto bump = static_cast<std::size_t>(g.integer(0, static_cast<int>(n) - 1));
        y[bump] = x[bump] + g.uniform(1e-3, 5.0);
        bool positive = true;
        for (std::size_t i = 0; i < n; ++i) positive = positive && x[i] > 0.0;
        const double fx = eval_kinetics(k, x);
        const double fy = eval_kinetics(k, y);
        EXPECT_TRUE(std::isfinite(fx) && fx >= 0.0);
        if (positive)
            EXPECT_GT(fy, fx) << k.type_name() << " trial " << trial;
        else
            EXPECT_GE(fy, fx) << k.type_name() << " trial " << trial;
    }
}

TEST(Kinetics, SupremumAndParameterChecks) {
    EXPECT_EQ(Kinetics(MichaelisMenten{12.0, {1.0}}).supremum(), 12.0);
    EXPECT_FALSE(Kinetics(PowerLaw{1.0, 2.0}).supremum().has_value());
    EXPECT_TRUE(Kinetics(MassAction{1.0, {1}}).parameter_problem().empty());
    EXPECT_FALSE(Kinetics(MassAction{-1.0, {1}}).parameter_problem().empty());
    EXPECT_FALSE(Kinetics(MichaelisMenten{5.0, {0.0}}).parameter_problem().empty());
}
