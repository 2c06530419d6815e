#pragma once

#include <random>
#include <string>
#include <vector>

#include "fluxvar/chain.hpp"
#include "fluxvar/noise.hpp"
#include "fluxvar/simulator.hpp"

namespace fluxvar::testing {

inline Complex single(const std::string& name, int mult = 1) { return Complex{{Member{name, mult}}}; }

inline Complex pair(const std::string& a, const std::string& b, int ma = 1, int mb = 1) {
    return Complex{{Member{a, ma}, Member{b, mb}}};
}

inline Kinetics linear(double rate = 1.0) { return MassAction{rate, {1}}; }
inline Kinetics mm(double vmax, double km = 1.0) { return MichaelisMenten{vmax, {km}}; }

/// I=10, F1 = x1, F2 = 12 x2 / (1 + x2).
inline ChainSpec mm_chain(double vmax = 12.0) {
    return ChainSpec{10.0, {single("X1"), single("X2")}, {linear(), mm(vmax)}, false};
}

/// I=10, F1 = x1^2, F2 = x2^2 / (1 + x2).
inline ChainSpec quadratic_chain() {
    return ChainSpec{10.0, {single("X1"), single("X2")}, {PowerLaw{1.0, 2.0}, RationalQuadratic{1.0}}, false};
}

/// I=4, F1 = 11 x/(1+x), F2 = 10 x/(1+x).
inline ChainSpec bounded_chain() {
    return ChainSpec{4.0, {single("X1"), single("X2")}, {mm(11.0), mm(10.0)}, false};
}

/// Y -> X1+X2 -> X3+X4 with mass action.
inline ChainSpec msc_chain() {
    return ChainSpec{10.0,
                     {single("Y"), pair("X1", "X2"), pair("X3", "X4")},
                     {linear(), MassAction{1.0, {1, 1}}, MassAction{1.0, {1, 1}}},
                     false};
}

/// X1+X2 -> X3 -> X1+X4.
inline ChainSpec shared_chain(bool allow) {
    return ChainSpec{10.0,
                     {pair("X1", "X2"), single("X3"), pair("X1", "X4")},
                     {MassAction{2.0, {1, 1}}, linear(), MassAction{5.0, {1, 1}}},
                     allow};
}

inline SimConfig quick_config(double t_total = 10.0, std::uint64_t paths = 8) {
    SimConfig c;
    c.t_total = t_total;
    c.t_burn = t_total / 2;
    c.n_paths = paths;
    c.record_stride = 10;
    return c;
}

/// Fixed-seed generator for hand-rolled property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace fluxvar::testing
