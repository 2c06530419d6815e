#include "fluxvar/kinetics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fluxvar/error.hpp"

namespace fluxvar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double int_pow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

constexpr std::size_t kMaxReducedArity = 16;

}  // namespace

std::size_t Kinetics::arity() const {
    return std::visit(Overloaded{
                          [](const MassAction& k) { return k.exponents.size(); },
                          [](const MichaelisMenten& k) { return k.km.size(); },
                          [](const PowerLaw&) { return std::size_t{1}; },
                          [](const RationalQuadratic&) { return std::size_t{1}; },
                          [](const ReducedKinetics&) { return std::size_t{1}; },
                      },
                      form_);
}

std::string Kinetics::type_name() const {
    return std::visit(Overloaded{
                          [](const MassAction&) { return std::string("mass_action"); },
                          [](const MichaelisMenten&) { return std::string("michaelis_menten"); },
                          [](const PowerLaw&) { return std::string("power_law"); },
                          [](const RationalQuadratic&) { return std::string("rational_quadratic"); },
                          [](const ReducedKinetics& k) {
                              return "reduced(" + (k.base ? k.base->type_name() : std::string("?")) + ")";
                          },
                      },
                      form_);
}

double Kinetics::operator()(std::span<const double> x) const {
    if (x.size() != arity()) {
        throw DomainError(type_name() + " kinetics expects " + std::to_string(arity()) +
                          " argument(s), got " + std::to_string(x.size()));
    }
    for (double v : x) {
        if (!(v >= 0.0)) throw DomainError("kinetics argument must be nonnegative");
    }
    return evaluate_unchecked(x);
}

double Kinetics::evaluate_unchecked(std::span<const double> x) const {
    return std::visit(
        Overloaded{
            [&](const MassAction& k) {
                double r = k.rate;
                for (std::size_t j = 0; j < x.size(); ++j) r *= int_pow(x[j], k.exponents[j]);
                return r;
            },
            [&](const MichaelisMenten& k) {
                double r = k.vmax;
                for (std::size_t j = 0; j < x.size(); ++j) r *= x[j] / (k.km[j] + x[j]);
                return r;
            },
            [&](const PowerLaw& k) { return x[0] > 0.0 ? k.rate * std::pow(x[0], k.power) : 0.0; },
            [&](const RationalQuadratic& k) { return k.coeff * x[0] * x[0] / (1.0 + x[0]); },
            [&](const ReducedKinetics& k) {
                std::array<double, kMaxReducedArity> args{};
                const double y = x[0];
                for (std::size_t j = 0; j < k.args.size(); ++j) {
                    args[j] = std::max(0.0, k.args[j].scale * y + k.args[j].offset);
                }
                return k.base->evaluate_unchecked(std::span<const double>(args.data(), k.args.size()));
            },
        },
        form_);
}

std::optional<double> Kinetics::supremum() const {
    return std::visit(Overloaded{
                          [](const MichaelisMenten& k) -> std::optional<double> { return k.vmax; },
                          [](const ReducedKinetics& k) -> std::optional<double> { return k.base->supremum(); },
                          [](const auto&) -> std::optional<double> { return std::nullopt; },
                      },
                      form_);
}

std::string Kinetics::parameter_problem() const {
    return std::visit(
        Overloaded{
            [](const MassAction& k) -> std::string {
                if (!(k.rate > 0.0)) return "mass_action rate must be positive";
                if (k.exponents.empty()) return "mass_action needs at least one exponent";
                for (int e : k.exponents) {
                    if (e < 1) return "mass_action exponents must be positive integers";
                }
                return {};
            },
            [](const MichaelisMenten& k) -> std::string {
                if (!(k.vmax > 0.0)) return "michaelis_menten vmax must be positive";
                if (k.km.empty()) return "michaelis_menten needs at least one km";
                for (double km : k.km) {
                    if (!(km > 0.0)) return "michaelis_menten km must be positive";
                }
                return {};
            },
            [](const PowerLaw& k) -> std::string {
                if (!(k.rate > 0.0)) return "power_law rate must be positive";
                if (!(k.power > 0.0)) return "power_law power must be positive";
                return {};
            },
            [](const RationalQuadratic& k) -> std::string {
                if (!(k.coeff > 0.0)) return "rational_quadratic coeff must be positive";
                return {};
            },
            [](const ReducedKinetics& k) -> std::string {
                if (!k.base) return "reduced kinetics without base";
                if (k.args.size() != k.base->arity()) return "reduced kinetics arity mismatch";
                if (k.args.size() > kMaxReducedArity) return "reduced kinetics has too many arguments";
                for (const auto& a : k.args) {
                    if (!(a.scale > 0.0)) return "reduced kinetics scale must be positive";
                }
                return k.base->parameter_problem();
            },
        },
        form_);
}

}  // namespace fluxvar
