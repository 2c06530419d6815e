#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace fluxvar {

class Kinetics;

/// rate * prod_j x_j^{e_j}
struct MassAction {
    double rate = 1.0;
    std::vector<int> exponents;
};

/// vmax * prod_j x_j / (km_j + x_j)
struct MichaelisMenten {
    double vmax = 1.0;
    std::vector<double> km;
};

/// rate * x^power, single argument.
struct PowerLaw {
    double rate = 1.0;
    double power = 1.0;
};

/// coeff * x^2 / (1 + x), single argument.
struct RationalQuadratic {
    double coeff = 1.0;
};

/// One argument of a reduced kinetics: the base argument is scale*y + offset,
/// floored at zero.
struct AffineArg {
    double scale = 1.0;
    double offset = 0.0;
};

/// Kinetics of a complex re-expressed through a single representative species.
/// Produced by msc_reduce, never read from documents.
struct ReducedKinetics {
    std::shared_ptr<const Kinetics> base;
    std::vector<AffineArg> args;
};

using KineticsForm =
    std::variant<MassAction, MichaelisMenten, PowerLaw, RationalQuadratic, ReducedKinetics>;

/// Reaction rate F of one complex. A closed family: every member is zero when
/// any argument is zero and increasing in each argument on the positive orthant.
class Kinetics {
public:
    Kinetics() : form_(PowerLaw{}) {}
    Kinetics(KineticsForm form) : form_(std::move(form)) {}  // NOLINT(implicit)
    template <class T>
        requires(!std::is_same_v<std::decay_t<T>, KineticsForm> && std::is_constructible_v<KineticsForm, T>)
    Kinetics(T&& form) : form_(std::forward<T>(form)) {}  // NOLINT(implicit)

    const KineticsForm& form() const noexcept { return form_; }

    std::size_t arity() const;
    std::string type_name() const;

    /// Checked evaluation. Throws DomainError on arity mismatch or a negative
    /// argument.
    double operator()(std::span<const double> x) const;

    /// Hot-path evaluation; the caller guarantees arity and x >= 0.
    double evaluate_unchecked(std::span<const double> x) const;

    /// lim F as every argument goes to infinity; nullopt when unbounded.
    std::optional<double> supremum() const;

    /// Analytic parameter check for the zero-at-zero and strict-monotonicity
    /// properties. Returns an empty string when both hold, otherwise a reason.
    std::string parameter_problem() const;

private:
    KineticsForm form_;
};

inline double eval_kinetics(const Kinetics& k, std::span<const double> x) { return k(x); }

}  // namespace fluxvar
