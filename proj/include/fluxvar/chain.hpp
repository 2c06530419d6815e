#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fluxvar/kinetics.hpp"

namespace fluxvar {

struct Member {
    std::string species;
    int multiplicity = 1;
};

/// A node of the chain: a formal sum of species with multiplicities.
struct Complex {
    std::vector<Member> members;
};

/// I -> C_1 -> C_2 -> ... -> C_n ->, with kinetics[i] the rate out of complexes[i].
struct ChainSpec {
    double input_rate = 1.0;
    std::vector<Complex> complexes;
    std::vector<Kinetics> kinetics;
    bool allow_shared_species = false;
};

enum class Assumption { Structure, Arity, ZeroAtZero, Monotonicity, Saturation, SharedSpecies };
enum class Severity { Warning, Violation };

const char* to_string(Assumption a);

struct ValidationIssue {
    Assumption assumption;
    Severity severity;
    std::optional<std::size_t> reaction;  // zero-based complex/reaction index
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool simulatable = true;

    bool violates(Assumption a) const;
    bool warns(Assumption a) const;
};

/// Michaelis-Menten vmax below this multiple of I is reported as a warning.
inline constexpr double kSaturationMarginWarning = 1.05;

/// Lists every violated assumption; never throws.
ValidationReport validate_chain(const ChainSpec& spec);

/// Species occurrence inside a complex, resolved to a model-wide index.
struct Slot {
    std::size_t species;
    int multiplicity;
};

/// theta is applied to scale * x[species] + offset; the white-noise gate is
/// the product over terms.
struct GateTerm {
    std::size_t species;
    double scale;
    double offset;
};

/// Compiled, immutable view of a simulatable chain. Species are indexed in order
/// of first appearance.
class ChainModel {
public:
    /// Throws ChainError when validate_chain does not mark the chain simulatable.
    explicit ChainModel(ChainSpec spec);

    const ChainSpec& spec() const noexcept { return spec_; }
    const ValidationReport& validation() const noexcept { return report_; }
    double input_rate() const noexcept { return spec_.input_rate; }

    std::size_t species_count() const noexcept { return names_.size(); }
    std::size_t reaction_count() const noexcept { return spec_.complexes.size(); }
    const std::vector<std::string>& species_names() const noexcept { return names_; }
    std::optional<std::size_t> species_index(const std::string& name) const;

    std::span<const Slot> complex_slots(std::size_t i) const;

    /// Every complex is a single species of multiplicity one.
    bool is_ssc() const noexcept { return ssc_; }
    bool has_shared_species() const noexcept { return shared_; }

    double flux(std::size_t i, std::span<const double> x) const;
    void fluxes(std::span<const double> x, std::span<double> out) const;

    /// dx_s = sum over occurrences of s in complex i of v * (F_{i-1} - F_i), with F_0 = I.
    void drift(std::span<const double> fluxes, std::span<double> dx) const;

    /// Direction of the input perturbation: multiplicities of the first complex.
    std::span<const double> noise_direction() const noexcept { return direction_; }
    std::span<const GateTerm> gate_terms() const noexcept { return gate_; }

private:
    ChainSpec spec_;
    ValidationReport report_;
    std::vector<std::string> names_;
    std::vector<Slot> slots_;
    std::vector<std::size_t> offsets_;
    std::vector<double> direction_;
    std::vector<GateTerm> gate_;
    bool ssc_ = false;
    bool shared_ = false;
};

struct EquilibriumPoint {
    std::vector<double> x;
    double max_residual = 0.0;  // max_i |F_i(x) - I|
};

/// Relative residual bound for the equilibrium solver.
inline constexpr double kEquilibriumTolerance = 1e-10;

/// Deterministic equilibrium F_i = I for all i, solved complex by complex by
/// bracketed bisection. For multi-species complexes the members follow the
/// affine maps fixed by `initial_state` (proportional to multiplicities when
/// empty). Throws ChainError when no bracket is found or evaluation is not
/// monotone.
EquilibriumPoint solve_equilibrium(const ChainModel& model, std::span<const double> initial_state = {});

struct SpeciesMap {
    std::size_t species;         // full-model index
    std::size_t representative;  // full-model index of the complex representative
    double scale;                // d = v_species / v_representative
    double offset;               // c = x(0) - d * x_rep(0)
};

struct AffineReduction {
    std::size_t full_species_count = 0;
    std::vector<std::size_t> representative;  // per complex, full-model index
    std::vector<SpeciesMap> maps;             // non-representative species only
};

struct MscReduction {
    ChainSpec reduced;
    AffineReduction reduction;
};

/// Collapses each complex onto its first listed species. Throws ChainError on
/// shared species.
MscReduction msc_reduce(const ChainModel& model, std::span<const double> initial_state);

/// Full state from a reduced state (reduced species i is the representative of complex i).
std::vector<double> lift_state(const AffineReduction& r, std::span<const double> reduced);
std::vector<double> restrict_state(const AffineReduction& r, std::span<const double> full);

}  // namespace fluxvar
