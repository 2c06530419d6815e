#include "fluxvar/chain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fluxvar/error.hpp"

namespace fluxvar {

namespace {

constexpr std::size_t kMaxComplexSize = 16;
constexpr int kMaxDoublings = 200;

void add(ValidationReport& r, Assumption a, Severity s, std::optional<std::size_t> i, std::string msg) {
    r.issues.push_back({a, s, i, std::move(msg)});
    if (s == Severity::Violation) r.simulatable = false;
}

bool zero_at_zero(const Kinetics& k) {
    const std::size_t n = k.arity();
    std::vector<double> x(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = 0.0;
        if (k.evaluate_unchecked(x) != 0.0) return false;
        x[j] = 1.0;
    }
    return true;
}

}  // namespace

const char* to_string(Assumption a) {
    switch (a) {
        case Assumption::Structure: return "structure";
        case Assumption::Arity: return "arity";
        case Assumption::ZeroAtZero: return "zero-at-zero";
        case Assumption::Monotonicity: return "monotonicity";
        case Assumption::Saturation: return "saturation";
        case Assumption::SharedSpecies: return "shared-species";
    }
    return "?";
}

bool ValidationReport::violates(Assumption a) const {
    return std::any_of(issues.begin(), issues.end(), [a](const ValidationIssue& i) {
        return i.assumption == a && i.severity == Severity::Violation;
    });
}

bool ValidationReport::warns(Assumption a) const {
    return std::any_of(issues.begin(), issues.end(), [a](const ValidationIssue& i) {
        return i.assumption == a && i.severity == Severity::Warning;
    });
}

ValidationReport validate_chain(const ChainSpec& spec) {
    ValidationReport r;
    const double I = spec.input_rate;
    if (!(I > 0.0) || !std::isfinite(I)) {
        add(r, Assumption::Structure, Severity::Violation, std::nullopt, "input rate must be positive and finite");
    }
    if (spec.complexes.empty()) {
        add(r, Assumption::Structure, Severity::Violation, std::nullopt, "chain has no complexes");
    }
    if (spec.kinetics.size() != spec.complexes.size()) {
        add(r, Assumption::Structure, Severity::Violation, std::nullopt,
            "need one kinetics per complex (" + std::to_string(spec.complexes.size()) + " complexes, " +
                std::to_string(spec.kinetics.size()) + " kinetics)");
    }

    std::map<std::string, std::set<std::size_t>> where;
    for (std::size_t i = 0; i < spec.complexes.size(); ++i) {
        const auto& members = spec.complexes[i].members;
        if (members.empty()) {
            add(r, Assumption::Structure, Severity::Violation, i, "complex is empty");
            continue;
        }
        if (members.size() > kMaxComplexSize) {
            add(r, Assumption::Structure, Severity::Violation, i, "complex has more than 16 species");
        }
        std::set<std::string> seen;
        for (const auto& m : members) {
            if (m.species.empty()) add(r, Assumption::Structure, Severity::Violation, i, "empty species name");
            if (m.multiplicity < 1) {
                add(r, Assumption::Structure, Severity::Violation, i,
                    "multiplicity of " + m.species + " must be a positive integer");
            }
            if (!seen.insert(m.species).second) {
                add(r, Assumption::Structure, Severity::Violation, i, "species " + m.species + " repeated in complex");
            }
            where[m.species].insert(i);
        }
    }

    for (const auto& [name, complexes] : where) {
        if (complexes.size() > 1) {
            add(r, Assumption::SharedSpecies, spec.allow_shared_species ? Severity::Warning : Severity::Violation,
                *complexes.begin(),
                "species " + name + " appears in " + std::to_string(complexes.size()) + " complexes");
        }
    }

    const std::size_t n = std::min(spec.kinetics.size(), spec.complexes.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Kinetics& k = spec.kinetics[i];
        if (k.arity() != spec.complexes[i].members.size()) {
            add(r, Assumption::Arity, Severity::Violation, i,
                k.type_name() + " kinetics has arity " + std::to_string(k.arity()) + " but complex has " +
                    std::to_string(spec.complexes[i].members.size()) + " species");
            continue;
        }
        if (auto problem = k.parameter_problem(); !problem.empty()) {
            add(r, Assumption::Monotonicity, Severity::Violation, i, problem);
            continue;
        }
        if (!zero_at_zero(k)) {
            add(r, Assumption::ZeroAtZero, Severity::Violation, i, "F does not vanish when an argument is zero");
        }
        if (auto sup = k.supremum()) {
            if (!(*sup > I)) {
                add(r, Assumption::Saturation, Severity::Violation, i,
                    "lim F = " + std::to_string(*sup) + " does not exceed I = " + std::to_string(I));
            } else if (*sup < kSaturationMarginWarning * I) {
                add(r, Assumption::Saturation, Severity::Warning, i,
                    "lim F = " + std::to_string(*sup) + " is within 5% of I");
            }
        }
    }
    return r;
}

ChainModel::ChainModel(ChainSpec spec) : spec_(std::move(spec)), report_(validate_chain(spec_)) {
    if (!report_.simulatable) {
        std::string msg = "chain is not simulatable:";
        for (const auto& issue : report_.issues) {
            if (issue.severity == Severity::Violation) msg += " [" + std::string(to_string(issue.assumption)) + "] " + issue.message + ";";
        }
        throw ChainError(msg);
    }
    ssc_ = true;
    for (std::size_t i = 0; i < spec_.complexes.size(); ++i) {
        offsets_.push_back(slots_.size());
        const auto& members = spec_.complexes[i].members;
        if (members.size() != 1 || members[0].multiplicity != 1) ssc_ = false;
        for (const auto& m : members) {
            auto idx = species_index(m.species);
            if (!idx) {
                names_.push_back(m.species);
                idx = names_.size() - 1;
            } else {
                shared_ = true;
            }
            slots_.push_back({*idx, m.multiplicity});
        }
    }
    offsets_.push_back(slots_.size());
    if (shared_) ssc_ = false;

    direction_.assign(names_.size(), 0.0);
    for (const Slot& s : complex_slots(0)) direction_[s.species] += s.multiplicity;

    const auto first = complex_slots(0);
    if (const auto* red = std::get_if<ReducedKinetics>(&spec_.kinetics[0].form())) {
        for (const auto& a : red->args) gate_.push_back({first[0].species, a.scale, a.offset});
    } else {
        for (const Slot& s : first) gate_.push_back({s.species, 1.0, 0.0});
    }
}

std::optional<std::size_t> ChainModel::species_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::span<const Slot> ChainModel::complex_slots(std::size_t i) const {
    return std::span<const Slot>(slots_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double ChainModel::flux(std::size_t i, std::span<const double> x) const {
    std::array<double, kMaxComplexSize> args{};
    const auto slots = complex_slots(i);
    for (std::size_t j = 0; j < slots.size(); ++j) args[j] = x[slots[j].species];
    return spec_.kinetics[i].evaluate_unchecked(std::span<const double>(args.data(), slots.size()));
}

void ChainModel::fluxes(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < reaction_count(); ++i) out[i] = flux(i, x);
}

void ChainModel::drift(std::span<const double> f, std::span<double> dx) const {
    std::fill(dx.begin(), dx.end(), 0.0);
    double upstream = spec_.input_rate;
    for (std::size_t i = 0; i < reaction_count(); ++i) {
        const double net = upstream - f[i];
        for (const Slot& s : complex_slots(i)) dx[s.species] += s.multiplicity * net;
        upstream = f[i];
    }
}

namespace {

struct ComplexSolve {
    const Kinetics* kinetics;
    std::vector<std::size_t> species;
    std::vector<bool> fixed;
    std::vector<double> scale;
    std::vector<double> offset;
};

double eval_along(const ComplexSolve& cs, std::span<const double> x, double y) {
    std::array<double, kMaxComplexSize> args{};
    for (std::size_t j = 0; j < cs.species.size(); ++j) {
        args[j] = cs.fixed[j] ? x[cs.species[j]] : std::max(0.0, cs.scale[j] * y + cs.offset[j]);
    }
    return cs.kinetics->evaluate_unchecked(std::span<const double>(args.data(), cs.species.size()));
}

}  // namespace

EquilibriumPoint solve_equilibrium(const ChainModel& model, std::span<const double> initial_state) {
    const std::size_t ns = model.species_count();
    if (!initial_state.empty() && initial_state.size() != ns) {
        throw DomainError("initial state has " + std::to_string(initial_state.size()) + " entries, chain has " +
                          std::to_string(ns) + " species");
    }
    const double I = model.input_rate();
    const double tol = kEquilibriumTolerance * I;
    std::vector<double> x(ns, 0.0);
    std::vector<bool> known(ns, false);

    for (std::size_t i = 0; i < model.reaction_count(); ++i) {
        const auto slots = model.complex_slots(i);
        ComplexSolve cs{&model.spec().kinetics[i], {}, {}, {}, {}};
        std::optional<std::size_t> rep;
        for (const Slot& s : slots) {
            cs.species.push_back(s.species);
            cs.fixed.push_back(known[s.species]);
            if (!known[s.species] && !rep) rep = cs.species.size() - 1;
        }
        cs.scale.assign(slots.size(), 0.0);
        cs.offset.assign(slots.size(), 0.0);

        if (!rep) {
            if (std::abs(eval_along(cs, x, 0.0) - I) > tol) {
                throw ChainError("complex " + std::to_string(i + 1) +
                                 " has no free species and its flux does not balance the input");
            }
            continue;
        }

        const double v_rep = slots[*rep].multiplicity;
        double lower = 0.0;
        for (std::size_t j = 0; j < slots.size(); ++j) {
            if (cs.fixed[j]) continue;
            cs.scale[j] = slots[j].multiplicity / v_rep;
            if (!initial_state.empty()) {
                cs.offset[j] = initial_state[slots[j].species] - cs.scale[j] * initial_state[slots[*rep].species];
            }
            lower = std::max(lower, -cs.offset[j] / cs.scale[j]);
        }

        auto g = [&](double y) { return eval_along(cs, x, y) - I; };
        double lo = lower;
        double glo = g(lo);
        if (glo >= 0.0) {
            throw ChainError("complex " + std::to_string(i + 1) + ": flux already exceeds I at the lower bound");
        }
        double width = 1.0;
        double hi = lo + width;
        double ghi = g(hi);
        int doublings = 0;
        while (ghi < 0.0) {
            if (++doublings > kMaxDoublings) {
                throw ChainError("complex " + std::to_string(i + 1) +
                                 ": no bracket found within 200 doublings (saturation violated)");
            }
            width *= 2.0;
            hi = lo + width;
            ghi = g(hi);
        }
        double best = std::abs(glo) < std::abs(ghi) ? lo : hi;
        double best_res = std::min(std::abs(glo), std::abs(ghi));
        for (int it = 0; it < 2000 && best_res > 0.0; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double gm = g(mid);
            if (gm < glo || gm > ghi) {
                throw ChainError("complex " + std::to_string(i + 1) + ": non-monotone kinetics evaluation");
            }
            if (std::abs(gm) < best_res) {
                best_res = std::abs(gm);
                best = mid;
            }
            if (gm < 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
        }
        if (best_res > tol) {
            throw ChainError("complex " + std::to_string(i + 1) + ": equilibrium residual " + std::to_string(best_res) +
                             " above tolerance");
        }
        for (std::size_t j = 0; j < slots.size(); ++j) {
            if (cs.fixed[j]) continue;
            x[slots[j].species] = std::max(0.0, cs.scale[j] * best + cs.offset[j]);
            known[slots[j].species] = true;
        }
    }

    EquilibriumPoint eq{std::move(x), 0.0};
    for (std::size_t i = 0; i < model.reaction_count(); ++i) {
        eq.max_residual = std::max(eq.max_residual, std::abs(model.flux(i, eq.x) - I));
    }
    return eq;
}

MscReduction msc_reduce(const ChainModel& model, std::span<const double> initial_state) {
    if (model.has_shared_species()) {
        throw ChainError("msc_reduce requires every species to appear in exactly one complex");
    }
    const std::size_t ns = model.species_count();
    if (!initial_state.empty() && initial_state.size() != ns) {
        throw DomainError("initial state size does not match species count");
    }
    MscReduction out;
    out.reduced.input_rate = model.input_rate();
    out.reduction.full_species_count = ns;
    for (std::size_t i = 0; i < model.reaction_count(); ++i) {
        const auto slots = model.complex_slots(i);
        const Slot rep = slots[0];
        out.reduction.representative.push_back(rep.species);
        out.reduced.complexes.push_back({{{model.species_names()[rep.species], rep.multiplicity}}});
        const Kinetics& k = model.spec().kinetics[i];
        if (slots.size() == 1) {
            out.reduced.kinetics.push_back(k);
            continue;
        }
        ReducedKinetics red{std::make_shared<const Kinetics>(k), {}};
        for (std::size_t j = 0; j < slots.size(); ++j) {
            const double d = static_cast<double>(slots[j].multiplicity) / rep.multiplicity;
            const double c =
                initial_state.empty() ? 0.0 : initial_state[slots[j].species] - d * initial_state[rep.species];
            red.args.push_back({j == 0 ? 1.0 : d, j == 0 ? 0.0 : c});
            if (j > 0) out.reduction.maps.push_back({slots[j].species, rep.species, d, c});
        }
        out.reduced.kinetics.emplace_back(std::move(red));
    }
    return out;
}

std::vector<double> lift_state(const AffineReduction& r, std::span<const double> reduced) {
    if (reduced.size() != r.representative.size()) throw DomainError("reduced state size mismatch");
    std::vector<double> full(r.full_species_count, 0.0);
    for (std::size_t i = 0; i < r.representative.size(); ++i) full[r.representative[i]] = reduced[i];
    for (const auto& m : r.maps) full[m.species] = m.scale * full[m.representative] + m.offset;
    return full;
}

std::vector<double> restrict_state(const AffineReduction& r, std::span<const double> full) {
    if (full.size() != r.full_species_count) throw DomainError("full state size mismatch");
    std::vector<double> reduced;
    reduced.reserve(r.representative.size());
    for (std::size_t idx : r.representative) reduced.push_back(full[idx]);
    return reduced;
}

}  // namespace fluxvar
