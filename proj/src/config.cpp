#include "fluxvar/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "fluxvar/error.hpp"

#ifndef FLUXVAR_CONFIG_DIR
#define FLUXVAR_CONFIG_DIR "configs"
#endif

namespace fluxvar {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

std::string index(const std::string& prefix, std::size_t i) { return prefix + "[" + std::to_string(i) + "]"; }

const json& require(const json& j, const std::string& key, const std::string& prefix) {
    if (!j.is_object()) throw ConfigError(prefix.empty() ? "<root>" : prefix, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError(join(prefix, key), "missing required field");
    return *it;
}

const json* optional_field(const json& j, const std::string& key) {
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

double positive(const json& j, const std::string& field) {
    const double v = number(j, field);
    if (!(v > 0.0)) throw ConfigError(field, "must be positive");
    return v;
}

std::int64_t integer(const json& j, const std::string& field) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    }
    throw ConfigError(field, "expected an integer");
}

std::uint64_t unsigned_integer(const json& j, const std::string& field) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    const std::int64_t v = integer(j, field);
    if (v < 0) throw ConfigError(field, "must be nonnegative");
    return static_cast<std::uint64_t>(v);
}

std::string string_value(const json& j, const std::string& field) {
    if (!j.is_string()) throw ConfigError(field, "expected a string");
    return j.get<std::string>();
}

std::vector<double> positive_list(const json& j, const std::string& field) {
    std::vector<double> out;
    if (j.is_number()) {
        out.push_back(positive(j, field));
        return out;
    }
    if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a nonempty array of numbers");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(positive(j[i], index(field, i)));
    return out;
}

Kinetics parse_kinetics(const json& j, const std::string& prefix) {
    const std::string type = string_value(require(j, "type", prefix), join(prefix, "type"));
    const std::string pp = join(prefix, "params");
    const json& p = require(j, "params", prefix);
    if (!p.is_object()) throw ConfigError(pp, "expected an object");
    if (type == "mass_action") {
        MassAction m;
        m.rate = positive(require(p, "rate", pp), join(pp, "rate"));
        const json& e = require(p, "exponents", pp);
        const std::string ef = join(pp, "exponents");
        if (!e.is_array() || e.empty()) throw ConfigError(ef, "expected a nonempty array of positive integers");
        for (std::size_t i = 0; i < e.size(); ++i) {
            const std::int64_t v = integer(e[i], index(ef, i));
            if (v < 1 || v > 64) throw ConfigError(index(ef, i), "exponent must be a positive integer");
            m.exponents.push_back(static_cast<int>(v));
        }
        return Kinetics(m);
    }
    if (type == "michaelis_menten") {
        MichaelisMenten m;
        m.vmax = positive(require(p, "vmax", pp), join(pp, "vmax"));
        m.km = positive_list(require(p, "km", pp), join(pp, "km"));
        return Kinetics(m);
    }
    if (type == "power_law") {
        PowerLaw m;
        m.rate = positive(require(p, "rate", pp), join(pp, "rate"));
        m.power = positive(require(p, "power", pp), join(pp, "power"));
        return Kinetics(m);
    }
    if (type == "rational_quadratic") {
        RationalQuadratic m;
        m.coeff = positive(require(p, "coeff", pp), join(pp, "coeff"));
        return Kinetics(m);
    }
    throw ConfigError(join(prefix, "type"), "unknown kinetics type '" + type +
                                                "' (mass_action, michaelis_menten, power_law, rational_quadratic)");
}

OutputKind parse_output(const std::string& s, const std::string& field) {
    static const std::pair<const char*, OutputKind> table[] = {
        {"flux_table", OutputKind::FluxTable}, {"species_table", OutputKind::SpeciesTable},
        {"ordering", OutputKind::Ordering},    {"timeavg", OutputKind::TimeAverage},
        {"gdiag", OutputKind::GDiagnostic},    {"lyapunov", OutputKind::Lyapunov},
        {"couple", OutputKind::Couple},
    };
    for (const auto& [name, kind] : table)
        if (s == name) return kind;
    throw ConfigError(field, "unknown output '" + s + "'");
}

std::map<std::string, double> parse_state_map(const json& j, const std::string& field) {
    if (!j.is_object()) throw ConfigError(field, "expected an object of species concentrations");
    std::map<std::string, double> out;
    for (const auto& [k, v] : j.items()) {
        const double x = number(v, join(field, k));
        if (x < 0.0) throw ConfigError(join(field, k), "concentration must be nonnegative");
        out[k] = x;
    }
    return out;
}

}  // namespace

const char* to_string(OutputKind k) {
    switch (k) {
        case OutputKind::FluxTable: return "flux_table";
        case OutputKind::SpeciesTable: return "species_table";
        case OutputKind::Ordering: return "ordering";
        case OutputKind::TimeAverage: return "timeavg";
        case OutputKind::GDiagnostic: return "gdiag";
        case OutputKind::Lyapunov: return "lyapunov";
        case OutputKind::Couple: return "couple";
    }
    return "?";
}

ChainSpec parse_chain(const json& j, const std::string& prefix) {
    ChainSpec spec;
    spec.input_rate = positive(require(j, "input_rate", prefix), join(prefix, "input_rate"));

    const std::string cf = join(prefix, "complexes");
    const json& complexes = require(j, "complexes", prefix);
    if (!complexes.is_array() || complexes.empty()) throw ConfigError(cf, "expected a nonempty array");
    for (std::size_t i = 0; i < complexes.size(); ++i) {
        const std::string ci = index(cf, i);
        const std::string sf = join(ci, "species");
        const json& members = require(complexes[i], "species", ci);
        if (!members.is_array() || members.empty()) throw ConfigError(sf, "expected a nonempty array");
        Complex c;
        for (std::size_t m = 0; m < members.size(); ++m) {
            const std::string mi = index(sf, m);
            Member mem;
            mem.species = string_value(require(members[m], "name", mi), join(mi, "name"));
            if (mem.species.empty()) throw ConfigError(join(mi, "name"), "must not be empty");
            if (const json* mult = optional_field(members[m], "mult")) {
                const std::int64_t v = integer(*mult, join(mi, "mult"));
                if (v < 1 || v > 1000) throw ConfigError(join(mi, "mult"), "multiplicity must be a positive integer");
                mem.multiplicity = static_cast<int>(v);
            }
            c.members.push_back(std::move(mem));
        }
        spec.complexes.push_back(std::move(c));
    }

    const std::string kf = join(prefix, "kinetics");
    const json& kinetics = require(j, "kinetics", prefix);
    if (!kinetics.is_array()) throw ConfigError(kf, "expected an array");
    if (kinetics.size() != spec.complexes.size())
        throw ConfigError(kf, "expected one kinetics entry per complex (" + std::to_string(spec.complexes.size()) +
                                  "), got " + std::to_string(kinetics.size()));
    for (std::size_t i = 0; i < kinetics.size(); ++i) spec.kinetics.push_back(parse_kinetics(kinetics[i], index(kf, i)));

    if (const json* a = optional_field(j, "allow_shared_species")) {
        if (!a->is_boolean()) throw ConfigError(join(prefix, "allow_shared_species"), "expected a boolean");
        spec.allow_shared_species = a->get<bool>();
    }
    return spec;
}

NoiseModel parse_noise(const json& j, const std::string& prefix) {
    const std::string type = string_value(require(j, "type", prefix), join(prefix, "type"));
    const double sigma = number(require(j, "sigma", prefix), join(prefix, "sigma"));
    if (sigma < 0.0) throw ConfigError(join(prefix, "sigma"), "must be nonnegative");
    if (type == "white") {
        WhiteNoiseInput w;
        w.sigma = sigma;
        if (const json* d = optional_field(j, "delta")) w.cutoff.delta = positive(*d, join(prefix, "delta"));
        return w;
    }
    if (type == "frozen_ou") {
        FrozenOUNoise o;
        o.sigma = sigma;
        if (const json* l = optional_field(j, "lower")) {
            o.lower = number(*l, join(prefix, "lower"));
            if (o.lower > 0.0) throw ConfigError(join(prefix, "lower"), "lower bound must be <= 0");
        }
        if (const json* u = optional_field(j, "upper")) {
            o.upper = number(*u, join(prefix, "upper"));
            if (o.upper < 0.0) throw ConfigError(join(prefix, "upper"), "upper bound must be >= 0");
        }
        return o;
    }
    throw ConfigError(join(prefix, "type"), "unknown noise type '" + type + "' (white, frozen_ou)");
}

SimConfig parse_sim(const json& j, const std::string& prefix) {
    if (!j.is_object()) throw ConfigError(prefix, "expected an object");
    SimConfig c;
    if (const json* v = optional_field(j, "dt")) c.dt = number(*v, join(prefix, "dt"));
    if (const json* v = optional_field(j, "t_total")) c.t_total = number(*v, join(prefix, "t_total"));
    if (const json* v = optional_field(j, "t_burn")) c.t_burn = number(*v, join(prefix, "t_burn"));
    if (const json* v = optional_field(j, "n_paths")) c.n_paths = unsigned_integer(*v, join(prefix, "n_paths"));
    if (const json* v = optional_field(j, "seed")) c.master_seed = unsigned_integer(*v, join(prefix, "seed"));
    if (const json* v = optional_field(j, "record_stride"))
        c.record_stride = unsigned_integer(*v, join(prefix, "record_stride"));
    c.validate();
    return c;
}

ExperimentConfig parse_experiment(const json& j) {
    if (!j.is_object()) throw ConfigError("<root>", "expected an object");
    ExperimentConfig e;
    if (const json* n = optional_field(j, "name")) e.name = string_value(*n, "name");
    if (const json* d = optional_field(j, "description")) e.description = string_value(*d, "description");
    e.chain = parse_chain(require(j, "chain", ""), "chain");
    e.noise = parse_noise(require(j, "noise", ""), "noise");
    e.sim = parse_sim(require(j, "sim", ""), "sim");
    if (const json* s = optional_field(j, "initial_state")) e.initial_state = parse_state_map(*s, "initial_state");

    const json& outputs = require(j, "outputs", "");
    if (!outputs.is_array() || outputs.empty()) throw ConfigError("outputs", "at least one output must be requested");
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const std::string f = index("outputs", i);
        const OutputKind k = parse_output(string_value(outputs[i], f), f);
        if (std::find(e.outputs.begin(), e.outputs.end(), k) == e.outputs.end()) e.outputs.push_back(k);
    }

    if (const json* t = optional_field(j, "timeavg")) {
        if (const json* v = optional_field(*t, "t_total")) e.timeavg.t_total = positive(*v, "timeavg.t_total");
        if (const json* v = optional_field(*t, "t_burn")) e.timeavg.t_burn = number(*v, "timeavg.t_burn");
        if (const json* v = optional_field(*t, "n_batches")) {
            e.timeavg.n_batches = unsigned_integer(*v, "timeavg.n_batches");
            if (e.timeavg.n_batches < 2) throw ConfigError("timeavg.n_batches", "need at least 2 batches");
        }
        if (const json* v = optional_field(*t, "path")) e.timeavg.path = unsigned_integer(*v, "timeavg.path");
        if (e.timeavg.t_burn < 0.0 || e.timeavg.t_burn >= e.timeavg.t_total)
            throw ConfigError("timeavg.t_burn", "must lie in [0, timeavg.t_total)");
    }
    if (const json* c = optional_field(j, "couple")) {
        if (const json* v = optional_field(*c, "x0")) e.couple.x0 = parse_state_map(*v, "couple.x0");
        if (const json* v = optional_field(*c, "y0")) e.couple.y0 = parse_state_map(*v, "couple.y0");
        if (const json* v = optional_field(*c, "t_total")) e.couple.t_total = positive(*v, "couple.t_total");
        if (const json* v = optional_field(*c, "tolerance")) e.couple.tolerance = positive(*v, "couple.tolerance");
    }
    if (const json* l = optional_field(j, "lyapunov")) {
        if (const json* v = optional_field(*l, "R")) e.lyapunov.R = positive(*v, "lyapunov.R");
        if (const json* v = optional_field(*l, "points")) {
            e.lyapunov.points = unsigned_integer(*v, "lyapunov.points");
            if (e.lyapunov.points == 0) throw ConfigError("lyapunov.points", "must be positive");
        }
        if (const json* v = optional_field(*l, "sigma")) e.lyapunov.sigma = number(*v, "lyapunov.sigma");
        if (const json* v = optional_field(*l, "delta")) e.lyapunov.delta = positive(*v, "lyapunov.delta");
    }
    if (const json* x = optional_field(j, "expect")) {
        if (const json* v = optional_field(*x, "ordering")) {
            e.expect.ordering = string_value(*v, "expect.ordering");
            if (e.expect.ordering != "strictly-decreasing" && e.expect.ordering != "violated")
                throw ConfigError("expect.ordering", "expected 'strictly-decreasing' or 'violated'");
        }
    }
    return e;
}

ExperimentConfig load_experiment_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError("config", "invalid JSON in '" + path.string() + "': " + err.what());
    }
    ExperimentConfig e = parse_experiment(j);
    if (e.name.empty()) e.name = path.stem().string();
    return e;
}

std::filesystem::path bundled_config_dir() {
    if (const char* env = std::getenv("FLUXVAR_CONFIG_DIR"); env && *env) return env;
    return FLUXVAR_CONFIG_DIR;
}

std::vector<std::string> bundled_config_names() {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(bundled_config_dir(), ec))
        if (entry.is_regular_file() && entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    std::sort(names.begin(), names.end());
    return names;
}

std::filesystem::path resolve_config(const std::string& path_or_name) {
    const std::filesystem::path p(path_or_name);
    if (std::filesystem::is_regular_file(p)) return p;
    const auto bundled = bundled_config_dir() / (path_or_name + ".json");
    if (std::filesystem::is_regular_file(bundled)) return bundled;
    throw ConfigError("config", "'" + path_or_name + "' is neither a readable file nor a bundled config name");
}

std::vector<double> initial_state_vector(const ChainModel& model, const std::map<std::string, double>& values,
                                         const std::string& field) {
    for (const auto& [name, v] : values)
        if (!model.species_index(name)) throw ConfigError(join(field, name), "unknown species");
    if (values.empty()) return default_initial_state(model);
    std::vector<double> x(model.species_count(), std::numeric_limits<double>::quiet_NaN());
    std::size_t given = 0;
    for (const auto& [name, v] : values) {
        x[*model.species_index(name)] = v;
        ++given;
    }
    if (given < x.size()) {
        const auto eq = default_initial_state(model);
        for (std::size_t s = 0; s < x.size(); ++s)
            if (std::isnan(x[s])) x[s] = eq[s];
    }
    return x;
}

}  // namespace fluxvar
