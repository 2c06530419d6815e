#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fluxvar/commands.hpp"
#include "fluxvar/config.hpp"
#include "fluxvar/error.hpp"
#include "fluxvar/experiment.hpp"

using namespace fluxvar;
using nlohmann::json;

namespace {

json base_config() {
    return json::parse(R"({
      "name": "tiny",
      "chain": {
        "input_rate": 10,
        "complexes": [{"species": [{"name": "X1", "mult": 1}]}, {"species": [{"name": "X2", "mult": 1}]}],
        "kinetics": [{"type": "mass_action", "params": {"rate": 1, "exponents": [1]}},
                     {"type": "michaelis_menten", "params": {"vmax": 12, "km": [1]}}]
      },
      "noise": {"type": "white", "sigma": 1, "delta": 0.001, "lower": null, "upper": null},
      "sim": {"dt": 0.001, "t_total": 4, "t_burn": 2, "n_paths": 6, "seed": 9, "record_stride": 50},
      "outputs": ["flux_table", "species_table", "ordering"]
    })");
}

std::string field_of(const json& j) {
    try {
        parse_experiment(j);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

std::filesystem::path write_config(const TempDir& dir, const json& j, const std::string& name = "cfg.json") {
    const auto p = dir.path / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, ParsesNormativeFields) {
    const auto e = parse_experiment(base_config());
    EXPECT_EQ(e.name, "tiny");
    EXPECT_EQ(e.chain.input_rate, 10.0);
    ASSERT_EQ(e.chain.complexes.size(), 2u);
    EXPECT_EQ(e.chain.complexes[1].members[0].species, "X2");
    EXPECT_EQ(e.sim.master_seed, 9u);
    EXPECT_EQ(e.sim.n_paths, 6u);
    EXPECT_EQ(e.outputs.size(), 3u);
    EXPECT_TRUE(std::holds_alternative<WhiteNoiseInput>(e.noise));
}

TEST(Config, ErrorsNameTheField) {
    json j = base_config();
    j["sim"]["dt"] = -0.1;
    EXPECT_EQ(field_of(j), "sim.dt");

    j = base_config();
    j["sim"]["n_paths"] = 2.5;
    EXPECT_EQ(field_of(j), "sim.n_paths");

    j = base_config();
    j["chain"]["kinetics"][1]["params"].erase("vmax");
    EXPECT_EQ(field_of(j), "chain.kinetics[1].params.vmax");

    j = base_config();
    j["chain"]["kinetics"][0]["type"] = "hill";
    EXPECT_EQ(field_of(j), "chain.kinetics[0].type");

    j = base_config();
    j["chain"]["complexes"][0]["species"][0]["mult"] = 0;
    EXPECT_EQ(field_of(j), "chain.complexes[0].species[0].mult");

    j = base_config();
    j["noise"]["type"] = "pink";
    EXPECT_EQ(field_of(j), "noise.type");

    j = base_config();
    j["outputs"] = json::array();
    EXPECT_EQ(field_of(j), "outputs");

    j = base_config();
    j["sim"]["t_burn"] = 10;
    EXPECT_EQ(field_of(j), "sim.t_burn");

    j = base_config();
    j["chain"]["kinetics"].erase(1);
    EXPECT_EQ(field_of(j), "chain.kinetics");
}

TEST(Config, BundledExamplesParseAndValidate) {
    const auto names = bundled_config_names();
    ASSERT_EQ(names.size(), 6u);
    for (const auto& n : names) {
        const auto e = load_experiment_file(resolve_config(n));
        const auto report = validate_chain(e.chain);
        EXPECT_TRUE(report.simulatable) << n;
        const ChainModel m(e.chain);
        const auto eq = solve_equilibrium(m, initial_state_vector(m, e.initial_state));
        EXPECT_LE(eq.max_residual, 1e-10 * e.chain.input_rate) << n;
    }
}

TEST(Cli, ValidateNamesNegativeDt) {
    TempDir dir("fluxvar_cli_validate");
    json j = base_config();
    j["sim"]["dt"] = -1e-3;
    CommandOptions o;
    o.config = write_config(dir, j).string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(o, out, err), kExitError);
    EXPECT_NE(err.str().find("sim.dt"), std::string::npos);
}

TEST(Cli, ValidateReportsSaturation) {
    TempDir dir("fluxvar_cli_saturation");
    json j = base_config();
    j["chain"]["kinetics"][1]["params"]["vmax"] = 9;
    CommandOptions o;
    o.config = write_config(dir, j).string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_validate(o, out, err), kExitError);
    EXPECT_NE(out.str().find("saturation"), std::string::npos);
}

TEST(Cli, MissingConfig) {
    CommandOptions o;
    o.config = "/nonexistent/nowhere.json";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(o, out, err), kExitError);
    EXPECT_NE(err.str().find("config"), std::string::npos);
}

TEST(Cli, RunIsByteIdenticalForFixedSeed) {
    TempDir dir("fluxvar_cli_run");
    CommandOptions o;
    o.config = write_config(dir, base_config()).string();
    std::ostringstream out, err;
    o.out_dir = dir.path / "a";
    ASSERT_EQ(cmd_run(o, out, err), kExitOk) << err.str();
    o.out_dir = dir.path / "b";
    o.threads = 3;
    ASSERT_EQ(cmd_run(o, out, err), kExitOk);
    for (const char* f : {"tiny_flux.csv", "tiny_species.csv", "tiny_ordering.csv"})
        EXPECT_EQ(slurp(dir.path / "a" / f), slurp(dir.path / "b" / f)) << f;
    const std::string flux = slurp(dir.path / "a" / "tiny_flux.csv");
    EXPECT_EQ(flux.substr(0, flux.find('\n')), "quantity,mean,variance,cv,se_mean,se_var");

    o.out_dir = dir.path / "c";
    o.seed = 10;
    ASSERT_EQ(cmd_run(o, out, err), kExitOk);
    EXPECT_NE(slurp(dir.path / "a" / "tiny_flux.csv"), slurp(dir.path / "c" / "tiny_flux.csv"));
}

TEST(Cli, TextFormat) {
    TempDir dir("fluxvar_cli_text");
    CommandOptions o;
    o.config = write_config(dir, base_config()).string();
    o.format = TableFormat::Text;
    o.out_dir = dir.path;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_run(o, out, err), kExitOk);
    const std::string t = slurp(dir.path / "tiny_flux.txt");
    EXPECT_NE(t.find("variance"), std::string::npos);
    EXPECT_NE(t.find("F_2"), std::string::npos);
}

TEST(Cli, TrajectoryExportHeader) {
    TempDir dir("fluxvar_cli_traj");
    json j = base_config();
    j["noise"] = json::parse(R"({"type": "frozen_ou", "sigma": 4, "lower": -10, "upper": null})");
    CommandOptions o;
    o.config = write_config(dir, j).string();
    o.out_dir = dir.path;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_trajectory(o, 3, std::nullopt, out, err), kExitOk) << err.str();
    const std::string csv = slurp(dir.path / "tiny_path3.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "time,x_X1,x_X2,F_1,F_2,xi");
}

TEST(Cli, VerifyExitCodes) {
    TempDir dir("fluxvar_cli_verify");
    json j = base_config();
    j["sim"]["n_paths"] = 40;
    j["sim"]["t_total"] = 20;
    j["sim"]["t_burn"] = 10;
    CommandOptions o;
    o.config = write_config(dir, j).string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify(o, out, err), kExitOk) << out.str();
    j["expect"] = json::parse(R"({"ordering": "violated"})");
    o.config = write_config(dir, j, "wrong.json").string();
    std::ostringstream out2;
    EXPECT_EQ(cmd_verify(o, out2, err), kExitVerdict) << out2.str();
}

TEST(Cli, Example6ExpectsViolation) {
    CommandOptions o;
    o.config = "example6";
    o.paths = 400;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_verify(o, out, err), kExitOk) << out.str() << err.str();
    EXPECT_NE(out.str().find("variance ordering violated"), std::string::npos);
}

TEST(Cli, ExamplesListed) {
    std::ostringstream out, err;
    ASSERT_EQ(cmd_examples(out, err), kExitOk);
    for (int i = 1; i <= 6; ++i) EXPECT_NE(out.str().find("example" + std::to_string(i)), std::string::npos);
}

TEST(Experiment, LyapunovOnReducedChain) {
    auto e = load_experiment_file(resolve_config("example4"));
    e.outputs = {OutputKind::Lyapunov};
    e.lyapunov.points = 5000;
    const auto r = run_experiment(e);
    ASSERT_TRUE(r.lyapunov && r.lyapunov->spec) << (r.lyapunov ? r.lyapunov->error : "");
    EXPECT_GE(r.lyapunov->spec->margin, 0.0);
    EXPECT_EQ(r.lyapunov->spec->V.size(), 3u);
}
