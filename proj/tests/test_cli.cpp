#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gpe/io.hpp"
#include "gpe/runner.hpp"
#include "support/reference.hpp"

using namespace gpe;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("gpe_cli_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

int run_cli(const std::string& mode, const std::string& config_path, const std::string& out_dir,
            bool deterministic = false) {
    const char* cli = std::getenv("GPE_CLI_PATH");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + mode + " --config " + config_path + " --out " +
                      out_dir + (deterministic ? " --deterministic" : "") + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string write_config(const std::string& dir, const json& j) {
    std::string path = dir + "/config.json";
    std::ofstream out(path);
    out << j.dump(2);
    return path;
}

json minimal_groundstate_config() {
    return json{{"mode", "groundstate"},
                {"grid", {{"axes", {{{"a", -16.0}, {"b", 16.0}, {"m", 256}}}}}},
                {"model", {{"dimension", 1}, {"beta", 0.0}}},
                {"ground_state", {{"tau", 0.01}, {"stop_tol", 1e-6}}}};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("minimal config parses with defaults filled") {
    runner::ExperimentConfig cfg = runner::parse_config(minimal_groundstate_config().dump());
    CHECK(cfg.mode == runner::Mode::GroundState);
    CHECK(cfg.model.beta == 0.0);
    CHECK(cfg.ground.stop_tol == 1e-6);
    CHECK(cfg.resolved.contains("evolve")); // defaults echoed
    CHECK(cfg.resolved["ground_state"]["backend"] == "besp");
}

TEST_CASE("validation reports every problem, not just the first") {
    json j = minimal_groundstate_config();
    j["model"]["beta"] = -1.0;
    j["model"]["dimension"] = 3;
    j["grid"] = {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 16}},
                           {{"a", -8.0}, {"b", 8.0}, {"m", 16}},
                           {{"a", -8.0}, {"b", 8.0}, {"m", 16}}}}};
    j["typo_key"] = 1;
    j["model"]["bogus"] = 2;
    try {
        runner::parse_config(j.dump());
        CHECK(false);
    } catch (const runner::ConfigError& e) {
        CHECK(e.messages.size() >= 3);
        bool unknown_named = false, nonexistence = false, unknown_model = false;
        for (const auto& m : e.messages) {
            if (m.find("typo_key") != std::string::npos) unknown_named = true;
            if (m.find("no ground state") != std::string::npos) nonexistence = true;
            if (m.find("model.bogus") != std::string::npos) unknown_model = true;
        }
        CHECK(unknown_named);
        CHECK(nonexistence);
        CHECK(unknown_model);
    }
}

TEST_CASE("overcritical rotation is rejected at parse time") {
    json j = minimal_groundstate_config();
    j["mode"] = "groundstate-rotating";
    j["model"]["dimension"] = 2;
    j["model"]["omega"] = 1.2;
    j["grid"] = {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 32}},
                           {{"a", -8.0}, {"b", 8.0}, {"m", 32}}}}};
    CHECK_THROWS_AS(runner::parse_config(j.dump()), runner::ConfigError);
}

TEST_CASE("missing groups are reported per mode") {
    json j{{"mode", "evolve"},
           {"grid", {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 32}}}}}},
           {"model", {{"dimension", 1}}}};
    try {
        runner::parse_config(j.dump());
        CHECK(false);
    } catch (const runner::ConfigError& e) {
        bool found = false;
        for (const auto& m : e.messages)
            if (m.find("initial_data") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("groundstate run produces the closed-form summary") {
    std::string dir = temp_dir("gs");
    std::string cfg = write_config(dir, minimal_groundstate_config());
    CHECK(run_cli("groundstate", cfg, dir + "/out") == 0);
    json summary = json::parse(slurp(dir + "/out/summary.json"));
    CHECK(std::abs(summary["ground_state"]["energy"].get<double>() - 0.5) < 1e-6);
    CHECK(std::abs(summary["ground_state"]["mu"].get<double>() - 0.5) < 1e-6);
    CHECK(summary["config"]["mode"] == "groundstate");
    CHECK(fs::exists(dir + "/out/ground_state.bin"));
    // the dump round-trips
    ComplexField phi = io::read_field(dir + "/out/ground_state.bin");
    CHECK(std::abs(mass(phi) - 1.0) < 1e-10);
}

TEST_CASE("evolve run emits the expected csv rows") {
    std::string dir = temp_dir("ev");
    json j{{"mode", "evolve"},
           {"grid", {{"axes", {{{"a", -12.0}, {"b", 12.0}, {"m", 64}}}}}},
           {"model", {{"dimension", 1}, {"beta", 1.0}}},
           {"evolve", {{"tau", 1e-3}, {"t_final", 1.0}, {"stride", 10}}},
           {"initial_data", {{"name", "gaussian"}, {"params", {{"sigma", 1.0}}}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("evolve", cfg, dir + "/out") == 0);
    std::ifstream csv(dir + "/out/observables.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line.rfind("t,N,E_total,E_kin,E_pot,E_int,E_rot,E_dip,E_jj,mu,delta_x", 0) == 0);
    int rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 101);
}

TEST_CASE("config mode and subcommand must agree") {
    std::string dir = temp_dir("mm");
    std::string cfg = write_config(dir, minimal_groundstate_config());
    CHECK(run_cli("evolve", cfg, dir + "/out") == 2);
}

TEST_CASE("invalid config exits with the dedicated code") {
    std::string dir = temp_dir("bad");
    json j = minimal_groundstate_config();
    j["model"]["beta"] = -1.0;
    j["model"]["dimension"] = 3;
    j["grid"] = {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 16}},
                           {{"a", -8.0}, {"b", 8.0}, {"m", 16}},
                           {{"a", -8.0}, {"b", 8.0}, {"m", 16}}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("groundstate", cfg, dir + "/out") == 2);
}

TEST_CASE("non-convergence exits with code 3") {
    std::string dir = temp_dir("nc");
    json j = minimal_groundstate_config();
    j["model"]["beta"] = 200.0;
    j["grid"] = {{"axes", {{{"a", -12.0}, {"b", 12.0}, {"m", 128}}}}};
    j["ground_state"] = {{"tau", 0.001}, {"stop_tol", 1e-12}, {"max_iters", 5}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("groundstate", cfg, dir + "/out") == 3);
}

TEST_CASE("blow-up exits with code 4") {
    std::string dir = temp_dir("bu");
    json j{{"mode", "evolve"},
           {"grid", {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 64}},
                               {{"a", -8.0}, {"b", 8.0}, {"m", 64}}}}}},
           {"model", {{"dimension", 2}, {"beta", -50.0}}},
           {"evolve", {{"tau", 2e-3}, {"t_final", 4.0}, {"stride", 50}}},
           {"initial_data", {{"name", "gaussian"}, {"params", {{"sigma", 0.5}}}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("evolve", cfg, dir + "/out") == 4);
}

TEST_CASE("missing input file exits with code 5") {
    std::string dir = temp_dir("io");
    json j{{"mode", "evolve"},
           {"grid", {{"axes", {{{"a", -8.0}, {"b", 8.0}, {"m", 64}}}}}},
           {"model", {{"dimension", 1}}},
           {"evolve", {{"tau", 1e-3}, {"t_final", 0.01}}},
           {"initial_data", {{"name", "file"}, {"path", dir + "/does_not_exist.bin"}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("evolve", cfg, dir + "/out") == 5);
}

TEST_CASE("deterministic reruns are byte identical") {
    std::string dir = temp_dir("det");
    json j{{"mode", "evolve"},
           {"grid", {{"axes", {{{"a", -12.0}, {"b", 12.0}, {"m", 64}}}}}},
           {"model", {{"dimension", 1}, {"beta", 5.0}}},
           {"evolve", {{"tau", 1e-3}, {"t_final", 0.5}, {"stride", 25}}},
           {"initial_data", {{"name", "gaussian"}, {"params", {{"sigma", 0.9}}}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("evolve", cfg, dir + "/out1", true) == 0);
    CHECK(run_cli("evolve", cfg, dir + "/out2", true) == 0);
    CHECK(slurp(dir + "/out1/observables.csv") == slurp(dir + "/out2/observables.csv"));
    CHECK(slurp(dir + "/out1/summary.json") == slurp(dir + "/out2/summary.json"));
}

TEST_CASE("convergence study reports second order") {
    std::string dir = temp_dir("cs");
    json j{{"mode", "convergence-study"},
           {"grid", {{"axes", {{{"a", -16.0}, {"b", 16.0}, {"m", 128}}}}}},
           {"model", {{"dimension", 1}, {"beta", 1.0}}},
           {"evolve", {{"t_final", 1.0}}},
           {"convergence_study", {{"taus", {4e-3, 2e-3, 1e-3}}}},
           {"initial_data",
            {{"name", "gaussian"}, {"params", {{"sigma", 1.0}, {"center", {1.0}}}}}}};
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("convergence-study", cfg, dir + "/out") == 0);
    json summary = json::parse(slurp(dir + "/out/summary.json"));
    for (const auto& o : summary["convergence_study"]["observed_orders"])
        CHECK(std::abs(o.get<double>() - 2.0) < 0.2);
}

TEST_CASE("auto-sized domain follows the interaction strength") {
    json j{{"mode", "groundstate"},
           {"grid", {{"m", 256}}},
           {"model", {{"dimension", 1}, {"beta", 400.0}}}};
    runner::ExperimentConfig cfg = runner::parse_config(j.dump());
    // half width 1.5 * sqrt(2 mu_tf) with mu_tf = (600^(2/3))/2
    const double expect = 1.5 * std::sqrt(std::pow(600.0, 2.0 / 3.0));
    CHECK(cfg.grid.axis(0).a == doctest::Approx(-expect));
    CHECK(cfg.grid.axis(0).b == doctest::Approx(expect));
    // weak interactions keep the default box
    json j2{{"mode", "groundstate"}, {"grid", {{"m", 128}}}, {"model", {{"dimension", 1}}}};
    runner::ExperimentConfig cfg2 = runner::parse_config(j2.dump());
    CHECK(cfg2.grid.axis(0).b == doctest::Approx(8.0));
}

TEST_CASE("field dump round trip preserves values and the grid") {
    std::string dir = temp_dir("dump");
    Grid g = Grid::make_2d(-3.0, 5.0, 24, -2.0, 2.0, 16);
    ComplexField f = ref::random_field(g, 31);
    io::write_field(dir + "/f.bin", f);
    ComplexField back = io::read_field(dir + "/f.bin");
    CHECK(back.grid() == g);
    CHECK(ref::max_abs_diff_fields(back, f) == 0.0);
    // single precision dump stays close
    io::write_field(dir + "/f32.bin", f, true);
    ComplexField b32 = io::read_field(dir + "/f32.bin");
    CHECK(ref::max_abs_diff_fields(b32, f) < 1e-6);
}

TEST_CASE("summary embeds the fully resolved config") {
    std::string dir = temp_dir("echo");
    json j = minimal_groundstate_config();
    j.erase("ground_state"); // defaults must be echoed anyway
    std::string cfg = write_config(dir, j);
    CHECK(run_cli("groundstate", cfg, dir + "/out") == 0);
    json summary = json::parse(slurp(dir + "/out/summary.json"));
    CHECK(summary["config"]["ground_state"]["stop_tol"].get<double>() == 1e-6);
    CHECK(summary["config"]["ground_state"]["tau"].get<double>() == 0.01);
    CHECK(summary["config"]["evolve"]["basis"] == "sine");
}
