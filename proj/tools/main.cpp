#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpe/runner.hpp"

namespace {

int run_mode(const std::string& mode, const std::string& config_path, const std::string& out_dir,
             bool deterministic) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "i/o failure: cannot open config " << config_path << "\n";
        return 5;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    gpe::runner::ExperimentConfig cfg;
    try {
        cfg = gpe::runner::parse_config(buf.str());
    } catch (const gpe::runner::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    if (gpe::runner::mode_to_string(cfg.mode) != mode) {
        std::cerr << "invalid config: config mode '" << gpe::runner::mode_to_string(cfg.mode)
                  << "' does not match subcommand '" << mode << "'\n";
        return 2;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.deterministic = deterministic;
    if (deterministic) {
        // single-threaded transforms; results are bitwise reproducible
        setenv("GPE_NUM_THREADS", "1", 1);
    }
    return gpe::runner::run_experiment(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gross-Pitaevskii solver suite: ground states, dynamics, excitations"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool deterministic = false;

    const char* modes[] = {"groundstate",     "groundstate-rotating", "evolve",
                           "evolve-rotating", "evolve-dipolar",       "evolve-cgpe",
                           "bdg",             "convergence-study"};
    const char* descriptions[] = {
        "compute a trapped ground state by normalized gradient flow",
        "ground state in the rotating frame",
        "real-time propagation (time-splitting spectral)",
        "real-time propagation in rotating Lagrangian coordinates",
        "real-time propagation with the nonlocal dipolar term",
        "two-component spin-orbit dynamics",
        "linearized excitation spectrum around a 1D ground state",
        "temporal-order study over a list of time steps",
    };

    for (int i = 0; i < 8; ++i) {
        CLI::App* sub = app.add_subcommand(modes[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment config file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--deterministic", deterministic,
                      "force single-threaded, bitwise-reproducible execution");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();
    return run_mode(mode, config_path, out_dir, deterministic);
}
