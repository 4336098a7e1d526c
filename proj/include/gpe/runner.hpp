#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gpe/dynamics.hpp"
#include "gpe/groundstate.hpp"
#include "gpe/model.hpp"

namespace gpe::runner {

/// All validation problems of a config, reported together.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors)
        : std::runtime_error(join(errors)), messages(std::move(errors)) {}
    std::vector<std::string> messages;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid config:";
        for (const auto& m : v) s += "\n  - " + m;
        return s;
    }
};

enum class Mode {
    GroundState,
    GroundStateRotating,
    Evolve,
    EvolveRotating,
    EvolveDipolar,
    EvolveCgpe,
    Bdg,
    ConvergenceStudy,
};

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode m);

struct InitialDataSpec {
    std::string name = "gaussian"; // generator name or "file"
    nlohmann::json params;         // generator parameter map
    std::string path;              // for name == "file"
};

struct ExperimentConfig {
    Mode mode = Mode::GroundState;
    Grid grid{std::vector<Axis>{Axis{-8.0, 8.0, 128}}};
    ModelParams model;
    GfdnConfig ground;
    EvolveConfig evolve;
    bool fourier_basis = false;    // periodic fixture basis for scalar dynamics
    bool zero_potential = false;   // V = 0 fixtures
    bool transformed_form = false; // phase-transformed pair stepper
    InitialDataSpec initial;
    std::vector<InitialDataSpec> initial_components; // pair models
    std::vector<double> study_taus;
    double study_reference_tau = 0.0; // 0: min(taus)/8
    double bdg_residual_threshold = 1e-5;
    int bdg_num_modes = 8;
    std::string out_dir = "out";
    bool deterministic = false;

    nlohmann::json resolved; // full config with defaults, echoed in summaries
};

/// Parses and validates; reports every problem found, not just the first.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_json(const nlohmann::json& j);

/// Exit codes: 0 success, 2 invalid config, 3 non-convergence,
/// 4 blow-up/instability, 5 I/O failure.
int run_experiment(const ExperimentConfig& config);

/// Builds initial data from a generator spec (CLI oracle samplers).
ComplexField make_initial_field(const InitialDataSpec& spec, const Grid& grid,
                                const ModelParams& params, const GfdnConfig& ground);

} // namespace gpe::runner
