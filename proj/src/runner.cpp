#include "gpe/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "gpe/bdg.hpp"
#include "gpe/cgpe.hpp"
#include "gpe/dipolar.hpp"
#include "gpe/io.hpp"
#include "gpe/oracles.hpp"
#include "gpe/periodic.hpp"
#include "gpe/spectral.hpp"

namespace gpe::runner {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kModeNames[] = {"groundstate",   "groundstate-rotating", "evolve",
                            "evolve-rotating", "evolve-dipolar",       "evolve-cgpe",
                            "bdg",           "convergence-study"};

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where, std::vector<std::string>& errors) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) errors.push_back("unknown key '" + where + it.key() + "'");
    }
}

double get_or(const json& j, const char* key, double dflt) {
    return j.contains(key) ? j.at(key).get<double>() : dflt;
}

} // namespace

Mode mode_from_string(const std::string& s) {
    for (int i = 0; i < 8; ++i)
        if (s == kModeNames[i]) return Mode(i);
    throw InvalidInput("unknown mode '" + s + "'");
}

std::string mode_to_string(Mode m) { return kModeNames[int(m)]; }

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("not valid JSON: ") + e.what()});
    }
    return parse_config_json(j);
}

ExperimentConfig parse_config_json(const json& j) {
    std::vector<std::string> errors;
    ExperimentConfig cfg;

    check_keys(j, {"mode", "grid", "model", "ground_state", "evolve", "initial_data", "bdg",
                   "convergence_study", "output"},
               "", errors);

    // mode
    if (!j.contains("mode")) {
        errors.push_back("missing required key 'mode'");
    } else {
        try {
            cfg.mode = mode_from_string(j.at("mode").get<std::string>());
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
    }

    // model
    json jm = j.value("model", json::object());
    check_keys(jm, {"dimension", "beta", "kappa", "gamma_y", "gamma_z", "omega", "epsilon",
                    "dipole", "spin_orbit"},
               "model.", errors);
    cfg.model.dim = jm.contains("dimension") ? jm.at("dimension").get<int>() : 1;
    cfg.model.trap.gamma_y = get_or(jm, "gamma_y", 1.0);
    cfg.model.trap.gamma_z = get_or(jm, "gamma_z", 1.0);
    cfg.model.omega = get_or(jm, "omega", 0.0);
    cfg.model.epsilon = get_or(jm, "epsilon", 1.0);
    if (jm.contains("dipole")) {
        const json& jd = jm.at("dipole");
        check_keys(jd, {"lambda", "axis", "mode"}, "model.dipole.", errors);
        DipoleParams dip;
        dip.lambda = get_or(jd, "lambda", 0.0);
        if (jd.contains("axis")) {
            auto ax = jd.at("axis").get<std::vector<double>>();
            for (std::size_t i = 0; i < std::min<std::size_t>(3, ax.size()); ++i)
                dip.axis[i] = ax[i];
        }
        std::string mode = jd.value("mode", "3d");
        if (mode == "3d")
            dip.mode = DipoleKernel::ThreeD;
        else if (mode == "2d-sdm")
            dip.mode = DipoleKernel::TwoD_SDM;
        else
            errors.push_back("model.dipole.mode must be '3d' or '2d-sdm'");
        cfg.model.dipole = dip;
    }
    if (jm.contains("spin_orbit")) {
        const json& js = jm.at("spin_orbit");
        check_keys(js, {"k0", "delta", "rabi", "beta11", "beta12", "beta22"},
                   "model.spin_orbit.", errors);
        SpinOrbitParams so;
        so.k0 = get_or(js, "k0", 0.0);
        so.delta = get_or(js, "delta", 0.0);
        so.rabi = get_or(js, "rabi", 0.0);
        so.beta11 = get_or(js, "beta11", 0.0);
        so.beta12 = get_or(js, "beta12", 0.0);
        so.beta22 = get_or(js, "beta22", 0.0);
        cfg.model.spin_orbit = so;
    }
    if (jm.contains("beta") && jm.contains("kappa"))
        errors.push_back("model: give either 'beta' or 'kappa', not both");
    if (jm.contains("beta")) {
        cfg.model.beta = jm.at("beta").get<double>();
    } else if (jm.contains("kappa")) {
        const double kappa = jm.at("kappa").get<double>();
        cfg.model.beta = cfg.model.dipole
                             ? cfg.model.dipole->contact_beta(kappa, cfg.model.trap, cfg.model.dim)
                             : beta_from_kappa(kappa, cfg.model.trap, cfg.model.dim);
    }

    // grid
    json jg = j.value("grid", json::object());
    check_keys(jg, {"dimension", "axes", "m", "auto_domain"}, "grid.", errors);
    try {
        std::vector<Axis> axes;
        if (jg.contains("axes")) {
            for (const auto& ja : jg.at("axes")) {
                check_keys(ja, {"a", "b", "m"}, "grid.axes[].", errors);
                axes.push_back(Axis{get_or(ja, "a", -8.0), get_or(ja, "b", 8.0),
                                    ja.contains("m") ? ja.at("m").get<int>() : 128});
            }
        } else {
            // auto-sized domain from the interaction strength
            int m = jg.contains("m") ? jg.at("m").get<int>() : 128;
            for (int d = 0; d < cfg.model.dim; ++d) {
                double half = suggested_half_width(cfg.model, d);
                axes.push_back(Axis{-half, half, m});
            }
        }
        if (jg.contains("dimension") && int(axes.size()) != jg.at("dimension").get<int>())
            errors.push_back("grid.dimension does not match grid.axes");
        cfg.grid = Grid(axes);
    } catch (const std::exception& e) {
        errors.push_back(std::string("grid: ") + e.what());
    }
    if (cfg.grid.dim() != cfg.model.dim)
        errors.push_back("grid and model dimensions differ");

    // ground-state options
    json jgs = j.value("ground_state", json::object());
    check_keys(jgs, {"tau", "stop_tol", "max_iters", "backend", "guess", "guess_path"},
               "ground_state.", errors);
    cfg.ground.tau = get_or(jgs, "tau", 0.0);
    cfg.ground.stop_tol = get_or(jgs, "stop_tol", 1e-6);
    cfg.ground.max_iters = jgs.contains("max_iters") ? jgs.at("max_iters").get<long>() : 500000;
    std::string backend = jgs.value("backend", "besp");
    if (backend == "besp")
        cfg.ground.backend = GfdnBackend::SineSpectral;
    else if (backend == "befd")
        cfg.ground.backend = GfdnBackend::FiniteDifference;
    else
        errors.push_back("ground_state.backend must be 'besp' or 'befd'");
    std::string guess = jgs.value("guess", "auto");
    if (guess == "auto")
        cfg.ground.guess = InitialGuess::Auto;
    else if (guess == "gaussian")
        cfg.ground.guess = InitialGuess::Gaussian;
    else if (guess == "thomas-fermi")
        cfg.ground.guess = InitialGuess::ThomasFermi;
    else if (guess == "file") {
        cfg.ground.guess = InitialGuess::UserField;
        if (!jgs.contains("guess_path"))
            errors.push_back("ground_state.guess 'file' needs ground_state.guess_path");
        else
            cfg.ground.user_field = io::read_field(jgs.at("guess_path").get<std::string>());
    } else {
        errors.push_back("ground_state.guess must be auto|gaussian|thomas-fermi|file");
    }

    // evolve options
    json je = j.value("evolve", json::object());
    check_keys(je, {"tau", "t_final", "stride", "snapshot_times", "basis", "potential", "form",
                    "mass_abort_tol"},
               "evolve.", errors);
    cfg.evolve.tau = get_or(je, "tau", 1e-3);
    cfg.evolve.t_final = get_or(je, "t_final", 1.0);
    cfg.evolve.stride = je.contains("stride") ? je.at("stride").get<long>() : 1;
    cfg.evolve.mass_abort_tol = get_or(je, "mass_abort_tol", 1e-8);
    if (je.contains("snapshot_times"))
        cfg.evolve.snapshot_times = je.at("snapshot_times").get<std::vector<double>>();
    std::string basis = je.value("basis", "sine");
    if (basis == "fourier")
        cfg.fourier_basis = true;
    else if (basis != "sine")
        errors.push_back("evolve.basis must be 'sine' or 'fourier'");
    std::string pot = je.value("potential", "harmonic");
    if (pot == "none")
        cfg.zero_potential = true;
    else if (pot != "harmonic")
        errors.push_back("evolve.potential must be 'harmonic' or 'none'");
    std::string form = je.value("form", "original");
    if (form == "transformed")
        cfg.transformed_form = true;
    else if (form != "original")
        errors.push_back("evolve.form must be 'original' or 'transformed'");

    // initial data
    if (j.contains("initial_data")) {
        const json& ji = j.at("initial_data");
        check_keys(ji, {"name", "params", "path", "components"}, "initial_data.", errors);
        auto parse_one = [&errors](const json& js, InitialDataSpec& spec,
                                   const std::string& where) {
            check_keys(js, {"name", "params", "path"}, where, errors);
            spec.name = js.value("name", "gaussian");
            spec.params = js.value("params", json::object());
            spec.path = js.value("path", "");
            if (spec.name == "file" && spec.path.empty())
                errors.push_back(where + "name 'file' needs a path");
        };
        if (ji.contains("components")) {
            for (const auto& jc : ji.at("components")) {
                InitialDataSpec s;
                parse_one(jc, s, "initial_data.components[].");
                cfg.initial_components.push_back(std::move(s));
            }
        } else {
            parse_one(ji, cfg.initial, "initial_data.");
        }
    }

    // bdg options
    json jb = j.value("bdg", json::object());
    check_keys(jb, {"residual_threshold", "num_modes"}, "bdg.", errors);
    cfg.bdg_residual_threshold = get_or(jb, "residual_threshold", 1e-5);
    cfg.bdg_num_modes = jb.contains("num_modes") ? jb.at("num_modes").get<int>() : 8;

    // convergence study
    json jc = j.value("convergence_study", json::object());
    check_keys(jc, {"taus", "reference_tau"}, "convergence_study.", errors);
    if (jc.contains("taus")) cfg.study_taus = jc.at("taus").get<std::vector<double>>();
    cfg.study_reference_tau = get_or(jc, "reference_tau", 0.0);

    // output
    json jo = j.value("output", json::object());
    check_keys(jo, {"directory"}, "output.", errors);
    cfg.out_dir = jo.value("directory", "out");

    // semantic checks
    try {
        cfg.model.validate();
    } catch (const std::exception& e) {
        errors.push_back(e.what());
    }
    const bool rotating_mode =
        cfg.mode == Mode::GroundStateRotating || cfg.mode == Mode::EvolveRotating;
    if (cfg.mode == Mode::GroundState && cfg.model.beta < 0.0 && cfg.model.dim == 3)
        errors.push_back("groundstate: no ground state exists for beta < 0 in 3D");
    if (cfg.mode == Mode::GroundStateRotating && std::abs(cfg.model.omega) >= 1.0)
        errors.push_back("groundstate-rotating: no ground state exists for |omega| >= 1");
    if (rotating_mode && cfg.model.dim < 2)
        errors.push_back("rotating modes need dimension 2 or 3");
    if (cfg.mode == Mode::EvolveDipolar && !cfg.model.dipole)
        errors.push_back("evolve-dipolar needs model.dipole");
    if (cfg.mode == Mode::EvolveCgpe && !cfg.model.spin_orbit)
        errors.push_back("evolve-cgpe needs model.spin_orbit");
    if (cfg.mode == Mode::ConvergenceStudy && cfg.study_taus.size() < 2)
        errors.push_back("convergence-study needs convergence_study.taus with >= 2 entries");
    const bool needs_initial = cfg.mode == Mode::Evolve || cfg.mode == Mode::EvolveRotating ||
                               cfg.mode == Mode::EvolveDipolar ||
                               cfg.mode == Mode::ConvergenceStudy;
    if (needs_initial && !j.contains("initial_data"))
        errors.push_back(mode_to_string(cfg.mode) + " needs initial_data");
    if (cfg.mode == Mode::EvolveCgpe && cfg.initial_components.empty() &&
        !j.contains("initial_data"))
        errors.push_back("evolve-cgpe needs initial_data (components)");

    if (!errors.empty()) throw ConfigError(errors);

    cfg.evolve.scheme = cfg.mode == Mode::EvolveRotating  ? Scheme::GpeRotating
                        : cfg.mode == Mode::EvolveDipolar ? Scheme::GpeDipolar
                        : cfg.mode == Mode::EvolveCgpe    ? Scheme::CgpeSpinOrbit
                                                          : Scheme::Gpe;
    cfg.evolve.zero_potential = cfg.zero_potential;

    // echo with defaults resolved
    json resolved;
    resolved["mode"] = mode_to_string(cfg.mode);
    resolved["grid"]["axes"] = json::array();
    for (int d = 0; d < cfg.grid.dim(); ++d)
        resolved["grid"]["axes"].push_back({{"a", cfg.grid.axis(d).a},
                                            {"b", cfg.grid.axis(d).b},
                                            {"m", cfg.grid.axis(d).m}});
    resolved["model"] = {{"dimension", cfg.model.dim},   {"beta", cfg.model.beta},
                         {"gamma_y", cfg.model.trap.gamma_y}, {"gamma_z", cfg.model.trap.gamma_z},
                         {"omega", cfg.model.omega},     {"epsilon", cfg.model.epsilon}};
    if (cfg.model.dipole)
        resolved["model"]["dipole"] = {
            {"lambda", cfg.model.dipole->lambda},
            {"axis", cfg.model.dipole->axis},
            {"mode", cfg.model.dipole->mode == DipoleKernel::ThreeD ? "3d" : "2d-sdm"}};
    if (cfg.model.spin_orbit)
        resolved["model"]["spin_orbit"] = {
            {"k0", cfg.model.spin_orbit->k0},     {"delta", cfg.model.spin_orbit->delta},
            {"rabi", cfg.model.spin_orbit->rabi}, {"beta11", cfg.model.spin_orbit->beta11},
            {"beta12", cfg.model.spin_orbit->beta12}, {"beta22", cfg.model.spin_orbit->beta22}};
    resolved["ground_state"] = {
        {"tau", cfg.ground.resolved_tau(cfg.model.beta)},
        {"stop_tol", cfg.ground.stop_tol},
        {"max_iters", cfg.ground.max_iters},
        {"backend", cfg.ground.backend == GfdnBackend::SineSpectral ? "besp" : "befd"}};
    resolved["evolve"] = {{"tau", cfg.evolve.tau},
                          {"t_final", cfg.evolve.t_final},
                          {"stride", cfg.evolve.stride},
                          {"basis", cfg.fourier_basis ? "fourier" : "sine"},
                          {"potential", cfg.zero_potential ? "none" : "harmonic"},
                          {"form", cfg.transformed_form ? "transformed" : "original"},
                          {"mass_abort_tol", cfg.evolve.mass_abort_tol}};
    resolved["initial_data"] = {{"name", cfg.initial.name}, {"params", cfg.initial.params}};
    resolved["output"] = {{"directory", cfg.out_dir}};
    if (!cfg.study_taus.empty())
        resolved["convergence_study"] = {{"taus", cfg.study_taus},
                                         {"reference_tau", cfg.study_reference_tau}};
    cfg.resolved = resolved;
    return cfg;
}

namespace {

std::array<double, 3> vec3_from(const json& j, const char* key, std::array<double, 3> dflt) {
    if (!j.contains(key)) return dflt;
    auto v = j.at(key).get<std::vector<double>>();
    std::array<double, 3> out = dflt;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, v.size()); ++i) out[i] = v[i];
    return out;
}

} // namespace

ComplexField make_initial_field(const InitialDataSpec& spec, const Grid& grid,
                                const ModelParams& params, const GfdnConfig& ground) {
    const json& p = spec.params.is_object() ? spec.params : json::object();
    if (spec.name == "file") return io::read_field(spec.path);

    if (spec.name == "gaussian") {
        // squeezed/shifted gaussian with an optional velocity phase
        const double sigma = get_or(p, "sigma", 1.0);
        auto center = vec3_from(p, "center", {0.0, 0.0, 0.0});
        auto velocity = vec3_from(p, "velocity", {0.0, 0.0, 0.0});
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            double r2 = 0.0, wx = 0.0;
            for (int d = 0; d < grid.dim(); ++d) {
                const double dx = x[std::size_t(d)] - center[std::size_t(d)];
                r2 += dx * dx;
                wx += velocity[std::size_t(d)] * x[std::size_t(d)];
            }
            const double amp = std::exp(-0.5 * r2 / (sigma * sigma));
            return amp * cdouble{std::cos(wx), std::sin(wx)};
        });
        normalize_in_place(f);
        return f;
    }
    if (spec.name == "linear-ground-state") {
        oracles::LinearGroundState lin = oracles::linear_ground_state(grid.dim(), params.trap);
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            return cdouble{lin.profile(x), 0.0};
        });
        normalize_in_place(f);
        return f;
    }
    if (spec.name == "thomas-fermi") {
        ModelParams mp = params;
        if (p.contains("beta")) mp.beta = p.at("beta").get<double>();
        return normalize(tf_ground_state(mp, grid).phi);
    }
    if (spec.name == "ground-state") {
        GroundStateResult gs = solve_ground_state(params, grid, ground);
        return gs.phi;
    }
    if (spec.name == "shifted-ground-state") {
        // phi_e(x - x0) e^{i w0 . x}
        GroundStateResult gs = solve_ground_state(params, grid, ground);
        auto x0 = vec3_from(p, "x0", {0.0, 0.0, 0.0});
        auto w0 = vec3_from(p, "w0", {0.0, 0.0, 0.0});
        SineCoeffs coeffs = sine_forward(gs.phi);
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            std::array<double, 3> q = x;
            double wx = 0.0;
            bool inside = true;
            for (int d = 0; d < grid.dim(); ++d) {
                q[std::size_t(d)] -= x0[std::size_t(d)];
                wx += w0[std::size_t(d)] * x[std::size_t(d)];
                if (q[std::size_t(d)] <= grid.axis(d).a || q[std::size_t(d)] >= grid.axis(d).b)
                    inside = false;
            }
            if (!inside) return cdouble{0.0, 0.0};
            return eval_sine_series(coeffs, q) * cdouble{std::cos(wx), std::sin(wx)};
        });
        return f;
    }
    if (spec.name == "vortex") {
        // (x + i y)^m gaussian seed for rotating ground states
        if (grid.dim() < 2) throw InvalidInput("initial_data vortex: needs dim >= 2");
        const int m = p.contains("m") ? p.at("m").get<int>() : 1;
        const double gy = params.trap.gamma_y;
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            cdouble w{x[0], x[1]};
            cdouble pw{1.0, 0.0};
            for (int k = 0; k < m; ++k) pw *= w;
            double r2 = x[0] * x[0] + gy * x[1] * x[1];
            for (int d = 2; d < grid.dim(); ++d) r2 += x[std::size_t(d)] * x[std::size_t(d)];
            return pw * std::exp(-0.5 * r2);
        });
        normalize_in_place(f);
        return f;
    }
    if (spec.name == "bright-soliton") {
        const double a = get_or(p, "amplitude", 1.0);
        const double v = get_or(p, "velocity", 0.0);
        const double x0 = get_or(p, "x0", 0.0);
        const double theta0 = get_or(p, "theta0", 0.0);
        ComplexField f = ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            return oracles::bright_soliton(x[0], 0.0, a, v, x0, theta0, params.beta);
        });
        return f;
    }
    if (spec.name == "plane-wave") {
        auto k = vec3_from(p, "k", {1.0, 0.0, 0.0});
        const double amp = get_or(p, "amplitude", 1.0);
        return ComplexField::sample(grid, [&](const std::array<double, 3>& x) {
            double kx = 0.0;
            for (int d = 0; d < grid.dim(); ++d) kx += k[std::size_t(d)] * x[std::size_t(d)];
            return amp * cdouble{std::cos(kx), std::sin(kx)};
        });
    }
    throw InvalidInput("unknown initial_data generator '" + spec.name + "'");
}

namespace {

json summary_base(const ExperimentConfig& cfg) {
    json s;
    s["config"] = cfg.resolved;
    s["deterministic"] = cfg.deterministic;
    return s;
}

void write_summary(const ExperimentConfig& cfg, const json& summary) {
    std::ofstream out(fs::path(cfg.out_dir) / "summary.json");
    if (!out) throw std::ios_base::failure("cannot write summary.json");
    out << summary.dump(2) << "\n";
}

json ground_state_json(const GroundStateResult& gs) {
    return {{"energy", gs.energy},
            {"mu", gs.mu},
            {"iterations", gs.iterations},
            {"residual", gs.residual},
            {"eigen_residual", gs.eigen_residual},
            {"virial_residual", gs.virial_residual}};
}

/// Periodic-basis scalar run for the V=0 fixtures (soliton, plane wave).
Trajectory evolve_periodic_fixture(const ExperimentConfig& cfg, const ComplexField& psi0) {
    PeriodicBox box = PeriodicBox::from_grid(cfg.grid);
    PeriodicField f(box);
    const std::size_t n = box.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = box.coords(i);
        std::array<int, 3> node{idx[0], idx[1], idx[2]};
        f.values[i] = psi0.values()[cfg.grid.node_index(node)];
    }
    std::vector<double> vpot;
    const std::vector<double>* vptr = nullptr;
    if (!cfg.zero_potential) {
        vpot.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            vpot[i] = harmonic_potential(box.point(box.coords(i)), cfg.model.trap, cfg.model.dim);
        vptr = &vpot;
    }

    Trajectory traj;
    const long nsteps = long(std::llround(cfg.evolve.t_final / cfg.evolve.tau));
    const double mass0 = periodic_mass(f);
    double e0 = 0.0;
    auto record = [&](double t) {
        ObservableRecord rec;
        rec.t = t;
        rec.mass = periodic_mass(f);
        const double etot = periodic_energy(f, cfg.model.beta, vptr, cfg.model.kinetic_coeff());
        double pot = 0.0, quart = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double rho = std::norm(f.values[i]);
            if (vptr) pot += (*vptr)[i] * rho;
            quart += rho * rho;
        }
        rec.energy.potential = box.cell_volume() * pot;
        rec.energy.interaction = 0.5 * cfg.model.beta * box.cell_volume() * quart;
        rec.energy.kinetic = etot - rec.energy.potential - rec.energy.interaction;
        rec.energy.total = etot;
        rec.mu = etot + rec.energy.interaction;
        for (std::size_t i = 0; i < n; ++i) {
            auto p = box.point(box.coords(i));
            double rho = std::norm(f.values[i]);
            for (int d = 0; d < box.dim(); ++d) {
                rec.widths[std::size_t(d)] += p[std::size_t(d)] * p[std::size_t(d)] * rho;
                rec.xc[std::size_t(d)] += p[std::size_t(d)] * rho;
            }
        }
        for (int d = 0; d < 3; ++d) {
            rec.widths[std::size_t(d)] *= box.cell_volume();
            rec.xc[std::size_t(d)] *= box.cell_volume();
        }
        traj.records.push_back(rec);
        if (traj.records.size() == 1) e0 = etot;
        traj.energy_drift =
            std::max(traj.energy_drift, std::abs(etot - e0) / std::max(1.0, std::abs(e0)));
        traj.mass_drift = std::max(traj.mass_drift, std::abs(rec.mass - mass0));
    };
    record(0.0);
    for (long step = 1; step <= nsteps; ++step) {
        periodic_tssp_step(f, cfg.model.beta, cfg.evolve.tau, vptr, cfg.model.epsilon);
        const double t = double(step) * cfg.evolve.tau;
        const double m = periodic_mass(f);
        if (!std::isfinite(m)) throw BlowUp("evolve: non-finite values", t);
        if (std::abs(m - mass0) > cfg.evolve.mass_abort_tol)
            throw BlowUp("evolve: mass deviated beyond tolerance", t);
        if (step % cfg.evolve.stride == 0 || step == nsteps) record(t);
    }
    return traj;
}

ComplexFieldPair make_initial_pair(const ExperimentConfig& cfg) {
    if (cfg.initial_components.size() >= 2) {
        ComplexField a =
            make_initial_field(cfg.initial_components[0], cfg.grid, cfg.model, cfg.ground);
        ComplexField b =
            make_initial_field(cfg.initial_components[1], cfg.grid, cfg.model, cfg.ground);
        // normalize the pair as a whole
        double total = mass(a) + mass(b);
        const double s = 1.0 / std::sqrt(total);
        for (auto& z : a.values()) z *= s;
        for (auto& z : b.values()) z *= s;
        return ComplexFieldPair(std::move(a), std::move(b));
    }
    ComplexField one = make_initial_field(cfg.initial, cfg.grid, cfg.model, cfg.ground);
    ComplexField a = one, b = one;
    const double s = 1.0 / std::sqrt(2.0);
    for (auto& z : a.values()) z *= s;
    for (auto& z : b.values()) z *= s;
    return ComplexFieldPair(std::move(a), std::move(b));
}

int run_impl(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    json summary = summary_base(cfg);

    switch (cfg.mode) {
        case Mode::GroundState:
        case Mode::GroundStateRotating: {
            GroundStateResult gs = cfg.mode == Mode::GroundState
                                       ? solve_ground_state(cfg.model, cfg.grid, cfg.ground)
                                       : solve_ground_state_rotating(cfg.model, cfg.grid,
                                                                     cfg.ground);
            io::write_field((fs::path(cfg.out_dir) / "ground_state.bin").string(), gs.phi);
            summary["ground_state"] = ground_state_json(gs);
            if (cfg.model.dim >= 2) summary["ground_state"]["lz"] = angular_momentum(gs.phi);
            write_summary(cfg, summary);
            break;
        }
        case Mode::Evolve:
        case Mode::EvolveRotating:
        case Mode::EvolveDipolar: {
            ComplexField psi0 = make_initial_field(cfg.initial, cfg.grid, cfg.model, cfg.ground);
            ExperimentConfig run_cfg = cfg;
            run_cfg.evolve.on_progress = [](double t, double t_final) {
                std::cerr << "t = " << t << " / " << t_final << "\n";
            };
            Trajectory traj;
            if (cfg.fourier_basis) {
                traj = evolve_periodic_fixture(cfg, psi0);
            } else {
                traj = evolve(psi0, cfg.model, run_cfg.evolve);
            }
            io::write_observables_csv((fs::path(cfg.out_dir) / "observables.csv").string(),
                                      traj.records, cfg.model.dim);
            for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
                auto& [t, field] = traj.snapshots[i];
                io::write_field((fs::path(cfg.out_dir) /
                                 ("snapshot_" + std::to_string(i) + ".bin")).string(),
                                field);
            }
            summary["evolve"] = {{"records", traj.records.size()},
                                 {"energy_drift", traj.energy_drift},
                                 {"mass_drift", traj.mass_drift}};
            write_summary(cfg, summary);
            break;
        }
        case Mode::EvolveCgpe: {
            ComplexFieldPair psi0 = make_initial_pair(cfg);
            Trajectory traj = evolve_cgpe(psi0, cfg.model, *cfg.model.spin_orbit, cfg.evolve,
                                          cfg.transformed_form ? CgpeForm::PhaseTransformed
                                                               : CgpeForm::Original);
            io::write_observables_csv((fs::path(cfg.out_dir) / "observables.csv").string(),
                                      traj.records, cfg.model.dim);
            summary["evolve"] = {{"records", traj.records.size()},
                                 {"energy_drift", traj.energy_drift},
                                 {"mass_drift", traj.mass_drift}};
            write_summary(cfg, summary);
            break;
        }
        case Mode::Bdg: {
            GfdnConfig tight = cfg.ground;
            GroundStateResult gs = solve_ground_state(cfg.model, cfg.grid, tight);
            BdgOperator op = assemble_bdg(gs, cfg.model, cfg.bdg_residual_threshold);
            BdgSpectrum spec = solve_bdg(op);
            std::ofstream csv(fs::path(cfg.out_dir) / "bdg_modes.csv");
            csv << "index,omega_re,omega_im,norm_defect\n";
            const int nmodes = std::min<int>(cfg.bdg_num_modes, int(spec.physical.size()));
            for (int i = 0; i < nmodes; ++i) {
                const BdgMode& m = spec.physical[std::size_t(i)];
                csv << i << ',' << m.omega << ',' << m.omega_imag << ',' << m.norm_defect << "\n";
            }
            io::write_field((fs::path(cfg.out_dir) / "ground_state.bin").string(), gs.phi);
            // amplitude fields of the reported modes, reusing the dump format
            for (int i = 0; i < nmodes; ++i) {
                const BdgMode& m = spec.physical[std::size_t(i)];
                ComplexField uf(cfg.grid), vf(cfg.grid);
                for (int j = 0; j < op.n; ++j) {
                    uf.values()[std::size_t(j + 1)] = cdouble{m.u[std::size_t(j)], 0.0};
                    vf.values()[std::size_t(j + 1)] = cdouble{m.v[std::size_t(j)], 0.0};
                }
                io::write_field((fs::path(cfg.out_dir) / ("mode_" + std::to_string(i) + "_u.bin")).string(), uf);
                io::write_field((fs::path(cfg.out_dir) / ("mode_" + std::to_string(i) + "_v.bin")).string(), vf);
            }
            summary["ground_state"] = ground_state_json(gs);
            json freqs = json::array();
            for (int i = 0; i < nmodes; ++i) freqs.push_back(spec.physical[std::size_t(i)].omega);
            summary["bdg"] = {{"frequencies", freqs},
                              {"excluded", spec.excluded.size()}};
            write_summary(cfg, summary);
            break;
        }
        case Mode::ConvergenceStudy: {
            ComplexField psi0 = make_initial_field(cfg.initial, cfg.grid, cfg.model, cfg.ground);
            std::vector<double> taus = cfg.study_taus;
            std::sort(taus.begin(), taus.end(), std::greater<double>());
            const double tau_ref = cfg.study_reference_tau > 0.0 ? cfg.study_reference_tau
                                                                 : taus.back() / 8.0;
            // reference solution at tau_ref
            EvolveConfig er = cfg.evolve;
            er.tau = tau_ref;
            er.stride = std::max<long>(1, long(std::llround(cfg.evolve.t_final / tau_ref)));
            er.snapshot_times = {cfg.evolve.t_final};
            Trajectory ref = evolve(psi0, cfg.model, er);
            const ComplexField& psi_ref = ref.snapshots.back().second;

            std::vector<double> errs;
            for (double tau : taus) {
                EvolveConfig ec = er;
                ec.tau = tau;
                Trajectory t = evolve(psi0, cfg.model, ec);
                double err = 0.0;
                const auto& a = t.snapshots.back().second.values();
                const auto& b = psi_ref.values();
                for (std::size_t i = 0; i < a.size(); ++i)
                    err = std::max(err, std::abs(a[i] - b[i]));
                errs.push_back(err);
            }
            json orders = json::array();
            for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
                const double ratio = taus[i] / taus[i + 1];
                orders.push_back(std::log(errs[i] / errs[i + 1]) / std::log(ratio));
            }
            summary["convergence_study"] = {{"taus", taus},
                                            {"errors", errs},
                                            {"observed_orders", orders},
                                            {"reference_tau", tau_ref}};
            write_summary(cfg, summary);
            std::cerr << "observed temporal orders: " << orders.dump() << "\n";
            break;
        }
    }
    return 0;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg) {
    try {
        return run_impl(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        std::cerr << "no convergence: " << e.what() << " (residual " << e.residual << ")\n";
        return 3;
    } catch (const BlowUp& e) {
        std::cerr << "instability: " << e.what() << " at t = " << e.t << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace gpe::runner
