#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpe/bdg.hpp"
#include "gpe/cgpe.hpp"
#include "gpe/dipolar.hpp"
#include "gpe/dynamics.hpp"
#include "gpe/groundstate.hpp"
#include "gpe/io.hpp"
#include "gpe/observables.hpp"
#include "gpe/oracles.hpp"
#include "gpe/runner.hpp"
#include "gpe/spectral.hpp"

namespace py = pybind11;
using namespace gpe;

namespace {

std::vector<py::ssize_t> node_shape(const Grid& g) {
    std::vector<py::ssize_t> shape;
    for (int d = 0; d < g.dim(); ++d) shape.push_back(g.axis(d).m + 1);
    return shape;
}

py::array_t<cdouble> field_to_numpy(const ComplexField& f) {
    auto arr = py::array_t<cdouble>(node_shape(f.grid()));
    std::copy(f.values().begin(), f.values().end(), arr.mutable_data());
    return arr;
}

ComplexField numpy_to_field(const Grid& g, const py::array_t<cdouble>& arr) {
    auto buf = arr.request();
    if (std::size_t(buf.size) != g.node_count())
        throw InvalidInput("array shape does not match the grid");
    ComplexField f(g);
    auto contiguous = py::array_t<cdouble, py::array::c_style | py::array::forcecast>(arr);
    std::copy(contiguous.data(), contiguous.data() + g.node_count(), f.values().begin());
    f.zero_boundary();
    return f;
}

Grid grid_from_axes(const std::vector<std::tuple<double, double, int>>& axes) {
    std::vector<Axis> ax;
    for (const auto& [a, b, m] : axes) ax.push_back(Axis{a, b, m});
    return Grid(ax);
}

ModelParams params_from_kwargs(int dim, double beta, double gamma_y, double gamma_z, double omega,
                               double epsilon) {
    ModelParams p;
    p.dim = dim;
    p.beta = beta;
    p.trap.gamma_y = gamma_y;
    p.trap.gamma_z = gamma_z;
    p.omega = omega;
    p.epsilon = epsilon;
    p.validate();
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gross-Pitaevskii solver suite: ground states, splitting dynamics, excitations";

    py::register_exception<InvalidInput>(m, "InvalidInput");
    py::register_exception<NonConvergence>(m, "NonConvergenceError");
    py::register_exception<BlowUp>(m, "BlowUpError");

    py::class_<Grid>(m, "Grid")
        .def(py::init(&grid_from_axes), py::arg("axes"),
             "axes: list of (a, b, m) per dimension")
        .def_property_readonly("dim", &Grid::dim)
        .def("nodes",
             [](const Grid& g, int axis) {
                 std::vector<double> x(std::size_t(g.axis(axis).m + 1));
                 for (int j = 0; j <= g.axis(axis).m; ++j) x[std::size_t(j)] = g.axis(axis).node(j);
                 return x;
             })
        .def_property_readonly("cell_volume", &Grid::cell_volume);

    m.def("make_params", &params_from_kwargs, py::arg("dim"), py::arg("beta") = 0.0,
          py::arg("gamma_y") = 1.0, py::arg("gamma_z") = 1.0, py::arg("omega") = 0.0,
          py::arg("epsilon") = 1.0);

    py::class_<ModelParams>(m, "ModelParams")
        .def_readwrite("dim", &ModelParams::dim)
        .def_readwrite("beta", &ModelParams::beta)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("epsilon", &ModelParams::epsilon);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("interaction", &EnergyBreakdown::interaction)
        .def_readonly("rotation", &EnergyBreakdown::rotation)
        .def_readonly("dipolar", &EnergyBreakdown::dipolar)
        .def_readonly("josephson", &EnergyBreakdown::josephson)
        .def_readonly("total", &EnergyBreakdown::total);

    // grid-space helpers
    m.def("sample_gaussian", [](const Grid& g, double sigma, std::array<double, 3> center) {
        ComplexField f = ComplexField::sample(g, [&](const std::array<double, 3>& x) {
            double r2 = 0.0;
            for (int d = 0; d < g.dim(); ++d) {
                double dx = x[std::size_t(d)] - center[std::size_t(d)];
                r2 += dx * dx;
            }
            return cdouble{std::exp(-0.5 * r2 / (sigma * sigma)), 0.0};
        });
        normalize_in_place(f);
        return field_to_numpy(f);
    }, py::arg("grid"), py::arg("sigma") = 1.0,
       py::arg("center") = std::array<double, 3>{0.0, 0.0, 0.0});

    m.def("discrete_norm", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return discrete_norm(numpy_to_field(g, arr));
    });
    m.def("mass", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return mass(numpy_to_field(g, arr));
    });
    m.def("normalize", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return field_to_numpy(normalize(numpy_to_field(g, arr)));
    });
    m.def("energy", [](const Grid& g, const py::array_t<cdouble>& arr, const ModelParams& p) {
        return energy(numpy_to_field(g, arr), p);
    });
    m.def("chemical_potential",
          [](const Grid& g, const py::array_t<cdouble>& arr, const ModelParams& p) {
              return chemical_potential(numpy_to_field(g, arr), p);
          });
    m.def("widths", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return widths(numpy_to_field(g, arr));
    });
    m.def("center_of_mass", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return center_of_mass(numpy_to_field(g, arr));
    });
    m.def("angular_momentum", [](const Grid& g, const py::array_t<cdouble>& arr) {
        return angular_momentum(numpy_to_field(g, arr));
    });

    // solvers
    m.def(
        "solve_ground_state",
        [](const ModelParams& p, const Grid& g, double tau, double stop_tol, long max_iters) {
            GfdnConfig c;
            c.tau = tau;
            c.stop_tol = stop_tol;
            c.max_iters = max_iters;
            GroundStateResult r = solve_ground_state(p, g, c);
            py::dict out;
            out["phi"] = field_to_numpy(r.phi);
            out["energy"] = r.energy;
            out["mu"] = r.mu;
            out["iterations"] = r.iterations;
            out["residual"] = r.residual;
            out["virial_residual"] = r.virial_residual;
            return out;
        },
        py::arg("params"), py::arg("grid"), py::arg("tau") = 0.0, py::arg("stop_tol") = 1e-6,
        py::arg("max_iters") = 500000);

    m.def(
        "tssp_step",
        [](const Grid& g, const py::array_t<cdouble>& arr, const ModelParams& p, double tau) {
            return field_to_numpy(tssp_step(numpy_to_field(g, arr), p, tau));
        },
        py::arg("grid"), py::arg("psi"), py::arg("params"), py::arg("tau"));

    m.def(
        "evolve",
        [](const Grid& g, const py::array_t<cdouble>& arr, const ModelParams& p, double tau,
           double t_final, long stride) {
            EvolveConfig c;
            c.tau = tau;
            c.t_final = t_final;
            c.stride = stride;
            c.snapshot_times = {t_final};
            Trajectory traj = evolve(numpy_to_field(g, arr), p, c);
            py::dict out;
            out["psi_final"] = field_to_numpy(traj.snapshots.back().second);
            out["mass_drift"] = traj.mass_drift;
            out["energy_drift"] = traj.energy_drift;
            py::list ts, masses, energies, xcs;
            for (const auto& rec : traj.records) {
                ts.append(rec.t);
                masses.append(rec.mass);
                energies.append(rec.energy.total);
                xcs.append(rec.xc[0]);
            }
            out["t"] = ts;
            out["mass"] = masses;
            out["energy"] = energies;
            out["xc"] = xcs;
            return out;
        },
        py::arg("grid"), py::arg("psi0"), py::arg("params"), py::arg("tau") = 1e-3,
        py::arg("t_final") = 1.0, py::arg("stride") = 10);

    m.def(
        "bdg_frequencies",
        [](const ModelParams& p, const Grid& g, int count, double stop_tol) {
            GfdnConfig c;
            c.stop_tol = stop_tol;
            c.max_iters = 2000000;
            GroundStateResult r = solve_ground_state(p, g, c);
            BdgSpectrum spec = solve_bdg(assemble_bdg(r, p));
            std::vector<double> out;
            for (int i = 0; i < count && i < int(spec.physical.size()); ++i)
                out.push_back(spec.physical[std::size_t(i)].omega);
            return out;
        },
        py::arg("params"), py::arg("grid"), py::arg("count") = 5, py::arg("stop_tol") = 1e-10);

    // oracles
    m.def("tf_estimates", [](double beta, double gamma_y, double gamma_z, int dim) {
        TrapParams trap{gamma_y, gamma_z};
        auto est = oracles::tf_estimates(beta, trap, dim);
        py::dict out;
        out["mu"] = est.mu;
        out["energy"] = est.energy;
        out["radii"] = est.radii;
        return out;
    }, py::arg("beta"), py::arg("gamma_y") = 1.0, py::arg("gamma_z") = 1.0, py::arg("dim") = 1);
    m.def("dispersion_omega", [](std::array<double, 3> k, int dim, double amplitude, double beta) {
        return oracles::dispersion_omega(k, dim, amplitude, beta);
    });
    m.def("dipolar_kernel_hat", [](std::array<double, 3> xi, const std::string& mode) {
        return dipolar_kernel_hat(xi, mode == "3d" ? DipoleKernel::ThreeD
                                                   : DipoleKernel::TwoD_SDM);
    });

    // experiment runner
    m.def("run_experiment_json", [](const std::string& config_text, const std::string& out_dir) {
        runner::ExperimentConfig cfg = runner::parse_config(config_text);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return runner::run_experiment(cfg);
    }, py::arg("config_text"), py::arg("out_dir") = "");
}
