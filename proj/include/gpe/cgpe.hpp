#pragma once

#include "gpe/dynamics.hpp"
#include "gpe/grid.hpp"
#include "gpe/model.hpp"
#include "gpe/periodic.hpp"

namespace gpe {

/// Which display of the coupled equations is stepped: the original form with
/// the gradient coupling i k0 d_x, or the phase-transformed form whose Rabi
/// coupling carries e^{-+ 2 i k0 x} factors and whose kinetic step has no k0
/// shift. Densities of matching runs agree; phases differ by a gauge.
enum class CgpeForm { Original, PhaseTransformed };

/// Strang stepper for the two-component spin-orbit model. The i k0 d_x term
/// is translation-diagonal only in an exponential basis, so the stepper runs
/// on a periodic Fourier grid padded by a factor 2 along x (fields must stay
/// below ~1e-12 near the seam; the trap guarantees that for confined runs).
class CgpeStepper {
public:
    CgpeStepper(const Grid& grid, const ModelParams& params, const SpinOrbitParams& so,
                CgpeForm form = CgpeForm::Original);

    void load(const ComplexFieldPair& state);
    ComplexFieldPair unload() const;
    void step(double tau);

    /// Total discrete mass on the padded box (conserved to roundoff).
    double padded_total_mass() const;
    double padded_component_mass(int component) const;

    const Grid& grid() const { return grid_; }

private:
    void kinetic_half(double tau);
    void pointwise_full(double tau);

    Grid grid_;
    ModelParams params_;
    SpinOrbitParams so_;
    CgpeForm form_;
    PeriodicBox box_;
    std::array<int, 3> offset_;
    std::vector<double> potential_; // trap sampled on the padded box
    std::vector<cdouble> psi1_, psi2_;
};

/// One step of the pair scheme (stateless wrapper: embed, step, restrict).
ComplexFieldPair tssp_step_cgpe(const ComplexFieldPair& psi, const SpinOrbitParams& so,
                                const ModelParams& params, double tau,
                                CgpeForm form = CgpeForm::Original);

enum class TransformDirection { ToTransformed, FromTransformed };

/// psi_j = phi_j e^{i(omega t +- k0 x)} with omega = (delta - k0^2)/2;
/// ToTransformed strips the phases (psi -> phi), FromTransformed restores
/// them. Component densities are exactly invariant.
ComplexFieldPair cgpe_phase_transform(const ComplexFieldPair& state, TransformDirection dir,
                                      const SpinOrbitParams& so, double t);

/// Time loop for the pair model; the padded state is kept across steps so
/// mass conservation is pure roundoff. Records use the restricted fields.
Trajectory evolve_cgpe(const ComplexFieldPair& psi0, const ModelParams& params,
                       const SpinOrbitParams& so, const EvolveConfig& config,
                       CgpeForm form = CgpeForm::Original);

} // namespace gpe
