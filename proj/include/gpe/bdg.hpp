#pragma once

#include <vector>

#include "gpe/groundstate.hpp"

namespace gpe {

/// Dense symmetric matrix, row-major.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    double& at(int i, int j) { return a[std::size_t(i) * std::size_t(n) + std::size_t(j)]; }
    double at(int i, int j) const { return a[std::size_t(i) * std::size_t(n) + std::size_t(j)]; }
};

/// Jacobi eigensolve of a symmetric matrix; eigenvalues ascending, columns
/// of `vectors` are the corresponding orthonormal eigenvectors.
struct EigenDecomposition {
    std::vector<double> values;
    SymMatrix vectors;
};
EigenDecomposition jacobi_eigensolve(SymMatrix a, int max_sweeps = 64);

/// The linearization around a real 1D ground state:
///   omega u = L u - g v,   -omega v = L v - g u
/// with L = -kc Lap + V + 2 beta phi^2 - mu on the interior nodes (spectral
/// Laplacian, same discretization as the solver) and g = beta phi^2. As a
/// block matrix: [[L, -g], [g, -L]].
struct BdgOperator {
    int n = 0;             // interior node count m-1
    SymMatrix l;           // dense symmetric diagonal block
    std::vector<double> g; // off-diagonal multiplier (diagonal matrix)
    std::vector<double> phi; // unit-dot ground-state direction (zero-mode tag)
    Grid grid;
    double mu = 0.0;

    /// y = B z for z = (u, v) of length 2n.
    std::vector<double> apply(const std::vector<double>& z) const;
};

/// Assembles the operator from a converged ground state; rejects states
/// whose flow residual exceeds `residual_threshold`.
BdgOperator assemble_bdg(const GroundStateResult& ground, const ModelParams& params,
                         double residual_threshold = 1e-5);

struct BdgMode {
    double omega = 0.0;
    double omega_imag = 0.0;        // reported imaginary residual
    std::vector<double> u, v;       // interior node values
    double norm_defect = 0.0;       // | (||u||^2 - ||v||^2) - 1 |
};

struct BdgSpectrum {
    std::vector<BdgMode> physical;  // positive-normalized, sorted by Re omega
    std::vector<double> excluded;   // zero/unnormalizable eigenvalues
};

/// Dense solve via the symmetric reduction: omega^2 are the eigenvalues of
/// L-^(1/2) L+ L-^(1/2) with L± = L ± g. Physical modes are rescaled to
/// ||u||_h^2 - ||v||_h^2 = 1; the zero (Goldstone) direction and
/// unnormalizable pairs are reported separately.
BdgSpectrum solve_bdg(const BdgOperator& op);

} // namespace gpe
