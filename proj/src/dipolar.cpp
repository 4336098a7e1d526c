#include "gpe/dipolar.hpp"

#include <cmath>

#include "gpe/periodic.hpp"

namespace gpe {

namespace {

/// Factor-2 zero-padded periodic box around the grid: each axis keeps its
/// spacing, doubles its extent, and centers the original domain.
PeriodicBox padded_box(const Grid& grid) {
    std::array<double, 3> a{0.0, 0.0, 0.0}, len{1.0, 1.0, 1.0};
    std::array<int, 3> m{1, 1, 1};
    for (int d = 0; d < grid.dim(); ++d) {
        const Axis& ax = grid.axis(d);
        a[std::size_t(d)] = ax.a - 0.5 * ax.length();
        len[std::size_t(d)] = 2.0 * ax.length();
        m[std::size_t(d)] = 2 * ax.m;
    }
    return PeriodicBox(grid.dim(), a, len, m);
}

/// Node index offsets placing grid node j on padded node j + m/2.
std::array<int, 3> pad_offset(const Grid& grid) {
    std::array<int, 3> off{0, 0, 0};
    for (int d = 0; d < grid.dim(); ++d) off[std::size_t(d)] = grid.axis(d).m / 2;
    return off;
}

void embed(const Grid& grid, const std::vector<double>& rho, const PeriodicBox& box,
           std::vector<cdouble>& data) {
    data.assign(box.size(), cdouble{0.0, 0.0});
    const auto off = pad_offset(grid);
    const std::size_t n = grid.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid.node_coords(i);
        std::array<int, 3> p{0, 0, 0};
        for (int d = 0; d < grid.dim(); ++d) p[std::size_t(d)] = idx[std::size_t(d)] + off[std::size_t(d)];
        data[box.index(p)] = cdouble{rho[i], 0.0};
    }
}

std::vector<double> restrict_to_grid(const Grid& grid, const PeriodicBox& box,
                                     const std::vector<cdouble>& data) {
    std::vector<double> out(grid.node_count(), 0.0);
    const auto off = pad_offset(grid);
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid.node_coords(i);
        std::array<int, 3> p{0, 0, 0};
        for (int d = 0; d < grid.dim(); ++d) p[std::size_t(d)] = idx[std::size_t(d)] + off[std::size_t(d)];
        out[i] = data[box.index(p)].real();
    }
    return out;
}

/// Truncated-kernel symbol of the 3D Coulomb solve: for G = 1/(4 pi |x|)
/// restricted to |x| <= T the Fourier transform is (1 - cos(T|xi|))/|xi|^2,
/// smooth at xi = 0 (value T^2/2). T = half the padded box side keeps the
/// periodization alias-free.
double coulomb_hat_truncated(double k, double trunc_radius) {
    if (k == 0.0) return 0.5 * trunc_radius * trunc_radius;
    return (1.0 - std::cos(trunc_radius * k)) / (k * k);
}

enum class SymbolKind {
    Poisson,    // truncated-kernel G_hat (free space)
    Dipolar,    // L_n symbol * G_hat
    DirectDdi,  // lambda (3 (n.xi)^2/|xi|^2 - 1)
};

std::vector<double> convolve(const Grid& grid, const std::vector<double>& rho,
                             const DipoleParams& dip, SymbolKind kind) {
    const PeriodicBox box = padded_box(grid);
    double trunc = 1e300;
    for (int d = 0; d < grid.dim(); ++d) trunc = std::min(trunc, 0.5 * box.length(d));

    std::vector<cdouble> data;
    embed(grid, rho, box, data);
    box_fft_forward(box, data);

    const auto& n = dip.axis;
    const std::size_t total = box.size();
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = box.coords(i);
        std::array<double, 3> xi{0.0, 0.0, 0.0};
        double k2 = 0.0;
        for (int d = 0; d < grid.dim(); ++d) {
            xi[std::size_t(d)] = box.frequency(d, idx[std::size_t(d)]);
            k2 += xi[std::size_t(d)] * xi[std::size_t(d)];
        }
        const double k = std::sqrt(k2);
        double sym = 0.0;
        switch (kind) {
            case SymbolKind::Poisson:
                sym = coulomb_hat_truncated(k, trunc);
                break;
            case SymbolKind::Dipolar: {
                if (dip.mode == DipoleKernel::ThreeD) {
                    const double ndotxi = n[0] * xi[0] + n[1] * xi[1] + n[2] * xi[2];
                    sym = -(ndotxi * ndotxi) * coulomb_hat_truncated(k, trunc);
                } else {
                    // 2D SDM: (d_{n_perp n_perp} - n3^2 Lap) with G_hat = 1/|xi|
                    if (k2 == 0.0) {
                        sym = 0.0;
                    } else {
                        const double nperp = n[0] * xi[0] + n[1] * xi[1];
                        sym = (-(nperp * nperp) + n[2] * n[2] * k2) / k;
                    }
                }
                break;
            }
            case SymbolKind::DirectDdi: {
                if (k2 == 0.0) {
                    sym = -dip.lambda;
                } else {
                    const double ndotxi = n[0] * xi[0] + n[1] * xi[1] + n[2] * xi[2];
                    sym = dip.lambda * (3.0 * ndotxi * ndotxi / k2 - 1.0);
                }
                break;
            }
        }
        data[i] *= sym;
    }
    box_fft_inverse(box, data);
    return restrict_to_grid(grid, box, data);
}

std::vector<double> density_of(const ComplexField& psi) {
    std::vector<double> rho(psi.values().size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(psi.values()[i]);
    return rho;
}

} // namespace

std::vector<double> dipolar_potential(const ComplexField& psi, const DipoleParams& dip) {
    const Grid& g = psi.grid();
    dip.validate(g.dim());
    std::vector<double> phi = convolve(g, density_of(psi), dip, SymbolKind::Dipolar);
    const double eta = dip.eta(g.dim());
    for (double& v : phi) v *= eta;
    return phi;
}

ComplexField dipolar_term(const ComplexField& psi, const DipoleParams& dip) {
    std::vector<double> phi = dipolar_potential(psi, dip);
    ComplexField out(psi.grid());
    for (std::size_t i = 0; i < phi.size(); ++i) out.values()[i] = cdouble{phi[i], 0.0};
    return out;
}

std::vector<double> poisson_free_space(const Grid& grid, const std::vector<double>& rho) {
    if (grid.dim() != 3) throw InvalidInput("poisson_free_space: needs a 3D grid");
    if (rho.size() != grid.node_count())
        throw InvalidInput("poisson_free_space: density shape mismatch");
    DipoleParams dummy;
    return convolve(grid, rho, dummy, SymbolKind::Poisson);
}

std::vector<double> ddi_apply_direct_symbol(const Grid& grid, const std::vector<double>& rho,
                                            const DipoleParams& dip) {
    if (grid.dim() != 3) throw InvalidInput("ddi decomposition: 3D only");
    return convolve(grid, rho, dip, SymbolKind::DirectDdi);
}

std::vector<double> ddi_apply_decomposed(const Grid& grid, const std::vector<double>& rho,
                                         const DipoleParams& dip) {
    if (grid.dim() != 3) throw InvalidInput("ddi decomposition: 3D only");
    // -lambda rho + eta d_nn u with u = G * rho, as two spectral passes on
    // the padded box (u is kept on the padded nodes between passes).
    const PeriodicBox box = padded_box(grid);
    std::vector<cdouble> data;
    embed(grid, rho, box, data);
    box_fft_forward(box, data);
    const auto& n = dip.axis;
    const std::size_t total = box.size();
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = box.coords(i);
        double k2 = 0.0;
        for (int d = 0; d < 3; ++d) {
            double k = box.frequency(d, idx[std::size_t(d)]);
            k2 += k * k;
        }
        data[i] *= k2 == 0.0 ? 0.0 : 1.0 / k2; // u_hat, dropped zero mode
    }
    box_fft_inverse(box, data);
    box_fft_forward(box, data);
    for (std::size_t i = 0; i < total; ++i) {
        auto idx = box.coords(i);
        std::array<double, 3> xi{0.0, 0.0, 0.0};
        for (int d = 0; d < 3; ++d) xi[std::size_t(d)] = box.frequency(d, idx[std::size_t(d)]);
        const double ndotxi = n[0] * xi[0] + n[1] * xi[1] + n[2] * xi[2];
        data[i] *= -(ndotxi * ndotxi); // d_nn symbol
    }
    box_fft_inverse(box, data);
    const double eta = dip.eta(3);
    std::vector<cdouble> rho_pad;
    embed(grid, rho, box, rho_pad);
    for (std::size_t i = 0; i < total; ++i)
        data[i] = -dip.lambda * rho_pad[i] + eta * data[i];
    return restrict_to_grid(grid, box, data);
}

} // namespace gpe
