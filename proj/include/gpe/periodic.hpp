#pragma once

#include <array>

#include "gpe/grid.hpp"

namespace gpe {

/// Uniform periodic box sharing the tensor layout of Grid but with m nodes
/// per axis (node m wraps to node 0). Used by the V=0 test fixtures, the
/// spin-orbit stepper and the free-space convolution of the nonlocal term.
class PeriodicBox {
public:
    PeriodicBox(int dim, const std::array<double, 3>& a, const std::array<double, 3>& length,
                const std::array<int, 3>& m);

    /// Same extents and node counts as the Dirichlet grid (node m dropped).
    static PeriodicBox from_grid(const Grid& grid);

    int dim() const { return dim_; }
    int nodes(int axis) const { return m_[std::size_t(axis)]; }
    double origin(int axis) const { return a_[std::size_t(axis)]; }
    double length(int axis) const { return len_[std::size_t(axis)]; }
    double spacing(int axis) const { return len_[std::size_t(axis)] / m_[std::size_t(axis)]; }
    double cell_volume() const;
    std::size_t size() const;

    std::size_t index(const std::array<int, 3>& idx) const;
    std::array<int, 3> coords(std::size_t flat) const;
    std::array<double, 3> point(const std::array<int, 3>& idx) const;

    /// Angular frequency 2*pi*l~/L for DFT index on an axis (negative
    /// frequencies in the upper half).
    double frequency(int axis, int index) const;

private:
    int dim_;
    std::array<double, 3> a_;
    std::array<double, 3> len_;
    std::array<int, 3> m_;
};

/// In-place DFT over every axis of a row-major array shaped like the box.
void box_fft_forward(const PeriodicBox& box, std::vector<cdouble>& data);
void box_fft_inverse(const PeriodicBox& box, std::vector<cdouble>& data);

/// Complex samples on a periodic box.
struct PeriodicField {
    PeriodicBox box;
    std::vector<cdouble> values;

    explicit PeriodicField(PeriodicBox b) : box(b), values(b.size(), cdouble{0.0, 0.0}) {}
};

PeriodicField sample_periodic(const PeriodicBox& box,
                              const std::function<cdouble(const std::array<double, 3>&)>& f);

double periodic_mass(const PeriodicField& f);

/// Energy of the scalar functional on the periodic box (optional sampled
/// potential; V = 0 when null).
double periodic_energy(const PeriodicField& f, double beta, const std::vector<double>* potential,
                       double kinetic_coeff = 0.5);

/// One Strang step of the Fourier-basis splitting (kinetic half step,
/// pointwise phase, kinetic half step). potential may be null for V = 0.
void periodic_tssp_step(PeriodicField& f, double beta, double tau,
                        const std::vector<double>* potential, double epsilon = 1.0);

} // namespace gpe
