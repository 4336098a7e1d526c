#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "gpe/errors.hpp"

namespace gpe {

using cdouble = std::complex<double>;

/// One axis of the rectangular tensor grid: nodes x_j = a + j*h, j = 0..m,
/// h = (b-a)/m. Node 0 and node m sit exactly on the boundary.
struct Axis {
    double a = 0.0;
    double b = 0.0;
    int m = 0;

    double spacing() const { return (b - a) / m; }
    double node(int j) const { return j == m ? b : a + j * spacing(); }
    double length() const { return b - a; }
};

/// Tensor grid with homogeneous Dirichlet boundary, dim 1..3.
/// Node arrays are row-major with the first axis slowest.
class Grid {
public:
    explicit Grid(std::vector<Axis> axes);

    static Grid make_1d(double a, double b, int m);
    static Grid make_2d(double ax, double bx, int mx, double ay, double by, int my);
    static Grid make_3d(double ax, double bx, int mx, double ay, double by, int my,
                        double az, double bz, int mz);

    int dim() const { return int(axes_.size()); }
    const Axis& axis(int d) const { return axes_[std::size_t(d)]; }

    std::size_t node_count() const;     // prod (m+1)
    std::size_t interior_count() const; // prod (m-1)
    double cell_volume() const;         // prod h

    std::size_t node_index(const std::array<int, 3>& idx) const;
    std::array<int, 3> node_coords(std::size_t flat) const;
    bool is_boundary(const std::array<int, 3>& idx) const;

    /// Physical coordinates of a node, entries beyond dim() are zero.
    std::array<double, 3> point(const std::array<int, 3>& idx) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    std::vector<Axis> axes_;
};

/// Complex wave function sampled on all grid nodes; boundary values are
/// identically zero (enforced on construction and after sampling).
class ComplexField {
public:
    explicit ComplexField(Grid grid);

    /// Samples f at the nodes; boundary nodes are forced to exactly zero.
    static ComplexField sample(const Grid& grid,
                               const std::function<cdouble(const std::array<double, 3>&)>& f);

    const Grid& grid() const { return grid_; }
    std::vector<cdouble>& values() { return values_; }
    const std::vector<cdouble>& values() const { return values_; }

    cdouble& at(const std::array<int, 3>& idx) { return values_[grid_.node_index(idx)]; }
    const cdouble& at(const std::array<int, 3>& idx) const {
        return values_[grid_.node_index(idx)];
    }

    void zero_boundary();
    /// True if every boundary node is exactly zero and the array shape matches.
    bool boundary_clean() const;

private:
    Grid grid_;
    std::vector<cdouble> values_;
};

/// Two-component wave function sharing one grid (spin-orbit models).
struct ComplexFieldPair {
    ComplexField first;
    ComplexField second;

    ComplexFieldPair(ComplexField a, ComplexField b);
    const Grid& grid() const { return first.grid(); }
};

/// ||f||_h = sqrt(h1*...*hd * sum_interior |f_j|^2).
double discrete_norm(const ComplexField& field);

/// field / ||field||_h; throws InvalidInput on a zero field.
ComplexField normalize(const ComplexField& field);
void normalize_in_place(ComplexField& field);

/// Iterates over grid lines along `axis` of an array with the given dims:
/// fn(base_offset, stride) once per line.
void for_each_line(const std::array<std::size_t, 3>& dims, int ndim, int axis,
                   const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace gpe
