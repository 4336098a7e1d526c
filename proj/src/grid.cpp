#include "gpe/grid.hpp"

#include <cmath>

namespace gpe {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || axes_.size() > 3)
        throw InvalidInput("grid: dimension must be 1, 2 or 3");
    for (const Axis& ax : axes_) {
        if (!(ax.b > ax.a)) throw InvalidInput("grid: axis needs b > a");
        if (ax.m < 8) throw InvalidInput("grid: node count must be >= 8");
        if (ax.m % 2 != 0) throw InvalidInput("grid: node count must be even");
    }
}

Grid Grid::make_1d(double a, double b, int m) { return Grid({Axis{a, b, m}}); }

Grid Grid::make_2d(double ax, double bx, int mx, double ay, double by, int my) {
    return Grid({Axis{ax, bx, mx}, Axis{ay, by, my}});
}

Grid Grid::make_3d(double ax, double bx, int mx, double ay, double by, int my, double az,
                   double bz, int mz) {
    return Grid({Axis{ax, bx, mx}, Axis{ay, by, my}, Axis{az, bz, mz}});
}

std::size_t Grid::node_count() const {
    std::size_t n = 1;
    for (const Axis& ax : axes_) n *= std::size_t(ax.m + 1);
    return n;
}

std::size_t Grid::interior_count() const {
    std::size_t n = 1;
    for (const Axis& ax : axes_) n *= std::size_t(ax.m - 1);
    return n;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (const Axis& ax : axes_) v *= ax.spacing();
    return v;
}

std::size_t Grid::node_index(const std::array<int, 3>& idx) const {
    std::size_t flat = 0;
    for (int d = 0; d < dim(); ++d) flat = flat * std::size_t(axes_[d].m + 1) + std::size_t(idx[d]);
    return flat;
}

std::array<int, 3> Grid::node_coords(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = dim() - 1; d >= 0; --d) {
        std::size_t n = std::size_t(axes_[d].m + 1);
        idx[d] = int(flat % n);
        flat /= n;
    }
    return idx;
}

bool Grid::is_boundary(const std::array<int, 3>& idx) const {
    for (int d = 0; d < dim(); ++d)
        if (idx[d] == 0 || idx[d] == axes_[d].m) return true;
    return false;
}

std::array<double, 3> Grid::point(const std::array<int, 3>& idx) const {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (int d = 0; d < dim(); ++d) p[d] = axes_[d].node(idx[d]);
    return p;
}

bool Grid::operator==(const Grid& other) const {
    if (axes_.size() != other.axes_.size()) return false;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        if (axes_[d].a != other.axes_[d].a || axes_[d].b != other.axes_[d].b ||
            axes_[d].m != other.axes_[d].m)
            return false;
    }
    return true;
}

ComplexField::ComplexField(Grid grid)
    : grid_(std::move(grid)), values_(grid_.node_count(), cdouble{0.0, 0.0}) {}

ComplexField ComplexField::sample(
    const Grid& grid, const std::function<cdouble(const std::array<double, 3>&)>& f) {
    ComplexField out(grid);
    const std::size_t n = grid.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        auto idx = grid.node_coords(i);
        if (grid.is_boundary(idx)) continue;
        out.values()[i] = f(grid.point(idx));
    }
    return out;
}

void ComplexField::zero_boundary() {
    const std::size_t n = grid_.node_count();
    for (std::size_t i = 0; i < n; ++i)
        if (grid_.is_boundary(grid_.node_coords(i))) values_[i] = cdouble{0.0, 0.0};
}

bool ComplexField::boundary_clean() const {
    if (values_.size() != grid_.node_count()) return false;
    const std::size_t n = values_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (grid_.is_boundary(grid_.node_coords(i)) && values_[i] != cdouble{0.0, 0.0})
            return false;
    }
    return true;
}

ComplexFieldPair::ComplexFieldPair(ComplexField a, ComplexField b)
    : first(std::move(a)), second(std::move(b)) {
    if (first.grid() != second.grid())
        throw InvalidInput("field pair: components must share one grid");
}

double discrete_norm(const ComplexField& field) {
    const Grid& g = field.grid();
    double sum = 0.0;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) sum += std::norm(field.values()[i]);
    return std::sqrt(g.cell_volume() * sum);
}

ComplexField normalize(const ComplexField& field) {
    ComplexField out = field;
    normalize_in_place(out);
    return out;
}

void normalize_in_place(ComplexField& field) {
    double nrm = discrete_norm(field);
    if (nrm == 0.0)
        throw InvalidInput("normalize: field has zero discrete norm (division by zero)");
    const double inv = 1.0 / nrm;
    for (cdouble& v : field.values()) v *= inv;
}

void for_each_line(const std::array<std::size_t, 3>& dims, int ndim, int axis,
                   const std::function<void(std::size_t, std::size_t)>& fn) {
    std::size_t stride = 1;
    for (int d = axis + 1; d < ndim; ++d) stride *= dims[std::size_t(d)];
    std::size_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d) outer *= dims[std::size_t(d)];
    for (int d = axis + 1; d < ndim; ++d) inner *= dims[std::size_t(d)];
    const std::size_t axis_len = dims[std::size_t(axis)];
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            fn(o * axis_len * stride + i, stride);
        }
    }
}

} // namespace gpe
