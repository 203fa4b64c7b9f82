#include "helmlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "helmlab/errors.hpp"

namespace helmlab {

GridSpec::GridSpec(std::vector<std::size_t> n, std::vector<double> L)
    : points(std::move(n)), half_width(std::move(L)) {
    validate();
}

GridSpec GridSpec::cube(int ndim, std::size_t n, double L) {
    return GridSpec(std::vector<std::size_t>(ndim, n), std::vector<double>(ndim, L));
}

void GridSpec::validate() const {
    if (points.size() != half_width.size())
        throw InvalidInput("grid: points and half widths differ in length");
    if (points.empty() || points.size() > 3) throw InvalidInput("grid: ndim must be 1, 2 or 3");
    for (std::size_t a = 0; a < points.size(); ++a) {
        const std::size_t n = points[a];
        if (n < 8 || (n & (n - 1)) != 0)
            throw InvalidInput("grid: axis " + std::to_string(a) + " needs a power of two >= 8");
        if (!(half_width[a] > 0.0) || !std::isfinite(half_width[a]))
            throw InvalidInput("grid: half width must be positive");
    }
}

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (auto n : points) s *= n;
    return s;
}

double GridSpec::dual_spacing(int axis) const { return std::numbers::pi / half_width[axis]; }

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < ndim(); ++a) v *= spacing(a);
    return v;
}

double GridSpec::dual_cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < ndim(); ++a) v *= dual_spacing(a);
    return v;
}

double GridSpec::coord(int axis, std::size_t i) const {
    return -half_width[axis] + double(i) * spacing(axis);
}

double GridSpec::freq(int axis, std::size_t i) const {
    return (double(i) - double(points[axis] / 2)) * dual_spacing(axis);
}

std::size_t GridSpec::stride(int axis) const {
    std::size_t s = 1;
    for (int a = ndim() - 1; a > axis; --a) s *= points[a];
    return s;
}

GridSpec GridSpec::drop_last() const {
    GridSpec g;
    g.points.assign(points.begin(), points.end() - 1);
    g.half_width.assign(half_width.begin(), half_width.end() - 1);
    return g;
}

std::vector<std::size_t> unflatten(const GridSpec& g, std::size_t k) {
    std::vector<std::size_t> idx(g.ndim());
    for (int a = g.ndim() - 1; a >= 0; --a) {
        idx[a] = k % g.points[a];
        k /= g.points[a];
    }
    return idx;
}

SampledField::SampledField(GridSpec g, Domain d) : grid(std::move(g)), values(grid.size()), domain(d) {}

SampledField::SampledField(GridSpec g, CVec v, Domain d) : grid(std::move(g)), values(std::move(v)), domain(d) {
    if (values.size() != grid.size()) throw InvalidInput("field: value count does not match grid");
}

void SampledField::check_compatible(const SampledField& o) const {
    if (grid != o.grid || domain != o.domain || values.size() != o.values.size())
        throw InvalidInput("field: grids or domains differ");
}

SampledField& SampledField::operator+=(const SampledField& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

SampledField& SampledField::operator-=(const SampledField& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

SampledField& SampledField::operator*=(cplx c) {
    for (auto& v : values) v *= c;
    return *this;
}

SampledField SampledField::conj() const {
    SampledField r = *this;
    for (auto& v : r.values) v = std::conj(v);
    return r;
}

SampledField operator+(SampledField a, const SampledField& b) { return a += b; }
SampledField operator-(SampledField a, const SampledField& b) { return a -= b; }
SampledField operator*(cplx c, SampledField a) { return a *= c; }

double shell_ratio(const SampledField& f) {
    const GridSpec& g = f.grid;
    double peak = 0.0, shell = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double m = std::abs(f.values[k]);
        peak = std::max(peak, m);
        auto idx = unflatten(g, k);
        bool outer = false;
        for (int a = 0; a < g.ndim(); ++a) {
            const std::size_t band = std::max<std::size_t>(1, g.points[a] / 20);
            if (idx[a] < band || idx[a] >= g.points[a] - band) outer = true;
        }
        if (outer) shell = std::max(shell, m);
    }
    return peak > 0.0 ? shell / peak : 0.0;
}

}  // namespace helmlab
