#pragma once
#include <complex>
#include <cstddef>
#include <vector>

namespace helmlab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

enum class Domain : unsigned { physical = 0, frequency = 1 };

// Uniform box [-L_i, L_i) with N_i points per axis, row-major (last axis fastest).
struct GridSpec {
    std::vector<std::size_t> points;
    std::vector<double> half_width;

    GridSpec() = default;
    GridSpec(std::vector<std::size_t> n, std::vector<double> L);
    static GridSpec cube(int ndim, std::size_t n, double L);

    int ndim() const { return static_cast<int>(points.size()); }
    std::size_t size() const;
    double spacing(int axis) const { return 2.0 * half_width[axis] / double(points[axis]); }
    double dual_spacing(int axis) const;
    double nyquist(int axis) const { return dual_spacing(axis) * double(points[axis]) / 2.0; }
    // Cell volume on the physical / frequency side.
    double cell_volume() const;
    double dual_cell_volume() const;
    // Coordinate of index i along an axis: x = -L + i h, xi = (i - N/2) pi / L.
    double coord(int axis, std::size_t i) const;
    double freq(int axis, std::size_t i) const;
    std::size_t stride(int axis) const;
    // Same grid with the last axis removed.
    GridSpec drop_last() const;
    bool operator==(const GridSpec& o) const { return points == o.points && half_width == o.half_width; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
    void validate() const;
};

struct SampledField {
    GridSpec grid;
    CVec values;
    Domain domain = Domain::physical;

    SampledField() = default;
    SampledField(GridSpec g, Domain d = Domain::physical);
    SampledField(GridSpec g, CVec v, Domain d);

    std::size_t size() const { return values.size(); }
    cplx& operator[](std::size_t i) { return values[i]; }
    const cplx& operator[](std::size_t i) const { return values[i]; }

    SampledField& operator+=(const SampledField& o);
    SampledField& operator-=(const SampledField& o);
    SampledField& operator*=(cplx c);
    SampledField conj() const;
    void check_compatible(const SampledField& o) const;
};

SampledField operator+(SampledField a, const SampledField& b);
SampledField operator-(SampledField a, const SampledField& b);
SampledField operator*(cplx c, SampledField a);

// Fills a physical field with fn(x) where x holds the coordinates.
template <class Fn>
SampledField sample(const GridSpec& g, Fn&& fn) {
    SampledField f(g, Domain::physical);
    const int d = g.ndim();
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::size_t r = k;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = r % g.points[a];
            r /= g.points[a];
            x[a] = g.coord(a, idx[a]);
        }
        f.values[k] = fn(x);
    }
    return f;
}

// Same idea on the dual grid.
template <class Fn>
SampledField sample_frequency(const GridSpec& g, Fn&& fn) {
    SampledField f(g, Domain::frequency);
    const int d = g.ndim();
    std::vector<double> xi(d);
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::size_t r = k;
        for (int a = d - 1; a >= 0; --a) {
            xi[a] = g.freq(a, r % g.points[a]);
            r /= g.points[a];
        }
        f.values[k] = fn(xi);
    }
    return f;
}

// Multi-index of a flat position.
std::vector<std::size_t> unflatten(const GridSpec& g, std::size_t k);

// Fraction of max|f| found in the outer 10% shell (truncation diagnostic).
double shell_ratio(const SampledField& f);

}  // namespace helmlab
