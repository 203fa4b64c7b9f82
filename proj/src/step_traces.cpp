#include <cmath>
#include <numbers>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/summation.hpp"
#include "step_internal.hpp"

namespace helmlab {
namespace detail {

Layout::Layout(const GridSpec& grid) : g(grid) {
    g.validate();
    n = g.ndim();
    if (n < 2 || n > 3) throw InvalidInput("step solver: n must be 2 or 3");
    lat = g.drop_last();
    ny = g.points[n - 1];
    nx = lat.size();
    hy = g.spacing(n - 1);
    Ly = g.half_width[n - 1];
    radius.resize(nx);
    for (std::size_t k = 0; k < nx; ++k) {
        std::size_t r = k;
        double s = 0.0;
        for (int a = n - 2; a >= 0; --a) {
            const double xi = lat.freq(a, r % lat.points[a]);
            r /= lat.points[a];
            s += xi * xi;
        }
        radius[k] = std::sqrt(s);
    }
}

CVec lateral_forward(const SampledField& f) {
    if (f.domain != Domain::physical) throw InvalidInput("step solver: physical field expected");
    CVec S = f.values;
    dft_axis_range(f.grid, 0, f.grid.ndim() - 1, S, Direction::forward);
    return S;
}

void traces_from_column(const Layout& lay, const cplx* col, cplx nu1, cplx nu2, cplx& gp, cplx& gm) {
    const std::size_t mid = lay.iy0();
    const double c = lay.hy / std::sqrt(2.0 * std::numbers::pi);
    gp = c * pairwise_reduce<cplx>(mid, lay.ny, [&](std::size_t iy) {
             const double w = iy == mid ? 0.5 : 1.0;
             return w * col[iy] * std::exp(cplx(0.0, 1.0) * lay.y(iy) * nu1);
         });
    gm = c * pairwise_reduce<cplx>(0, mid + 1, [&](std::size_t iy) {
             const double w = iy == mid ? 0.5 : 1.0;
             return w * col[iy] * std::exp(cplx(0.0, -1.0) * lay.y(iy) * nu2);
         });
}

}  // namespace detail

BoundaryTrace boundary_traces(const SampledField& f, const FrequencyParams& params) {
    params.validate();
    const detail::Layout lay(f.grid);
    const CVec S = detail::lateral_forward(f);
    BoundaryTrace t;
    t.grid = lay.lat;
    t.g_plus.resize(lay.nx);
    t.g_minus.resize(lay.nx);
    parallel_for(lay.nx, [&](std::size_t ix) {
        const double r = lay.radius[ix];
        detail::traces_from_column(lay, S.data() + ix * lay.ny, nu(r, 1, params), nu(r, 2, params), t.g_plus[ix],
                                   t.g_minus[ix]);
    });
    return t;
}

InterfaceData interface_data(const BoundaryTrace& traces, const FrequencyParams& params) {
    params.validate();
    const std::size_t m = traces.grid.size();
    if (traces.g_plus.size() != m || traces.g_minus.size() != m) throw InvalidInput("interface_data: length mismatch");
    InterfaceData out;
    out.trace0.resize(m);
    out.trace1.resize(m);
    const int d = traces.grid.ndim();
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t rem = k;
        double s = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const double xi = traces.grid.freq(a, rem % traces.grid.points[a]);
            rem /= traces.grid.points[a];
            s += xi * xi;
        }
        const double r = std::sqrt(s);
        const cplx n1 = nu(r, 1, params), n2 = nu(r, 2, params);
        if (n1 + n2 == 0.0) throw SingularityError("interface_data: nu1 + nu2 vanishes");
        const cplx c = std::sqrt(2.0 * std::numbers::pi) / (n1 + n2);
        const cplx gp = traces.g_plus[k], gm = traces.g_minus[k];
        out.trace0[k] = c * cplx(0.0, 1.0) * (gp + gm);
        out.trace1[k] = c * (n2 * gp - n1 * gm);
    }
    return out;
}

}  // namespace helmlab
