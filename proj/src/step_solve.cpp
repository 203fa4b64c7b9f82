#include <algorithm>
#include <cmath>
#include <numbers>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/norms.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/quadrature.hpp"
#include "helmlab/summation.hpp"
#include "step_internal.hpp"

namespace helmlab {
namespace detail {

namespace {

constexpr cplx I{0.0, 1.0};

double half_weight(const Layout& lay, std::size_t iy, HalfSpace side) {
    const std::size_t mid = lay.iy0();
    if (iy == mid) return 0.5;
    return ((iy > mid) == (side == HalfSpace::plus)) ? 1.0 : 0.0;
}

// Adds the free-space solution of (-d_y^2 - nu_c^2) v = chi_side s to acc, column by column.
// Each column is solved on the Bloch-periodic line (phase theta over one period, chosen
// away from resonance with nu), then the closed-form sum of the images is subtracted.
void add_volume_columns(const Layout& lay, const CVec& S, std::size_t ncols, const std::vector<cplx>& nus,
                        HalfSpace side, bool image_correction, CVec& acc) {
    const std::size_t ny = lay.ny;
    const double L = lay.Ly;
    std::vector<double> shift(ncols, 0.0);
    if (image_correction)
        for (std::size_t c = 0; c < ncols; ++c)
            if (std::cos((2.0 * nus[c] * L).real()) > 0.0) shift[c] = std::numbers::pi / (2.0 * L);
    CVec T(ncols * ny), V(ncols * ny);
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t iy = 0; iy < ny; ++iy) {
            T[c * ny + iy] = half_weight(lay, iy, side) * S[c * ny + iy];
            V[c * ny + iy] = T[c * ny + iy] * std::exp(-I * shift[c] * lay.y(iy));
        }
    GridSpec cg;
    cg.points = {ncols, ny};
    cg.half_width = {1.0, L};
    dft_axis_range(cg, 1, 2, V, Direction::forward);
    const double deta = std::numbers::pi / L;
    parallel_for(ncols, [&](std::size_t c) {
        const cplx nu2 = nus[c] * nus[c];
        for (std::size_t k = 0; k < ny; ++k) {
            const double eta = (double(k) - double(ny / 2)) * deta + shift[c];
            V[c * ny + k] /= (eta * eta - nu2);
        }
    });
    dft_axis_range(cg, 1, 2, V, Direction::inverse);
    parallel_for(ncols, [&](std::size_t c) {
        const cplx nu = nus[c];
        cplx* out = acc.data() + c * ny;
        const cplx* v = V.data() + c * ny;
        if (!image_correction) {
            for (std::size_t iy = 0; iy < ny; ++iy) out[iy] += v[iy];
            return;
        }
        const cplx* s = T.data() + c * ny;
        const cplx A = lay.hy * pairwise_reduce<cplx>(0, ny, [&](std::size_t iz) {
                           return s[iz] * std::exp(I * nu * (L - lay.y(iz)));
                       });
        const cplx B = lay.hy * pairwise_reduce<cplx>(0, ny, [&](std::size_t iz) {
                           return s[iz] * std::exp(I * nu * (L + lay.y(iz)));
                       });
        const cplx q = std::exp(2.0 * I * nu * L);
        const cplx bloch = std::exp(I * (2.0 * L * shift[c]));
        const cplx ca = I / (2.0 * nu) / (bloch - q);
        const cplx cb = I / (2.0 * nu) * bloch / (1.0 - q * bloch);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = lay.y(iy);
            const cplx C = ca * std::exp(I * nu * (L + y)) * A + cb * std::exp(I * nu * (L - y)) * B;
            out[iy] += std::exp(I * shift[c] * y) * v[iy] - C;
        }
    });
}

cplx nu_eps(double r, double mu, double eps) {
    if (eps > 0.0) return std::sqrt(cplx(mu * mu - r * r, eps));
    if (r <= mu) return std::sqrt((mu - r) * (mu + r));
    return cplx(0.0, std::sqrt((r - mu) * (r + mu)));
}

void add_volume(const Layout& lay, const CVec& S, std::size_t ncols, const std::vector<double>& radius,
                const FrequencyParams& p, double eps, bool image_correction, CVec& acc) {
    std::vector<cplx> nus(ncols);
    for (int j = 1; j <= 2; ++j) {
        for (std::size_t c = 0; c < ncols; ++c) {
            nus[c] = nu_eps(radius[c], p.mu(j), eps);
            if (nus[c] == 0.0) nus[c] = 1.0;  // a node on the critical circle; the caller drops it
        }
        add_volume_columns(lay, S, ncols, nus, j == 1 ? HalfSpace::plus : HalfSpace::minus, image_correction, acc);
    }
}

// Interface correction of one column with lateral radius r and wavenumbers nu1, nu2.
void interface_column(const Layout& lay, const cplx* col, double r, cplx n1, cplx n2, const Window& window,
                      cplx* out) {
    cplx gp, gm;
    traces_from_column(lay, col, n1, n2, gp, gm);
    double w[4] = {1.0, 1.0, 1.0, 1.0};
    if (window)
        for (int t = 0; t < 4; ++t) w[t] = window(t, r);
    cplx a[2], b[2];  // index 0: sign +1, index 1: sign -1
    for (int k = 0; k < 2; ++k) {
        const int s = k == 0 ? 1 : -1;
        a[k] = w[0] * multiplier_from_nu(1, s, n1, n2) * gp + w[1] * multiplier_from_nu(2, s, n1, n2) * gm;
        b[k] = w[2] * multiplier_from_nu(3, s, n1, n2) * gp + w[3] * multiplier_from_nu(4, s, n1, n2) * gm;
    }
    const std::size_t mid = lay.iy0();
    for (std::size_t iy = 0; iy < lay.ny; ++iy) {
        const int k = iy >= mid ? 0 : 1;
        const double ay = std::abs(lay.y(iy));
        out[iy] += std::exp(I * ay * n1) * a[k] + std::exp(I * ay * n2) * b[k];
    }
}

}  // namespace

namespace {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

double CollarSet::chi(double r) const {
    if (bands.empty()) return 0.0;
    const Band& b = bands.front();
    if (r <= b.lo || r >= b.hi) return 0.0;
    const double t = std::min((r - b.lo) / (radii.front() - b.lo), (b.hi - r) / (b.hi - radii.back()));
    return smooth_step(2.0 * t);
}

CollarSet make_collars(const Layout& lay, const FrequencyParams& p, const SolveOptions& opt) {
    CollarSet cs;
    const double m1 = p.mu1(), m2 = p.mu2();
    cs.radii = {m1};
    if (!p.constant_potential()) cs.radii.push_back(m2);
    const double lo = m1 * (1.0 - opt.collar_fraction), hi = m2 * (1.0 + opt.collar_fraction);
    cs.bands.push_back({lo, 0.5 * (m1 + m2), hi});
    double reach = 0.0;  // largest |x| on the lateral grid
    for (int a = 0; a < lay.n - 1; ++a) reach += lay.lat.half_width[a] * lay.lat.half_width[a];
    reach = std::sqrt(reach);

    // Radial segments, each integrated in rho = sqrt|r^2 - mu^2| about its own critical radius.
    struct Segment {
        double mu, a, b;
    };
    std::vector<Segment> segs;
    if (cs.radii.size() == 1) {
        segs = {{m1, lo, m1}, {m1, m1, hi}};
    } else {
        const double mid = 0.5 * (m1 + m2);
        segs = {{m1, lo, m1}, {m1, m1, mid}, {m2, mid, m2}, {m2, m2, hi}};
    }
    const GaussRule& gr = gauss_legendre(opt.collar_radial_nodes);
    std::vector<std::pair<double, double>> radial;  // (r, weight)
    for (const Segment& sg : segs) {
        const bool inner = sg.b <= sg.mu;
        const double mu2 = sg.mu * sg.mu;
        const double ra = inner ? std::sqrt(mu2 - sg.b * sg.b) : std::sqrt(sg.a * sg.a - mu2);
        const double rb = inner ? std::sqrt(mu2 - sg.a * sg.a) : std::sqrt(sg.b * sg.b - mu2);
        // Panels short enough in r that e^{i x xi} stays resolved for |x| <= reach.
        const double slope = rb / sg.a;
        const int panels = std::max(1, int(std::ceil((rb - ra) * slope * reach / 12.0)));
        const double width = (rb - ra) / panels;
        for (int pi = 0; pi < panels; ++pi)
            for (std::size_t k = 0; k < gr.x.size(); ++k) {
                const double rho = ra + width * (pi + 0.5 * (gr.x[k] + 1.0));
                const double r = inner ? std::sqrt(mu2 - rho * rho) : std::sqrt(mu2 + rho * rho);
                radial.emplace_back(r, 0.5 * width * gr.w[k] * rho / r);
            }
    }
    int M = opt.collar_angular_nodes;
    if (lay.n == 3) M = std::max(M, 4 * int(std::ceil((hi * reach + 16.0) / 4.0)));
    for (const auto& [r, w] : radial) {
        const double wt = w * cs.chi(r);
        if (wt == 0.0) continue;
        if (lay.n == 2) {
            for (double sgn : {1.0, -1.0}) {
                CollarNode nd;
                nd.xi[0] = sgn * r;
                nd.r = r;
                nd.weight = wt;
                cs.nodes.push_back(nd);
            }
        } else {
            for (int k = 0; k < M; ++k) {
                const double th = 2.0 * std::numbers::pi * k / M;
                CollarNode nd;
                nd.xi[0] = r * std::cos(th);
                nd.xi[1] = r * std::sin(th);
                nd.r = r;
                nd.weight = wt * r * 2.0 * std::numbers::pi / M;
                cs.nodes.push_back(nd);
            }
        }
    }
    return cs;
}

CVec volume_mixed(const Layout& lay, const CVec& S, const FrequencyParams& params, double eps, bool image_correction) {
    CVec acc(S.size());
    add_volume(lay, S, lay.nx, lay.radius, params, eps, image_correction, acc);
    return acc;
}

CVec interface_mixed(const Layout& lay, const CVec& S, const FrequencyParams& params, const CollarSet* collars,
                     const Window& window) {
    CVec acc(S.size());
    parallel_for(lay.nx, [&](std::size_t ix) {
        const double r = lay.radius[ix];
        if (collars && collars->chi(r) == 1.0) return;
        interface_column(lay, S.data() + ix * lay.ny, r, nu(r, 1, params), nu(r, 2, params), window,
                         acc.data() + ix * lay.ny);
    });
    return acc;
}

namespace {

// Lateral transform of f at the collar nodes, one column of length ny per node.
CVec collar_columns(const Layout& lay, const SampledField& f, const CollarSet& cs) {
    const std::size_t Q = cs.nodes.size(), ny = lay.ny;
    CVec out(Q * ny);
    const double c = std::pow(2.0 * std::numbers::pi, -0.5 * (lay.n - 1)) * lay.lat.cell_volume();
    parallel_for(Q, [&](std::size_t q) {
        const CollarNode& nd = cs.nodes[q];
        cplx* col = out.data() + q * ny;
        if (lay.n == 2) {
            for (std::size_t ix = 0; ix < lay.nx; ++ix) {
                const cplx e = std::exp(-I * lay.g.coord(0, ix) * nd.xi[0]);
                const cplx* row = f.values.data() + ix * ny;
                for (std::size_t iy = 0; iy < ny; ++iy) col[iy] += e * row[iy];
            }
        } else {
            const std::size_t n0 = lay.g.points[0], n1 = lay.g.points[1];
            CVec e1(n1);
            for (std::size_t i = 0; i < n1; ++i) e1[i] = std::exp(-I * lay.g.coord(1, i) * nd.xi[1]);
            CVec tmp(ny);
            for (std::size_t i0 = 0; i0 < n0; ++i0) {
                std::fill(tmp.begin(), tmp.end(), cplx(0.0));
                for (std::size_t i1 = 0; i1 < n1; ++i1) {
                    const cplx* row = f.values.data() + (i0 * n1 + i1) * ny;
                    for (std::size_t iy = 0; iy < ny; ++iy) tmp[iy] += e1[i1] * row[iy];
                }
                const cplx e0 = std::exp(-I * lay.g.coord(0, i0) * nd.xi[0]);
                for (std::size_t iy = 0; iy < ny; ++iy) col[iy] += e0 * tmp[iy];
            }
        }
        for (std::size_t iy = 0; iy < ny; ++iy) col[iy] *= c;
    });
    return out;
}

}  // namespace

CVec collar_physical(const Layout& lay, const SampledField& f, const FrequencyParams& params, const CollarSet& cs,
                     bool with_volume, bool with_interface, const Window& window) {
    const std::size_t Q = cs.nodes.size(), ny = lay.ny;
    CVec out(lay.g.size());
    if (Q == 0) return out;
    const CVec S = collar_columns(lay, f, cs);
    CVec M(Q * ny);
    std::vector<double> radius(Q);
    for (std::size_t q = 0; q < Q; ++q) radius[q] = cs.nodes[q].r;
    FrequencyParams p0 = params;
    p0.eps = 0.0;
    if (with_volume) add_volume(lay, S, Q, radius, p0, 0.0, true, M);
    if (with_interface) {
        parallel_for(Q, [&](std::size_t q) {
            const double r = radius[q];
            interface_column(lay, S.data() + q * ny, r, nu_eps(r, p0.mu1(), 0.0), nu_eps(r, p0.mu2(), 0.0), window,
                             M.data() + q * ny);
        });
    }
    const double c = std::pow(2.0 * std::numbers::pi, -0.5 * (lay.n - 1));
    parallel_for(lay.nx, [&](std::size_t ix) {
        double x[2] = {0.0, 0.0};
        std::size_t rem = ix;
        for (int a = lay.n - 2; a >= 0; --a) {
            x[a] = lay.lat.coord(a, rem % lay.lat.points[a]);
            rem /= lay.lat.points[a];
        }
        cplx* row = out.data() + ix * ny;
        for (std::size_t q = 0; q < Q; ++q) {
            const CollarNode& nd = cs.nodes[q];
            const cplx e = c * nd.weight * std::exp(I * (x[0] * nd.xi[0] + x[1] * nd.xi[1]));
            const cplx* m = M.data() + q * ny;
            for (std::size_t iy = 0; iy < ny; ++iy) row[iy] += e * m[iy];
        }
    });
    return out;
}

}  // namespace detail

namespace {

using detail::Layout;

SampledField to_physical(const Layout& lay, CVec M) {
    dft_axis_range(lay.g, 0, lay.n - 1, M, Direction::inverse);
    return SampledField(lay.g, std::move(M), Domain::physical);
}

void taper_collar_columns(const Layout& lay, const detail::CollarSet& cs, CVec& M) {
    for (std::size_t ix = 0; ix < lay.nx; ++ix) {
        const double chi = cs.chi(lay.radius[ix]);
        if (chi == 0.0) continue;
        if (chi == 1.0) std::fill_n(M.begin() + ix * lay.ny, lay.ny, cplx(0.0));
        else
            for (std::size_t iy = 0; iy < lay.ny; ++iy) M[ix * lay.ny + iy] *= 1.0 - chi;
    }
}

// Neville extrapolation to eps = 0 along eps_k = eps0 2^-k.
CVec extrapolated_volume(const Layout& lay, const CVec& S, const FrequencyParams& params, const SolveOptions& opt,
                         SolveDiagnostics* diag) {
    if (opt.ladder < 2 || !(opt.eps0 > 0.0)) throw InvalidInput("solve_lap: ladder needs at least two rungs");
    std::vector<CVec> T;
    std::vector<double> eps;
    std::vector<double> change;
    CVec prev_diag;
    for (int k = 0; k < opt.ladder; ++k) {
        eps.push_back(opt.eps0 * std::ldexp(1.0, -k));
        CVec row = detail::volume_mixed(lay, S, params, eps.back(), opt.image_correction);
        // T[m] holds the column k-1 entries; update in place to the new row.
        CVec cur = row;
        for (int m = 1; m <= k; ++m) {
            const double fac = 1.0 / (std::ldexp(1.0, m) - 1.0);
            CVec next(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i) next[i] = cur[i] + (cur[i] - T[m - 1][i]) * fac;
            T[m - 1] = std::move(cur);
            cur = std::move(next);
        }
        T.push_back(cur);
        if (k > 0) {
            const double num = std::sqrt(pairwise_reduce<double>(0, cur.size(), [&](std::size_t i) {
                return std::norm(cur[i] - prev_diag[i]);
            }));
            const double den = std::sqrt(pairwise_reduce<double>(0, cur.size(), [&](std::size_t i) {
                return std::norm(cur[i]);
            }));
            change.push_back(den > 0.0 ? num / den : 0.0);
        }
        prev_diag = cur;
    }
    if (diag) {
        diag->ladder_eps = eps;
        diag->ladder_change = change;
        diag->extrapolation_error = change.back();
    }
    if (change.back() > opt.ladder_tol) {
        const double prev = change.size() > 1 ? change[change.size() - 2] : change.back();
        throw AccuracyError("solve_lap: epsilon extrapolation did not settle", change.back(), prev);
    }
    return T.back();
}

void finish_diag(const SampledField& u, SolveDiagnostics* diag) {
    if (!diag) return;
    diag->shell_ratio = shell_ratio(u);
    diag->shell_warning = diag->shell_ratio > 1e-3;
}

SampledField lap_part(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt,
                      SolveDiagnostics* diag, bool vol, bool itf, const detail::Window& window = {}) {
    const Layout lay(f.grid);
    const CVec S = detail::lateral_forward(f);
    const detail::CollarSet cs = detail::make_collars(lay, params, opt);
    CVec M(S.size());
    if (vol) {
        if (opt.volume_limit == VolumeLimit::richardson) M = extrapolated_volume(lay, S, params, opt, diag);
        else M = detail::volume_mixed(lay, S, params, 0.0, opt.image_correction);
    }
    if (itf) {
        const CVec B = detail::interface_mixed(lay, S, params, &cs, window);
        for (std::size_t i = 0; i < M.size(); ++i) M[i] += B[i];
    }
    taper_collar_columns(lay, cs, M);
    SampledField u = to_physical(lay, std::move(M));
    const CVec C = detail::collar_physical(lay, f, params, cs, vol, itf, window);
    for (std::size_t i = 0; i < C.size(); ++i) u.values[i] += C[i];
    if (diag) diag->collar_nodes = cs.nodes.size();
    return u;
}

SampledField perturbed_part(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt, bool vol,
                            bool itf, const detail::Window& window = {}) {
    const Layout lay(f.grid);
    const CVec S = detail::lateral_forward(f);
    CVec M(S.size());
    if (vol) M = detail::volume_mixed(lay, S, params, params.eps, opt.image_correction);
    if (itf) {
        const CVec B = detail::interface_mixed(lay, S, params, nullptr, window);
        for (std::size_t i = 0; i < M.size(); ++i) M[i] += B[i];
    }
    return to_physical(lay, std::move(M));
}

}  // namespace

SampledField solve_perturbed(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt,
                             SolveDiagnostics* diag) {
    params.validate();
    if (!(params.eps > 0.0)) throw InvalidInput("solve_perturbed: eps must be positive (use solve_lap)");
    SampledField u = perturbed_part(f, params, opt, true, true);
    finish_diag(u, diag);
    return u;
}

SampledField solve_lap(const SampledField& f, const FrequencyParams& params, Branch branch, const SolveOptions& opt,
                       SolveDiagnostics* diag) {
    params.validate();
    if (params.eps != 0.0) throw InvalidInput("solve_lap: eps must be 0");
    if (branch == Branch::incoming) return solve_lap(f.conj(), params, Branch::outgoing, opt, diag).conj();
    SampledField u = lap_part(f, params, opt, diag, true, true);
    finish_diag(u, diag);
    return u;
}

SampledField volume_term(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt,
                         SolveDiagnostics* diag) {
    params.validate();
    if (params.eps > 0.0) return perturbed_part(f, params, opt, true, false);
    return lap_part(f, params, opt, diag, true, false);
}

SampledField interface_term(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt,
                            SolveDiagnostics* diag) {
    params.validate();
    if (params.eps > 0.0) return perturbed_part(f, params, opt, false, true);
    return lap_part(f, params, opt, diag, false, true);
}

SampledField FrequencyDecomposition::total() const { return w + frak_w + frak_W + W_large; }

FrequencyDecomposition frequency_decomposition(const SampledField& f, const FrequencyParams& params,
                                               const SolveOptions& opt) {
    params.validate();
    const double m1 = params.mu1(), m2 = params.mu2();
    auto part = [&](Block b) {
        const detail::Window win = [=](int t, double r) { return block_of(t, r, m1, m2) == b ? 1.0 : 0.0; };
        if (params.eps > 0.0) return perturbed_part(f, params, opt, false, true, win);
        return lap_part(f, params, opt, nullptr, false, true, win);
    };
    FrequencyDecomposition d;
    d.w = part(Block::w);
    d.frak_w = part(Block::frak_w);
    d.frak_W = part(Block::frak_W);
    d.W_large = part(Block::W_large);
    return d;
}

}  // namespace helmlab
