#include <cmath>
#include <numbers>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/quadrature.hpp"
#include "helmlab/step.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

namespace {

// Fourth-order centered second difference.
cplx fd2(const cplx* u, std::size_t i, std::size_t stride, double h) {
    return (-u[i - 2 * stride] + 16.0 * u[i - stride] - 30.0 * u[i] + 16.0 * u[i + stride] - u[i + 2 * stride]) /
           (12.0 * h * h);
}

}  // namespace

double residual(const SampledField& u, const SampledField& f, const FrequencyParams& params) {
    u.check_compatible(f);
    if (u.domain != Domain::physical) throw InvalidInput("residual: physical fields expected");
    const GridSpec& g = u.grid;
    const int n = g.ndim();
    if (n < 2 || n > 3) throw InvalidInput("residual: n must be 2 or 3");
    const std::size_t ny = g.points[n - 1], mid = ny / 2;
    std::vector<std::size_t> lo(n), hi(n);
    for (int a = 0; a < n; ++a) {
        const std::size_t band = std::max<std::size_t>(2, std::size_t(std::ceil(0.1 * double(g.points[a]))));
        lo[a] = band;
        hi[a] = g.points[a] - band;
    }
    const double shift = -params.lambda;
    const std::size_t total = g.size();
    std::vector<double> sq(total, 0.0);
    parallel_for(total, [&](std::size_t k) {
        std::size_t rem = k;
        std::size_t idx[3];
        for (int a = n - 1; a >= 0; --a) {
            idx[a] = rem % g.points[a];
            rem /= g.points[a];
            if (idx[a] < lo[a] || idx[a] >= hi[a]) return;
        }
        const std::size_t iy = idx[n - 1];
        if (iy + 1 >= mid && iy <= mid + 1) return;
        cplx lap = 0.0;
        for (int a = 0; a < n; ++a) lap += fd2(u.values.data(), k, g.stride(a), g.spacing(a));
        const double V = iy >= mid ? params.potential.V1 : params.potential.V2;
        const cplx r = -lap + cplx(V + shift, -params.eps) * u[k] - f[k];
        sq[k] = std::norm(r);
    });
    return std::sqrt(g.cell_volume() * pairwise_sum<double>(sq));
}

SampledField herglotz(const SampledField& f, double mu, int n_nodes) {
    if (f.domain != Domain::physical) throw InvalidInput("herglotz: physical field expected");
    const GridSpec& g = f.grid;
    const int n = g.ndim();
    if (n < 2 || n > 3) throw InvalidInput("herglotz: n must be 2 or 3");
    if (!(mu > 0.0)) throw InvalidInput("herglotz: mu must be positive");
    if (n_nodes == 0) {
        double R = 0.0;
        for (int a = 0; a < n; ++a) R += g.half_width[a] * g.half_width[a];
        n_nodes = 4 * int(std::ceil((2.0 * mu * std::sqrt(R) + 32.0) / 4.0));
        if (n == 3) n_nodes = std::max(16, n_nodes / 2);
    }
    const SphereRule rule = sphere_rule(mu, n, n_nodes);
    const SampledField F = dft(f, Direction::forward);
    const std::size_t K = rule.count();

    // Cubic Lagrange interpolation of F at each node, tensor product over axes.
    CVec coef(K);
    parallel_for(K, [&](std::size_t k) {
        std::size_t base[3] = {0, 0, 0};
        double w[3][4] = {};
        bool inside = true;
        for (int a = 0; a < n; ++a) {
            const double t = rule.nodes[k * n + a] / g.dual_spacing(a) + double(g.points[a] / 2);
            const double i0 = std::floor(t);
            const double s = t - i0;
            if (i0 < 1.0 || i0 + 2.0 >= double(g.points[a])) {
                inside = false;
                break;
            }
            base[a] = std::size_t(i0) - 1;
            w[a][0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
            w[a][1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
            w[a][2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
            w[a][3] = (s + 1.0) * s * (s - 1.0) / 6.0;
        }
        if (!inside) return;
        cplx v = 0.0;
        if (n == 2) {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    v += w[0][i] * w[1][j] * F[(base[0] + i) * g.points[1] + base[1] + j];
        } else {
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int l = 0; l < 4; ++l)
                        v += w[0][i] * w[1][j] * w[2][l] *
                             F[((base[0] + i) * g.points[1] + base[1] + j) * g.points[2] + base[2] + l];
        }
        coef[k] = rule.weights[k] * std::pow(2.0 * std::numbers::pi, -0.5 * n) * v;
    });

    // Separable evaluation: per node, the phase factors along each axis.
    SampledField h(g, Domain::physical);
    const std::size_t nlast = g.points[n - 1];
    const std::size_t rows = g.size() / nlast;
    parallel_for(rows, [&](std::size_t row) {
        double x[2] = {0.0, 0.0};
        std::size_t rem = row;
        for (int a = n - 2; a >= 0; --a) {
            x[a] = g.coord(a, rem % g.points[a]);
            rem /= g.points[a];
        }
        cplx* out = h.values.data() + row * nlast;
        CVec ph(nlast);
        for (std::size_t k = 0; k < K; ++k) {
            if (coef[k] == 0.0) continue;
            const double* xi = &rule.nodes[k * n];
            double lead = 0.0;
            for (int a = 0; a < n - 1; ++a) lead += x[a] * xi[a];
            const cplx c = coef[k] * std::exp(cplx(0.0, lead));
            const double xl = xi[n - 1];
            for (std::size_t i = 0; i < nlast; ++i) out[i] += c * std::exp(cplx(0.0, g.coord(n - 1, i) * xl));
        }
    });
    return h;
}

MountainPassCertificate mountain_pass_certificate(const SampledField& w_profile, const FrequencyParams& params) {
    params.validate();
    if (w_profile.domain != Domain::physical) throw InvalidInput("mountain_pass_certificate: physical profile expected");
    const GridSpec& g = w_profile.grid;
    const int d = g.ndim();
    if (d < 1 || d > 2) throw InvalidInput("mountain_pass_certificate: profile must be 1- or 2-dimensional");
    FrequencyParams p0 = params;
    p0.eps = 0.0;
    const SampledField W = dft(w_profile, Direction::forward);
    const double mu1 = p0.mu1(), mu2 = p0.mu2();
    const std::size_t m = W.size();
    std::vector<double> rad(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t rem = k;
        double s = 0.0;
        for (int a = d - 1; a >= 0; --a) {
            const double xi = g.freq(a, rem % g.points[a]);
            rem /= g.points[a];
            s += xi * xi;
        }
        rad[k] = std::sqrt(s);
    }
    const double total = pairwise_reduce<double>(0, m, [&](std::size_t k) { return std::norm(W[k]); });
    const double low = pairwise_reduce<double>(0, m, [&](std::size_t k) {
        return rad[k] <= mu2 ? std::norm(W[k]) : 0.0;
    });
    if (!(total > 0.0)) throw InvalidInput("mountain_pass_certificate: zero profile");
    if (low > 1e-8 * total)
        throw InvalidInput("mountain_pass_certificate: profile spectrum reaches into |xi| <= mu2");
    const double dv = g.dual_cell_volume();
    MountainPassCertificate c;
    c.volume_term = dv * pairwise_reduce<double>(0, m, [&](std::size_t k) {
        if (rad[k] <= mu2) return 0.0;
        const double A = std::sqrt((rad[k] - mu1) * (rad[k] + mu1));
        return std::norm(W[k]) / (2.0 * A * (1.0 + A));
    });
    // g_+ = (2 pi)^{-1/2} w^ / (1 + |nu_1|) in the unitary convention.
    c.interface_term = dv / std::sqrt(2.0 * std::numbers::pi) * pairwise_reduce<double>(0, m, [&](std::size_t k) {
        if (rad[k] <= mu2) return 0.0;
        const cplx n1 = nu(rad[k], 1, p0), n2 = nu(rad[k], 2, p0);
        const double a = 1.0 + std::abs(n1);
        return multiplier_from_nu(1, 1, n1, n2).real() * std::norm(W[k]) / (a * a);
    });
    c.positive = c.volume_term > 0.0 && c.interface_term > 0.0;
    return c;
}

}  // namespace helmlab
