#include "helmlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>

#include "helmlab/errors.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidInput("quadrature: tolerances must be positive");
    if (max_subdivisions < 4) throw InvalidInput("quadrature: max_subdivisions must be >= 4");
    if (!(graded_mesh_ratio > 0.0 && graded_mesh_ratio < 1.0))
        throw InvalidInput("quadrature: graded_mesh_ratio must lie in (0, 1)");
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto& slot = cache[n];
    if (slot) return *slot;
    if (n < 1) throw InvalidInput("gauss_legendre: order must be positive");
    auto r = std::make_unique<GaussRule>();
    r->x.resize(n);
    r->w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r->x[i] = -x;
        r->x[n - 1 - i] = x;
        r->w[i] = w;
        r->w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r->x[n / 2] = 0.0;
    slot = std::move(r);
    return *slot;
}

namespace {

constexpr int kPanelOrder = 16;

cplx gauss_panel(const std::function<cplx(double)>& fn, double a, double b, int order = kPanelOrder) {
    const GaussRule& g = gauss_legendre(order);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < order; ++i) s += g.w[i] * fn(c + h * g.x[i]);
    return h * s;
}

struct Adaptive {
    const std::function<cplx(double)>& fn;
    const QuadratureSpec& spec;
    double total_width;
    std::vector<cplx> pieces;

    void run(double a, double b, cplx whole, int depth) {
        const double m = 0.5 * (a + b);
        const cplx left = gauss_panel(fn, a, m), right = gauss_panel(fn, m, b);
        const cplx fine = left + right;
        const double err = std::abs(fine - whole);
        const double allowed = std::max(spec.abs_tol * (b - a) / total_width, spec.rel_tol * std::abs(fine));
        if (err <= allowed || (b - a) < 1e-15 * std::max(1.0, std::abs(a))) {
            pieces.push_back(fine);
            return;
        }
        if (depth >= spec.max_subdivisions)
            throw AccuracyError("quadrature: no convergence within max_subdivisions on [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "]",
                                std::abs(fine), std::abs(whole));
        run(a, m, left, depth + 1);
        run(m, b, right, depth + 1);
    }
};

}  // namespace

cplx adaptive_quad(const std::function<cplx(double)>& fn, double lo, double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (!(hi > lo)) return 0.0;
    Adaptive ad{fn, spec, hi - lo, {}};
    ad.run(lo, hi, gauss_panel(fn, lo, hi), 0);
    return pairwise_sum<cplx>(std::span<const cplx>(ad.pieces));
}

// Geometric panels [r^{k+1}, r^k] are refined adaptively; the innermost panel
// [0, r^K] is mapped by u = rho^{1-delta}, which removes the singular factor.
cplx singular_quad(const std::function<cplx(double)>& phi, double delta, const QuadratureSpec& spec) {
    spec.validate();
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidInput("singular_quad: delta must lie in [0, 1)");
    const double r = spec.graded_mesh_ratio;
    const int levels = std::min(spec.max_subdivisions, int(std::ceil(std::log(1e-6) / std::log(r))));
    std::vector<cplx> parts;
    auto weighted = [&](double rho) { return phi(rho) * std::pow(rho, -delta); };
    std::function<cplx(double)> wfn = weighted;
    double hi = 1.0;
    for (int k = 0; k < levels; ++k) {
        const double lo = hi * r;
        Adaptive ad{wfn, spec, 1.0, {}};
        ad.run(lo, hi, gauss_panel(wfn, lo, hi), 0);
        parts.push_back(pairwise_sum<cplx>(std::span<const cplx>(ad.pieces)));
        hi = lo;
    }
    const double e = 1.0 - delta;
    const double umax = std::pow(hi, e);
    std::function<cplx(double)> inner = [&](double u) {
        const double rho = std::pow(u, 1.0 / e);
        return phi(rho) / e;
    };
    const cplx c1 = gauss_panel(inner, 0.0, umax, 16), c2 = gauss_panel(inner, 0.0, umax, 32);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(c2));
    if (std::abs(c2 - c1) > std::max(tol, 1e3 * spec.abs_tol)) {
        Adaptive ad{inner, spec, 1.0, {}};
        ad.run(0.0, umax, c2, 0);
        parts.push_back(pairwise_sum<cplx>(std::span<const cplx>(ad.pieces)));
    } else {
        parts.push_back(c2);
    }
    return pairwise_sum<cplx>(std::span<const cplx>(parts));
}

SphereRule sphere_rule(double mu, int d, int n_nodes) {
    if (!(mu > 0.0)) throw InvalidInput("sphere_quad: mu must be positive");
    if (n_nodes < 16) throw InvalidInput("sphere_quad: need at least 16 nodes");
    SphereRule r;
    r.d = d;
    if (d == 2) {
        const double w = mu * 2.0 * std::numbers::pi / n_nodes;
        for (int k = 0; k < n_nodes; ++k) {
            const double t = 2.0 * std::numbers::pi * k / n_nodes;
            r.nodes.push_back(mu * std::cos(t));
            r.nodes.push_back(mu * std::sin(t));
            r.weights.push_back(w);
        }
    } else if (d == 3) {
        const int nt = std::max(8, n_nodes / 2);
        const GaussRule& g = gauss_legendre(nt);
        const double wp = 2.0 * std::numbers::pi / n_nodes;
        for (int j = 0; j < nt; ++j) {
            const double ct = g.x[j], st = std::sqrt(1.0 - ct * ct);
            for (int k = 0; k < n_nodes; ++k) {
                const double p = 2.0 * std::numbers::pi * k / n_nodes;
                r.nodes.push_back(mu * st * std::cos(p));
                r.nodes.push_back(mu * st * std::sin(p));
                r.nodes.push_back(mu * ct);
                r.weights.push_back(mu * mu * g.w[j] * wp);
            }
        }
    } else {
        throw InvalidInput("sphere_quad: d must be 2 or 3");
    }
    return r;
}

cplx sphere_quad(const std::function<cplx(const double*)>& g, double mu, int d, int n_nodes) {
    const SphereRule r = sphere_rule(mu, d, n_nodes);
    return pairwise_reduce<cplx>(0, r.count(), [&](std::size_t k) { return r.weights[k] * g(&r.nodes[k * d]); });
}

}  // namespace helmlab
