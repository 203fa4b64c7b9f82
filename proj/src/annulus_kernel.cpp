#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

#include "helmlab/annulus.hpp"
#include "helmlab/errors.hpp"
#include "helmlab/norms.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/quadrature.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

namespace {

constexpr int kOrder = 16;
constexpr double kTailStart = 40.0;

// Panel lengths keep |z| * length below this many radians.
constexpr double kPhasePerPanel = 6.0;

void add_panels(OscRule& r, double lo, double ta, double tb, double d0, double delta, double zmax) {
    const GaussRule& g = gauss_legendre(kOrder);
    const int nsub = std::max(1, int(std::ceil((tb - ta) * zmax / kPhasePerPanel)));
    const double len = (tb - ta) / nsub;
    for (int p = 0; p < nsub; ++p) {
        const double c = ta + (p + 0.5) * len, half = 0.5 * len;
        for (int i = 0; i < kOrder; ++i) {
            const double t = c + half * g.x[i];
            r.x.push_back(lo + t);
            r.w.push_back(g.w[i] * half * (delta > 0.0 ? std::pow(t + d0, -delta) : 1.0));
        }
    }
}

// int_x^inf e^{it} t^{-delta} dt by the integration-by-parts series, x >= 40.
cplx oscillatory_tail(double delta, double x) {
    cplx sum = 0.0, ik = 1.0;
    double mag = std::pow(x, -delta), prev = inf;
    for (int k = 0; k < 200; ++k) {
        if (!(mag < prev) || mag < 1e-20 * std::pow(x, -delta)) break;
        sum += cplx(0.0, 1.0) * ik * mag;
        prev = mag;
        ik *= cplx(0.0, -1.0);
        mag *= (delta + k) / x;
    }
    return std::polar(1.0, x) * sum;
}

cplx head_integral(double delta, double x) {
    const cplx body = singular_quad([&](double u) { return std::polar(1.0, x * u); }, delta);
    return std::pow(x, 1.0 - delta) * body;
}

}  // namespace

OscRule graded_rule(double lo, double hi, double edge, double delta, double zmax) {
    if (!(hi > lo) || edge > lo) throw InvalidInput("graded_rule: need edge <= lo < hi");
    if (!(delta >= 0.0) || (edge == lo && !(delta < 1.0)))
        throw InvalidInput("graded_rule: delta must lie in [0, 1) at an endpoint singularity");
    zmax = std::max(zmax, 1.0);
    OscRule r;
    const double width = hi - lo, d0 = lo - edge;
    if (d0 == 0.0 && delta > 0.0) {
        const double tmin = std::ldexp(width, -30);
        const double e = 1.0 - delta, umax = std::pow(tmin, e);
        const GaussRule& g = gauss_legendre(kOrder);
        for (int i = 0; i < kOrder; ++i) {
            const double u = 0.5 * umax * (1.0 + g.x[i]);
            r.x.push_back(lo + std::pow(u, 1.0 / e));
            r.w.push_back(g.w[i] * 0.5 * umax / e);
        }
        double t = tmin;
        while (2.0 * t < width) {
            add_panels(r, lo, t, 2.0 * t, 0.0, delta, zmax);
            t *= 2.0;
        }
        add_panels(r, lo, t, width, 0.0, delta, zmax);
    } else if (d0 > 0.0 && d0 < width) {
        add_panels(r, lo, 0.0, d0, d0, delta, zmax);
        double t = d0;
        while (2.0 * t < width) {
            add_panels(r, lo, t, 2.0 * t, d0, delta, zmax);
            t *= 2.0;
        }
        add_panels(r, lo, t, width, d0, delta, zmax);
    } else {
        add_panels(r, lo, 0.0, width, d0, delta, zmax);
    }
    return r;
}

cplx kernel_K(const MultiplierSpec& spec, double z) {
    spec.validate();
    const double a = spec.a, len = spec.b - spec.a, al = spec.alpha;
    const double scale = std::pow(len, 1.0 - al);
    if (spec.d == 1) {
        auto phi = [&](double rho) {
            const double xi = a + len * rho;
            return std::cos(xi * z) * std::pow(xi + a, -al) * spec.damping(xi) * spec.m(xi);
        };
        return scale * singular_quad(phi, al) / std::numbers::pi;
    }
    const double kappa = spec.b * std::abs(z);
    const int M = 2 * int(std::ceil(0.5 * (kappa + 10.0 * std::cbrt(kappa) + 40.0)));
    std::vector<double> c(M);
    for (int j = 0; j < M; ++j) c[j] = std::cos(2.0 * std::numbers::pi * j / M);
    auto phi = [&](double rho) {
        const double r = a + len * rho;
        const cplx ang = pairwise_reduce<cplx>(0, std::size_t(M), [&](std::size_t j) {
                             return std::polar(1.0, r * z * c[j]);
                         }) * (2.0 * std::numbers::pi / M);
        return ang * r * std::pow(r + a, -al) * spec.damping(r) * spec.m(r);
    };
    return scale * singular_quad(phi, al) / (4.0 * std::numbers::pi * std::numbers::pi);
}

KernelProfile kernel_profile(const MultiplierSpec& spec, const std::vector<double>& z) {
    KernelProfile p;
    p.z = z;
    p.K.assign(z.size(), 0.0);
    parallel_for(z.size(), [&](std::size_t i) { p.K[i] = kernel_K(spec, z[i]); });
    p.envelope.assign(z.size(), false);
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        const double v = std::abs(p.K[i]);
        p.envelope[i] = v > std::abs(p.K[i - 1]) && v >= std::abs(p.K[i + 1]);
    }
    return p;
}

void write_kernel_csv(const KernelProfile& p, std::ostream& os) {
    os << "z,re,im,abs,envelope_flag\n" << std::setprecision(17);
    for (std::size_t i = 0; i < p.z.size(); ++i)
        os << p.z[i] << ',' << p.K[i].real() << ',' << p.K[i].imag() << ',' << std::abs(p.K[i]) << ','
           << (p.envelope[i] ? 1 : 0) << '\n';
}

EnvelopeFit envelope_fit(const BatchEval& f, double z_lo, double z_hi, int windows, double window, int samples) {
    if (!(z_lo > 0.0 && z_hi > z_lo) || windows < 2 || samples < 2 || !(window > 0.0))
        throw InvalidInput("envelope_fit: bad window layout");
    std::vector<double> pts;
    pts.reserve(std::size_t(windows) * samples);
    for (int i = 0; i < windows; ++i) {
        const double z0 = z_lo * std::pow(z_hi / z_lo, double(i) / (windows - 1));
        for (int j = 0; j < samples; ++j) pts.push_back(z0 + window * j / (samples - 1));
    }
    const CVec v = f(pts);
    if (v.size() != pts.size()) throw InvalidInput("envelope_fit: evaluator returned the wrong length");
    EnvelopeFit fit;
    for (int i = 0; i < windows; ++i) {
        std::size_t best = std::size_t(i) * samples;
        for (int j = 1; j < samples; ++j) {
            const std::size_t k = std::size_t(i) * samples + j;
            if (std::abs(v[k]) > std::abs(v[best])) best = k;
        }
        fit.z.push_back(pts[best]);
        fit.peak.push_back(std::abs(v[best]));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(windows);
    for (int i = 0; i < windows; ++i) {
        const double lx = std::log(fit.z[i]), ly = std::log(fit.peak[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

cplx C_delta(double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidInput("C_delta: delta must lie in [0, 1)");
    static std::mutex mu;
    static std::map<double, cplx> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        if (auto it = cache.find(delta); it != cache.end()) return it->second;
    }
    const cplx v = head_integral(delta, kTailStart) + oscillatory_tail(delta, kTailStart);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(delta, v).first->second;
}

cplx incomplete_C(double delta, double x) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidInput("incomplete_C: delta must lie in [0, 1)");
    if (!(x > 0.0)) return 0.0;
    if (x <= kTailStart) return head_integral(delta, x);
    return C_delta(delta) - oscillatory_tail(delta, x);
}

OscAsymptotics osc_asymptotics(const std::function<cplx(double)>& a, double delta, double c) {
    if (!(c > 0.0)) throw InvalidInput("osc_asymptotics: c must be positive");
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidInput("osc_asymptotics: delta must lie in [0, 1)");
    OscAsymptotics r;
    r.integral = singular_quad([&](double rho) { return std::polar(1.0, c * rho) * a(rho); }, delta);
    if (delta > 0.0)
        r.leading = a(0.0) * std::pow(c, delta - 1.0) * C_delta(delta);
    else
        r.leading = (a(1.0) * std::polar(1.0, c) - a(0.0)) / cplx(0.0, c);
    r.remainder = std::abs(r.integral - r.leading);
    return r;
}

}  // namespace helmlab
