#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "helmlab/annulus.hpp"
#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/quadrature.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

void MultiplierSpec::validate() const {
    if (d != 1 && d != 2) throw InvalidInput("multiplier: d must be 1 or 2");
    if (!(a > 0.0) || !(b > a)) throw InvalidInput("multiplier: need 0 < a < b");
    if (!(lambda >= 0.0)) throw InvalidInput("multiplier: lambda must be nonnegative");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("multiplier: alpha must lie in [0, 1)");
}

double MultiplierSpec::damping(double r) const {
    if (lambda == 0.0 || r <= a) return 1.0;
    return std::exp(-lambda * std::sqrt(r * r - a * a));
}

cplx lanczos_gamma(cplx z) {
    static constexpr double g = 7.0;
    static constexpr double p[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                    771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
    z -= 1.0;
    cplx x = p[0];
    for (int i = 1; i < 9; ++i) x += p[i] / (z + double(i));
    const cplx t = z + g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx family_prefactor(cplx s) { return std::exp((1.0 - s) * (1.0 - s)) / lanczos_gamma(1.0 - s); }

namespace {

void check_input(const MultiplierSpec& spec, const SampledField& h) {
    if (h.domain != Domain::physical) throw InvalidInput("multiplier: physical input expected");
    if (h.grid.ndim() != spec.d) throw InvalidInput("multiplier: grid dimension does not match d");
    h.grid.validate();
}

double radius(const GridSpec& g, std::size_t k) {
    double r2 = 0.0;
    for (int a = g.ndim() - 1; a >= 0; --a) {
        const double xi = g.freq(a, k % g.points[a]);
        r2 += xi * xi;
        k /= g.points[a];
    }
    return std::sqrt(r2);
}

double collar_width(const GridSpec& g) {
    double w = 0.0;
    for (int a = 0; a < g.ndim(); ++a) w = std::max(w, g.dual_spacing(a));
    return w;
}

// Mean of (r^2 - a^2)_+^{-s} over [r - w/2, r + w/2] in the measure r dr.
cplx collar_average(double r, double w, double a, cplx s) {
    const double lo = r - 0.5 * w, hi = r + 0.5 * w;
    const double rho_hi = hi * hi - a * a;
    const double rho_lo = std::max(0.0, lo * lo - a * a);
    const cplx e = 1.0 - s;
    const cplx top = std::pow(cplx(rho_hi), e);
    const cplx bottom = rho_lo > 0.0 ? std::pow(cplx(rho_lo), e) : cplx(0.0);
    return (top - bottom) / (e * (hi * hi - lo * lo));
}

// Same mean with the damping e^{-lambda sqrt(rho)} inside the integral. In
// t = sqrt(rho) the integrand is t^{1-2s} e^{-lambda t} dt; panels double in
// length away from the lower end.
cplx damped_collar_average(double r, double w, double a, cplx s, double lambda) {
    const double lo = r - 0.5 * w, hi = r + 0.5 * w;
    const double t_hi = std::sqrt(hi * hi - a * a);
    const double t_lo = std::sqrt(std::max(0.0, lo * lo - a * a));
    const cplx e = 1.0 - 2.0 * s;
    const double start = t_lo > 0.0 ? t_lo : std::ldexp(t_hi, -40);
    cplx sum = t_lo > 0.0 ? cplx(0.0) : std::exp((e + 1.0) * std::log(start)) / (e + 1.0);
    const GaussRule& g = gauss_legendre(16);
    for (double ta = start; ta < t_hi;) {
        const double tb = std::min(2.0 * ta, t_hi);
        const int pieces = 1 + int(lambda * (tb - ta) / 4.0);
        const double len = (tb - ta) / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double c = ta + (p + 0.5) * len;
            for (std::size_t i = 0; i < g.x.size(); ++i) {
                const double t = c + 0.5 * len * g.x[i];
                sum += 0.5 * len * g.w[i] * std::exp(e * std::log(t) - lambda * t);
            }
        }
        ta = tb;
    }
    return sum / (0.5 * (hi * hi - lo * lo));
}

SampledField multiply(const SampledField& h, const CVec& weight) {
    SampledField F = dft(h, Direction::forward);
    for (std::size_t k = 0; k < F.size(); ++k) F.values[k] *= weight[k];
    return dft(F, Direction::inverse);
}

}  // namespace

CVec multiplier_on_grid(const MultiplierSpec& spec, const GridSpec& g, cplx s) {
    spec.validate();
    const double w = collar_width(g);
    const bool singular = s != cplx(0.0);
    if (singular && !(spec.a > w)) throw InvalidInput("multiplier: dual grid too coarse for the inner collar");
    CVec out(g.size());
    parallel_for(g.size(), [&](std::size_t k) {
        const double r = radius(g, k);
        cplx v = 0.0;
        if (r > spec.b) {
            v = 0.0;
        } else if (singular && r >= spec.a - 0.5 * w && r < spec.a + 2.0 * w) {
            const cplx avg = spec.lambda > 0.0 ? damped_collar_average(r, w, spec.a, s, spec.lambda)
                                               : collar_average(r, w, spec.a, s);
            v = avg * spec.m(std::clamp(r, spec.a, spec.b));
        } else if (r >= spec.a) {
            const cplx base = singular ? std::pow(cplx(r * r - spec.a * spec.a), -s) : cplx(1.0);
            v = base * spec.damping(r) * spec.m(r);
        }
        out[k] = v;
    });
    return out;
}

SampledField apply_T(const MultiplierSpec& spec, const SampledField& h) {
    spec.validate();
    check_input(spec, h);
    return multiply(h, multiplier_on_grid(spec, h.grid, spec.alpha));
}

SampledField apply_T_family(const MultiplierSpec& spec, const SampledField& h) {
    spec.validate();
    if (!(spec.s.real() >= 0.0 && spec.s.real() < 1.0)) throw InvalidInput("family: need 0 <= Re s < 1");
    check_input(spec, h);
    SampledField out = multiply(h, multiplier_on_grid(spec, h.grid, spec.s));
    out *= family_prefactor(spec.s);
    return out;
}

CVec apply_T_direct(const MultiplierSpec& spec, const SampledField& h, const std::vector<double>& x) {
    spec.validate();
    check_input(spec, h);
    if (spec.d != 1) throw InvalidInput("apply_T_direct: d = 1 only");
    const GridSpec& g = h.grid;
    const std::size_t n = g.size();
    const double hx = g.spacing(0);
    double reach = 0.0;
    for (double xv : x) reach = std::max(reach, std::abs(xv));
    reach += g.half_width[0];
    const OscRule rule = graded_rule(spec.a, spec.b, spec.a, spec.alpha, reach);
    const std::size_t m = rule.x.size();
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    // Weighted spectrum at +xi (slot 2k) and -xi (slot 2k+1).
    CVec spec_w(2 * m);
    parallel_for(m, [&](std::size_t k) {
        const double xi = rule.x[k];
        const cplx smooth = rule.w[k] * std::pow(xi + spec.a, -spec.alpha) * spec.damping(xi) * spec.m(xi);
        auto ft = [&](double sgn) {
            return pairwise_reduce<cplx>(0, n, [&](std::size_t j) {
                return h.values[j] * std::polar(1.0, -sgn * xi * g.coord(0, j));
            });
        };
        spec_w[2 * k] = smooth * norm * hx * ft(1.0);
        spec_w[2 * k + 1] = smooth * norm * hx * ft(-1.0);
    });
    CVec out(x.size());
    parallel_for(x.size(), [&](std::size_t i) {
        out[i] = norm * pairwise_reduce<cplx>(0, m, [&](std::size_t k) {
                     const cplx e = std::polar(1.0, rule.x[k] * x[i]);
                     return spec_w[2 * k] * e + spec_w[2 * k + 1] * std::conj(e);
                 });
    });
    return out;
}

double AnnulusSamples::norm(double s) const {
    if (!(s >= 1.0)) throw InvalidInput("annulus norm: s must be >= 1");
    double mx = 0.0;
    for (const auto& v : values) mx = std::max(mx, std::abs(v));
    if (std::isinf(s) || mx == 0.0) return mx;
    const double sum = pairwise_reduce<double>(0, values.size(), [&](std::size_t i) {
        return std::pow(std::abs(values[i]) / mx, s);
    });
    return mx * std::pow(sum * cell, 1.0 / s);
}

AnnulusSamples annulus_nodes(const MultiplierSpec& spec, const GridSpec& g) {
    spec.validate();
    if (g.ndim() != spec.d) throw InvalidInput("annulus: grid dimension does not match d");
    AnnulusSamples out;
    out.grid = g;
    out.cell = g.dual_cell_volume();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double r = radius(g, k);
        if (r >= spec.a && r <= spec.b) out.index.push_back(k);
    }
    out.values.assign(out.index.size(), 0.0);
    return out;
}

cplx inner(const AnnulusSamples& f, const AnnulusSamples& g) {
    if (f.index != g.index || f.grid != g.grid) throw InvalidInput("annulus inner: node sets differ");
    return f.cell * pairwise_reduce<cplx>(0, f.values.size(),
                                          [&](std::size_t i) { return f.values[i] * std::conj(g.values[i]); });
}

AnnulusSamples apply_S(const MultiplierSpec& spec, const SampledField& h) {
    check_input(spec, h);
    AnnulusSamples out = annulus_nodes(spec, h.grid);
    const SampledField F = dft(h, Direction::forward);
    for (std::size_t i = 0; i < out.index.size(); ++i) {
        const double r = radius(h.grid, out.index[i]);
        out.values[i] = spec.damping(r) * spec.m(r) * F.values[out.index[i]];
    }
    return out;
}

SampledField apply_S_adjoint(const MultiplierSpec& spec, const AnnulusSamples& g) {
    spec.validate();
    if (g.grid.ndim() != spec.d) throw InvalidInput("annulus: grid dimension does not match d");
    if (g.values.size() != g.index.size()) throw InvalidInput("annulus: values and nodes differ in length");
    SampledField F(g.grid, Domain::frequency);
    for (std::size_t i = 0; i < g.index.size(); ++i) {
        const double r = radius(g.grid, g.index[i]);
        F.values[g.index[i]] = spec.damping(r) * std::conj(spec.m(r)) * g.values[i];
    }
    return dft(F, Direction::inverse);
}

}  // namespace helmlab
