#include <cmath>
#include <numbers>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/step.hpp"

namespace helmlab {

FrequencyParams::FrequencyParams(double lambda_, double eps_, double V1, double V2)
    : lambda(lambda_), eps(eps_), potential{V1, V2} {
    validate();
}

void FrequencyParams::validate() const {
    if (!(potential.V1 >= potential.V2)) throw InvalidInput("params: need V1 >= V2");
    if (!(lambda > potential.V1)) throw InvalidInput("params: need lambda > V1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidInput("params: eps must lie in [0, 1]");
}

double FrequencyParams::mu1() const { return std::sqrt(lambda - potential.V1); }
double FrequencyParams::mu2() const { return std::sqrt(lambda - potential.V2); }

cplx nu(double r, int j, const FrequencyParams& p) {
    const double m = p.mu(j);
    if (p.eps > 0.0) return std::sqrt(cplx(m * m - r * r, p.eps));
    if (r <= m) return std::sqrt((m - r) * (m + r));
    return cplx(0.0, std::sqrt((r - m) * (r + m)));
}

cplx multiplier_from_nu(int j, int s, cplx nu1, cplx nu2) {
    const cplx pref = cplx(0.0, std::sqrt(std::numbers::pi / 2)) / (nu1 + nu2);
    switch (j) {
        case 1: return pref * (double(s) - nu2 / nu1);
        case 2: return pref * (1.0 + s);
        case 3: return pref * (1.0 - s);
        case 4: return pref * (-double(s) - nu1 / nu2);
        default: throw InvalidInput("interface_multiplier: j must be 1..4");
    }
}

cplx interface_multiplier(double r, int j, int s, const FrequencyParams& p) {
    if (s != 1 && s != -1) throw InvalidInput("interface_multiplier: sign_y must be +1 or -1");
    const cplx n1 = nu(r, 1, p), n2 = nu(r, 2, p);
    if (n1 + n2 == 0.0) throw SingularityError("interface_multiplier: nu1 + nu2 vanishes");
    if (j == 1 && n1 == 0.0) throw SingularityError("interface_multiplier: m1 evaluated at |xi| = mu1");
    if (j == 4 && n2 == 0.0) throw SingularityError("interface_multiplier: m4 evaluated at |xi| = mu2");
    return multiplier_from_nu(j, s, n1, n2);
}

double half_space_weight(const GridSpec& g, std::size_t iy, HalfSpace side) {
    const std::size_t mid = g.points[g.ndim() - 1] / 2;
    if (iy == mid) return 0.5;
    const bool upper = iy > mid;
    return (upper == (side == HalfSpace::plus)) ? 1.0 : 0.0;
}

SampledField one_sided_ft(const SampledField& f, HalfSpace side) {
    if (f.domain != Domain::physical) throw InvalidInput("one_sided_ft: physical field expected");
    const int n = f.grid.ndim();
    if (n < 2 || n > 3) throw InvalidInput("one_sided_ft: n must be 2 or 3");
    SampledField h = f;
    const std::size_t ny = f.grid.points[n - 1];
    for (std::size_t k = 0; k < h.size(); ++k) h.values[k] *= half_space_weight(f.grid, k % ny, side);
    return dft(h, Direction::forward);
}

Block block_of(int t, double r, double m1, double m2) {
    if (r > m1 + m2) return Block::W_large;
    switch (t) {
        case 0: return r <= m1 ? Block::w : Block::frak_W;
        case 1:
        case 2:
            if (r <= m1) return Block::w;
            return r <= m2 ? Block::frak_w : Block::frak_W;
        case 3: return r <= m2 ? Block::w : Block::frak_W;
        default: throw InvalidInput("block_of: term must be 0..3");
    }
}

SymbolConstants symbol_constants(const GridSpec& lat, int j, const FrequencyParams& p) {
    if (p.eps != 0.0) throw InvalidInput("symbol_constants: eps = 0 expected");
    SymbolConstants c;
    c.nu_lower = std::numeric_limits<double>::infinity();
    const double m = p.mu(j);
    sample_frequency(lat, [&](const std::vector<double>& xi) {
        double r2 = 0.0;
        for (double v : xi) r2 += v * v;
        const double r = std::sqrt(r2);
        if (std::abs(r - p.mu1()) < 1e-9 || std::abs(r - p.mu2()) < 1e-9) return cplx(0.0);
        const double an = std::abs(nu(r, j, p));
        // |grad nu| = r / |nu| for both branches.
        const double ratio = an * std::sqrt(1.0 + r2 / (an * an)) / (1.0 + r);
        c.nu_lower = std::min(c.nu_lower, ratio);
        c.nu_upper = std::max(c.nu_upper, ratio);
        const cplx n1 = nu(r, 1, p), n2 = nu(r, 2, p);
        for (int s : {1, -1}) {
            const double d = (std::abs(multiplier_from_nu(2, s, n1, n2)) + std::abs(multiplier_from_nu(3, s, n1, n2))) * (1.0 + r);
            c.m23_decay = std::max(c.m23_decay, d);
        }
        (void)m;
        return cplx(0.0);
    });
    return c;
}

}  // namespace helmlab
