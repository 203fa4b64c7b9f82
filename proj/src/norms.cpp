#include "helmlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "helmlab/errors.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

namespace {

double norm_with_volume(const CVec& v, double p, double vol) {
    if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    // Scale by the maximum so that large p does not overflow.
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    if (m == 0.0) return 0.0;
    const double s = pairwise_reduce<double>(0, v.size(), [&](std::size_t i) {
        return std::pow(std::abs(v[i]) / m, p);
    });
    return m * std::pow(s * vol, 1.0 / p);
}

}  // namespace

double lp_norm(const SampledField& field, double p) {
    if (field.domain != Domain::physical) throw InvalidInput("lp_norm: physical field expected");
    return norm_with_volume(field.values, p, field.grid.cell_volume());
}

double lp_norm_frequency(const SampledField& field, double p) {
    if (field.domain != Domain::frequency) throw InvalidInput("lp_norm_frequency: frequency field expected");
    return norm_with_volume(field.values, p, field.grid.dual_cell_volume());
}

cplx inner(const SampledField& f, const SampledField& g) {
    f.check_compatible(g);
    const double vol = f.domain == Domain::physical ? f.grid.cell_volume() : f.grid.dual_cell_volume();
    return vol * pairwise_reduce<cplx>(0, f.size(), [&](std::size_t i) { return f.values[i] * std::conj(g.values[i]); });
}

double rel_l2(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw InvalidInput("rel_l2: length mismatch");
    const double num = pairwise_reduce<double>(0, a.size(), [&](std::size_t i) { return std::norm(a[i] - b[i]); });
    const double den = pairwise_reduce<double>(0, b.size(), [&](std::size_t i) { return std::norm(b[i]); });
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

}  // namespace helmlab
