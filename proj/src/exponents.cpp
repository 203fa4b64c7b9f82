#include <algorithm>

#include "helmlab/errors.hpp"
#include "helmlab/normlab.hpp"

namespace helmlab {

namespace {

using R = Rational;

R positive_part(const R& x) { return x > R(0) ? x : R(0); }

}  // namespace

double compute_beta(const R& inv_p, const R& inv_s, int d, const R& eps, bool restriction_conjecture) {
    if (d < 1) throw InvalidInput("beta: d must be >= 1");
    if (!(eps > R(0))) throw InvalidInput("beta: eps must be positive");
    if (inv_p > R(1) || inv_p < R(1, 2)) throw InvalidInput("beta: need 1 >= 1/p >= 1/2");
    if (inv_s > R(1) || inv_s < R(1) - inv_p) throw InvalidInput("beta: need 1 >= 1/s >= 1/p'");
    if (d == 1) return 0.0;
    const R ps = inv_p_star(d, restriction_conjecture);
    const R ps_dual = R(1) - ps;  // 1/p_*'
    const R s_dual = R(1) - inv_s;
    const R t1 = R(d - 1) * (inv_p - s_dual);
    const R t2 = R(2) * (R(d + 1) * inv_p - R(d - 1) * s_dual - R(1)) * ps_dual - eps;
    const R t3 = R(2) * ps_dual * (inv_p - R(1, 2)) / (ps - R(1, 2)) - eps;
    const R t4 = R(2) * (R(1) - inv_p);
    return min(min(t1, t2), min(t3, t4)).to_double();
}

std::string case_name(GammaCase c) {
    switch (c) {
        case GammaCase::a: return "a";
        case GammaCase::b: return "b";
        case GammaCase::c: return "c";
        case GammaCase::d1: return "d1";
    }
    return "?";
}

GammaPrediction predicted_gamma(const ExponentPair& e, int d, double alpha_in, const R& eps) {
    if (d < 1) throw InvalidInput("gamma: d must be >= 1");
    if (!(alpha_in >= 0.0 && alpha_in < 1.0)) throw InvalidInput("gamma: alpha must lie in [0, 1)");
    const R alpha = R::approximate(alpha_in);
    const R gap = e.gap();
    GammaPrediction out;
    if (d == 1) {
        out.regime = GammaCase::d1;
        if (!(gap >= alpha && e.inv_p > alpha && e.inv_q < R(1) - alpha))
            out.note = "outside the bounded d = 1 range; raw formula value";
        out.exact = R(2) * alpha - R(2) * gap;
        out.gamma = out.exact.to_double();
        return out;
    }
    if (!region_membership(e, RegionId{Region::D_alpha_annulus, d, alpha}))
        throw InvalidInput("gamma: (p, q) outside D_alpha");
    const R m = min(e.inv_p, R(1) - e.inv_q);
    const R two_a = R(2) * alpha;
    const R dd(d);
    const R edge = R(2 * d, d + 1) * (R(2) * m - R(1));
    if (e.inv_p > R(d + 1, 2 * d) && e.inv_q < R(d - 1, 2 * d) && gap >= R(2, d + 1)) {
        out.regime = GammaCase::a;
        out.exact = two_a - R(2);
        out.gamma = out.exact.to_double();
        return out;
    }
    if (gap < min(R(2, d + 1), edge)) {
        out.regime = GammaCase::b;
        out.exact = two_a - R(d + 1) * gap;
        out.gamma = out.exact.to_double();
        return out;
    }
    if (!(m <= R(d + 1, 2 * d) && gap >= edge)) throw InvalidInput("gamma: (p, q) outside cases (a), (b), (c)");
    out.regime = GammaCase::c;
    out.eps = eps.to_double();
    const R theta = R(2) * dd * m - dd - eps;
    const R one_m = R(1) - theta;
    // Interpolation parameters of case (c); branch by which of 1/p, 1 - 1/q is smaller.
    const R x = positive_part(R(1, 2) - gap - theta * R(d - 3) / R(2 * (d + 1)));
    R inv_p1, inv_q1;
    if (m == e.inv_p) {
        inv_p1 = R(1, 2);
        inv_q1 = x / one_m;
    } else {
        inv_q1 = R(1, 2);
        inv_p1 = R(1) - x / one_m;
    }
    const R top = R(d + 3, 2);
    const R pen = positive_part(top - R(d + 1) * inv_p1) + positive_part(top - R(d + 1) * (R(1) - inv_q1));
    out.exact = two_a - R(2) + one_m * pen;
    const R lhs = R(2) * dd * m - R(d + 1) * gap;
    const R printed = lhs >= R(d - 1) ? two_a + R(d + 1) * gap
                                      : two_a + R(1) - dd + R(2) * dd * m + R(d + 1) * gap + eps;
    out.printed = printed.to_double();
    out.gamma = out.exact.to_double();
    out.note = "eps = " + eps.str() + " stands in for a sufficiently small eps; value rebuilt from the case (c) "
               "interpolation exponents, printed closed form in 'printed'";
    return out;
}

bool gamma_bound_holds(const ExponentPair& e, double alpha, const GammaPrediction& g) {
    const R bound = R(2) * R::approximate(alpha) - R(2) + e.gap();
    const bool strict = e.inv_p == R(1) || e.inv_q == R(0);
    return strict ? g.exact < bound : g.exact <= bound;
}

}  // namespace helmlab
