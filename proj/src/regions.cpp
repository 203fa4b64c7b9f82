#include <iomanip>
#include <ostream>

#include "helmlab/errors.hpp"
#include "helmlab/normlab.hpp"

namespace helmlab {

namespace {

using R = Rational;

// 1/p > lo_p, 1/q < hi_q, gap_lo <= 1/p - 1/q <= gap_hi (strict upper if asked).
bool window(const ExponentPair& e, R lo_p, R hi_q, R gap_lo, R gap_hi, bool strict_hi) {
    const R gap = e.gap();
    return e.inv_p > lo_p && e.inv_q < hi_q && gap >= gap_lo && (strict_hi ? gap < gap_hi : gap <= gap_hi);
}

}  // namespace

void RegionId::validate() const {
    switch (which) {
        case Region::D_n:
        case Region::D_tilde_n:
        case Region::largefreq_P38:
        case Region::smallfreq_P35:
            if (n < 2) throw InvalidInput("region: n must be >= 2");
            break;
        case Region::D_alpha_annulus:
            if (n < 2) throw InvalidInput("region: d must be >= 2");
            if (alpha < R(0) || alpha >= R(1)) throw InvalidInput("region: alpha must lie in [0, 1)");
            break;
        case Region::cal_D_alpha:
            if (n < 2) throw InvalidInput("region: d must be >= 2");
            if (alpha <= R(0) || alpha >= R(1)) throw InvalidInput("region: alpha must lie in (0, 1)");
            break;
    }
}

Region parse_region(const std::string& name) {
    if (name == "D" || name == "D_n") return Region::D_n;
    if (name == "D_tilde" || name == "D_tilde_n") return Region::D_tilde_n;
    if (name == "D_alpha" || name == "D_alpha_annulus") return Region::D_alpha_annulus;
    if (name == "cal_D_alpha") return Region::cal_D_alpha;
    if (name == "largefreq" || name == "largefreq_P38") return Region::largefreq_P38;
    if (name == "smallfreq" || name == "smallfreq_P35") return Region::smallfreq_P35;
    throw InvalidInput("region: unknown region '" + name + "'");
}

std::string region_name(Region r) {
    switch (r) {
        case Region::D_n: return "D_n";
        case Region::D_tilde_n: return "D_tilde_n";
        case Region::D_alpha_annulus: return "D_alpha_annulus";
        case Region::cal_D_alpha: return "cal_D_alpha";
        case Region::largefreq_P38: return "largefreq_P38";
        case Region::smallfreq_P35: return "smallfreq_P35";
    }
    return "?";
}

Rational inv_p_star(int n, bool restriction_conjecture) {
    if (n < 2) throw InvalidInput("p_*: n must be >= 2");
    if (restriction_conjecture || n == 2) return R(n + 1, 2 * n);
    return R(n + 4, 2 * (n + 2));
}

bool region_membership(const ExponentPair& e, const RegionId& reg) {
    reg.validate();
    const int n = reg.n;
    const R half(1, 2);
    switch (reg.which) {
        case Region::D_n:
            return window(e, R(n + 1, 2 * n), R(n - 1, 2 * n), R(2, n + 1), R(2, n), n == 2);
        case Region::D_tilde_n: {
            const R ps = inv_p_star(n, reg.restriction_conjecture);
            return window(e, ps, R(1) - ps, R(2, n + 1), R(2, n), n == 2);
        }
        case Region::D_alpha_annulus: {
            if (reg.alpha == R(0)) return e.inv_p >= half && e.inv_q <= half;
            const R shift = reg.alpha / R(2 * n);
            return e.inv_p > half + shift && e.inv_q < half - shift && e.gap() >= R(2) * reg.alpha / R(n + 1);
        }
        case Region::cal_D_alpha: {
            const R two_a = R(2) * reg.alpha;
            return e.gap() >= two_a / R(n + 1) && e.inv_p > (R(n - 1) + two_a) / R(2 * n) &&
                   e.inv_q < (R(n + 1) - two_a) / R(2 * n);
        }
        case Region::largefreq_P38: {
            if (!(e.inv_p >= half && e.inv_q <= half)) return false;
            const R gap = e.gap();
            if (gap < R(0) || gap > R(2, n)) return false;
            if ((e.inv_p == R(1) || e.inv_q == R(0)) && gap == R(2, n)) return false;
            return true;
        }
        case Region::smallfreq_P35: {
            const R ps = inv_p_star(n, reg.restriction_conjecture);
            return e.inv_p > ps && e.inv_q < R(1) - ps && e.gap() >= R(2, n + 1);
        }
    }
    return false;
}

void write_region_scan(const RegionId& region, int max_den, std::ostream& os) {
    region.validate();
    const auto vals = rationals_up_to(max_den);
    os << "inv_p,inv_q,member\n" << std::setprecision(17);
    for (const R& ip : vals)
        for (const R& iq : vals)
            os << ip.to_double() << ',' << iq.to_double() << ',' << (region_membership({ip, iq}, region) ? 1 : 0)
               << '\n';
}

}  // namespace helmlab
