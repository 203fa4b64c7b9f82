#include <cmath>
#include <numeric>
#include <set>

#include "helmlab/errors.hpp"
#include "helmlab/normlab.hpp"

namespace helmlab {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < -i128(INT64_MAX)) throw RationalOverflow("rational: 64-bit overflow");
    return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 n, i128 d) {
    if (d == 0) throw InvalidInput("rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational(narrow(n), narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvalidInput("rational: zero denominator");
    if (n == INT64_MIN || d == INT64_MIN) throw RationalOverflow("rational: 64-bit overflow");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num_ = g > 1 ? n / g : n;
    den_ = g > 1 ? d / g : d;
}

Rational Rational::parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        const std::int64_t n = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw InvalidInput("");
        if (slash == std::string::npos) return Rational(n);
        const std::string tail = s.substr(slash + 1);
        const std::int64_t d = std::stoll(tail, &used);
        if (used != tail.size()) throw InvalidInput("");
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw InvalidInput("rational: cannot parse '" + s + "'");
    }
}

Rational Rational::approximate(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw InvalidInput("rational: non-finite value");
    if (max_den < 1) throw InvalidInput("rational: max_den must be positive");
    const bool neg = x < 0;
    double r = std::abs(x);
    if (r > 9.0e18) throw RationalOverflow("rational: value too large");
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(r);
        const std::int64_t a = std::int64_t(fl);
        const i128 h2 = i128(a) * h1 + h0, k2 = i128(a) * k1 + k0;
        if (k2 > max_den || h2 > i128(INT64_MAX)) break;
        h0 = h1;
        h1 = std::int64_t(h2);
        k0 = k1;
        k1 = std::int64_t(k2);
        const double frac = r - fl;
        if (frac < 1e-15 || std::abs(double(h1) / double(k1) - std::abs(x)) <= 1e-15 * std::abs(x)) break;
        r = 1.0 / frac;
    }
    return Rational(neg ? -h1 : h1, k1);
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidInput("rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 l = i128(a.num_) * b.den_, r = i128(b.num_) * a.den_;
    return l <=> r;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::vector<Rational> rationals_up_to(int max_den) {
    if (max_den < 1) throw InvalidInput("rationals_up_to: max_den must be positive");
    std::set<Rational> s;
    for (int d = 1; d <= max_den; ++d)
        for (int n = 0; n <= d; ++n) s.insert(Rational(n, d));
    return {s.begin(), s.end()};
}

ExponentPair::ExponentPair(Rational ip, Rational iq) : inv_p(ip), inv_q(iq) {
    if (ip < Rational(0) || ip > Rational(1) || iq < Rational(0) || iq > Rational(1))
        throw InvalidInput("exponent pair: 1/p and 1/q must lie in [0, 1]");
}

double ExponentPair::p() const { return inv_p.num() == 0 ? INFINITY : 1.0 / inv_p.to_double(); }
double ExponentPair::q() const { return inv_q.num() == 0 ? INFINITY : 1.0 / inv_q.to_double(); }

}  // namespace helmlab
