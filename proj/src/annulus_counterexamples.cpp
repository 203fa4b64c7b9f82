#include <algorithm>
#include <cmath>
#include <numbers>

#include "helmlab/annulus.hpp"
#include "helmlab/errors.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/summation.hpp"

namespace helmlab {

void CounterexampleId::validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("counterexample: alpha must lie in [0, 1)");
    switch (family) {
        case CounterexampleFamily::beta:
            if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("counterexample: beta must lie in (0, 1)");
            break;
        case CounterexampleFamily::eps:
            if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("counterexample: beta must lie in (0, 1)");
            if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("counterexample: eps must lie in (0, 1)");
            break;
        case CounterexampleFamily::log:
            if (k < 1) throw InvalidInput("counterexample: k must be >= 1");
            break;
    }
}

bool beta_in_window(double alpha, double p, double q, double beta) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidInput("beta window: p, q must be >= 1");
    const double lo = std::max(1.0 - alpha - 1.0 / q, 0.0);
    return lo < beta && beta < 1.0 - 1.0 / p;
}

namespace {

// sum_k w_k (xi_k + 1)^{-delta} e^{i xi_k x} over the rule, at every x.
CVec spectral_sum(const OscRule& rule, double delta, const std::vector<double>& x, double scale) {
    CVec coef(rule.x.size());
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] = scale * rule.w[k] * std::pow(rule.x[k] + 1.0, -delta);
    CVec out(x.size());
    parallel_for(x.size(), [&](std::size_t i) {
        out[i] = pairwise_reduce<cplx>(0, coef.size(),
                                       [&](std::size_t k) { return coef[k] * std::polar(1.0, rule.x[k] * x[i]); });
    });
    return out;
}

double reach(const std::vector<double>& x) {
    double r = 0.0;
    for (double v : x) r = std::max(r, std::abs(v));
    return r;
}

// int_1^Y y^{-alpha} e^{i omega y} dy
cplx log_window_transform(double alpha, double Y, double omega) {
    if (omega == 0.0) return (std::pow(Y, 1.0 - alpha) - 1.0) / (1.0 - alpha);
    if (omega < 0.0) return std::conj(log_window_transform(alpha, Y, -omega));
    return std::pow(omega, alpha - 1.0) * (incomplete_C(alpha, omega * Y) - incomplete_C(alpha, omega));
}

}  // namespace

SampledField make_counterexample(const CounterexampleId& id, const GridSpec& g) {
    id.validate();
    g.validate();
    if (g.ndim() != 1) throw InvalidInput("counterexample: 1-dimensional grid expected");
    std::vector<double> x(g.points[0]);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = g.coord(0, i);
    SampledField f(g, Domain::physical);
    switch (id.family) {
        case CounterexampleFamily::beta:
            f.values = spectral_sum(graded_rule(1.0, 2.0, 1.0, id.beta, reach(x)), id.beta, x, 1.0);
            break;
        case CounterexampleFamily::eps:
            f.values = spectral_sum(graded_rule(1.0 + id.eps, 2.0, 1.0, id.beta, reach(x)), id.beta, x,
                                    1.0 / std::sqrt(2.0 * std::numbers::pi));
            break;
        case CounterexampleFamily::log: {
            const double Y = double(id.k) + 1.0;
            const double norm = std::pow(std::log(Y), -id.alpha);
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] >= 1.0 && x[i] <= Y) f.values[i] = norm * std::pow(x[i], -id.alpha) * std::polar(1.0, x[i]);
            break;
        }
    }
    return f;
}

CVec counterexample_response(const CounterexampleId& id, double alpha, const std::vector<double>& x) {
    id.validate();
    if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidInput("counterexample: alpha must lie in [0, 1)");
    switch (id.family) {
        case CounterexampleFamily::beta: {
            const double delta = alpha + id.beta;
            if (!(delta < 1.0)) throw InvalidInput("counterexample: beta family response needs alpha + beta < 1");
            return spectral_sum(graded_rule(1.0, 2.0, 1.0, delta, reach(x)), delta, x, 1.0);
        }
        case CounterexampleFamily::eps: {
            const double delta = alpha + id.beta;
            return spectral_sum(graded_rule(1.0 + id.eps, 2.0, 1.0, delta, reach(x)), delta, x,
                                1.0 / std::sqrt(2.0 * std::numbers::pi));
        }
        case CounterexampleFamily::log:
            break;
    }
    // Frequency side: the window transform of f_k is evaluated in closed form
    // through incomplete_C, leaving one graded integral over the annulus.
    const double Y = double(id.k) + 1.0;
    const OscRule rule = graded_rule(1.0, 2.0, 1.0, alpha, Y + 3.0 + reach(x));
    const std::size_t m = rule.x.size();
    CVec plus(m), minus(m);
    parallel_for(m, [&](std::size_t k) {
        const double xi = rule.x[k];
        const double smooth = rule.w[k] * std::pow(xi + 1.0, -alpha);
        plus[k] = smooth * log_window_transform(id.alpha, Y, 1.0 - xi);
        minus[k] = smooth * log_window_transform(id.alpha, Y, 1.0 + xi);
    });
    const double pre = std::pow(std::log(Y), -id.alpha) / (2.0 * std::numbers::pi);
    CVec out(x.size());
    parallel_for(x.size(), [&](std::size_t i) {
        out[i] = pre * pairwise_reduce<cplx>(0, m, [&](std::size_t k) {
                     const cplx e = std::polar(1.0, rule.x[k] * x[i]);
                     return plus[k] * e + minus[k] * std::conj(e);
                 });
    });
    return out;
}

double log_family_constant(double alpha) {
    return std::pow(2.0, -alpha) * std::abs(C_delta(alpha)) / (4.0 * std::numbers::pi);
}

}  // namespace helmlab
