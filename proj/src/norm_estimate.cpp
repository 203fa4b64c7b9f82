#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <memory>
#include <ostream>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/normlab.hpp"
#include "helmlab/norms.hpp"
#include "helmlab/parallel.hpp"
#include "helmlab/rng.hpp"

namespace helmlab {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string point(const std::vector<double>& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + fmt("%.6g", c[i]);
    return s + ")";
}

struct Candidate {
    SampledField h;
    std::string label;
};

Candidate gaussian_member(const GridSpec& g, std::uint64_t seed, std::size_t k) {
    CounterRng rng = CounterRng(seed, 1).substream(k);
    const int d = g.ndim();
    double Lmin = inf;
    for (int a = 0; a < d; ++a) Lmin = std::min(Lmin, g.half_width[a]);
    const double sigma = std::exp(rng.uniform(std::log(0.5), std::log(Lmin / 4.0)));
    std::vector<double> c(d);
    for (auto& v : c) v = rng.uniform(-Lmin / 4.0, Lmin / 4.0);
    SampledField h = sample(g, [&](const std::vector<double>& x) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
        return cplx(std::exp(-r2 / (2.0 * sigma * sigma)));
    });
    return {std::move(h), "gaussian sigma=" + fmt("%.6g", sigma) + " center=" + point(c)};
}

Candidate wave_packet_member(const GridSpec& g, double radius, std::uint64_t seed, std::size_t k) {
    CounterRng rng = CounterRng(seed, 2).substream(k);
    const int d = g.ndim();
    double Lmin = inf;
    for (int a = 0; a < d; ++a) Lmin = std::min(Lmin, g.half_width[a]);
    const double sigma = std::exp(rng.uniform(std::log(2.0), std::log(Lmin / 4.0)));
    const double freq = radius * (1.0 + 0.2 * rng.uniform());
    std::vector<double> dir(d), c(d);
    double nrm = 0.0;
    do {
        nrm = 0.0;
        for (auto& v : dir) {
            v = rng.normal();
            nrm += v * v;
        }
    } while (nrm == 0.0);
    for (auto& v : dir) v /= std::sqrt(nrm);
    for (auto& v : c) v = rng.uniform(-Lmin / 4.0, Lmin / 4.0);
    SampledField h = sample(g, [&](const std::vector<double>& x) {
        double r2 = 0.0, ph = 0.0;
        for (int a = 0; a < d; ++a) {
            r2 += (x[a] - c[a]) * (x[a] - c[a]);
            ph += dir[a] * x[a];
        }
        return std::exp(-r2 / (2.0 * sigma * sigma)) * std::polar(1.0, freq * ph);
    });
    return {std::move(h), "wave_packet sigma=" + fmt("%.6g", sigma) + " freq=" + fmt("%.6g", freq) +
                              " dir=" + point(dir) + " center=" + point(c)};
}

double output_norm(const OperatorHandle& op, const SampledField& h, double q) {
    if (op.apply) return lp_norm(op.apply(h), q);
    return op.apply_to_annulus(h).norm(q);
}

void check_handle(const OperatorHandle& op) {
    if (bool(op.apply) == bool(op.apply_to_annulus))
        throw InvalidInput("operator handle: set exactly one of apply, apply_to_annulus");
    op.grid.validate();
}

// Running maximum of ||A v|| / ||v|| along power iteration on A* A.
double power_iteration(const OperatorHandle& op, int steps, std::uint64_t seed) {
    CounterRng rng(seed, 3);
    SampledField v(op.grid, Domain::physical);
    for (auto& x : v.values) x = cplx(rng.normal(), rng.normal());
    double best = 0.0;
    for (int it = 0; it < steps; ++it) {
        const double nv = lp_norm(v, 2.0);
        if (nv == 0.0) break;
        v *= 1.0 / nv;
        if (op.apply) {
            const SampledField w = op.apply(v);
            best = std::max(best, lp_norm(w, 2.0));
            v = op.adjoint ? op.adjoint(w) : op.apply(w);
        } else {
            const AnnulusSamples w = op.apply_to_annulus(v);
            best = std::max(best, w.norm(2.0));
            if (!op.annulus_adjoint) throw InvalidInput("power iteration: annulus operator needs an adjoint");
            v = op.annulus_adjoint(w);
        }
    }
    return best;
}

}  // namespace

OperatorHandle multiplier_handle(const MultiplierSpec& spec, const GridSpec& g) {
    spec.validate();
    g.validate();
    if (g.ndim() != spec.d) throw InvalidInput("multiplier handle: grid dimension does not match d");
    OperatorHandle op;
    op.grid = g;
    op.radius = spec.a;
    op.apply = [spec](const SampledField& h) { return apply_T(spec, h); };
    auto w = std::make_shared<CVec>(multiplier_on_grid(spec, g, spec.alpha));
    op.adjoint = [w](const SampledField& h) {
        SampledField F = dft(h, Direction::forward);
        for (std::size_t k = 0; k < F.size(); ++k) F.values[k] *= std::conj((*w)[k]);
        return dft(F, Direction::inverse);
    };
    if (spec.d == 1 && spec.a == 1.0 && spec.b == 2.0 && spec.lambda == 0.0 && !spec.symbol) {
        const double alpha = spec.alpha;
        op.counterexample = [alpha](const CounterexampleId& id, const std::vector<double>& x) {
            return counterexample_response(id, alpha, x);
        };
    }
    return op;
}

OperatorHandle restriction_handle(const MultiplierSpec& spec, const GridSpec& g) {
    spec.validate();
    g.validate();
    if (g.ndim() != spec.d) throw InvalidInput("restriction handle: grid dimension does not match d");
    OperatorHandle op;
    op.grid = g;
    op.radius = spec.a;
    op.apply_to_annulus = [spec](const SampledField& h) { return apply_S(spec, h); };
    op.annulus_adjoint = [spec](const AnnulusSamples& s) { return apply_S_adjoint(spec, s); };
    return op;
}

double norm_ratio(const OperatorHandle& op, const SampledField& h, double p, double q) {
    check_handle(op);
    const double in = lp_norm(h, p);
    if (!(in > 0.0)) throw InvalidInput("norm ratio: zero input");
    return output_norm(op, h, q) / in;
}

OperatorNormEstimate estimate_norm_lower(const OperatorHandle& op, double p, double q,
                                         const std::vector<FamilyId>& families, int budget) {
    check_handle(op);
    if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidInput("norm estimate: p, q must be >= 1");
    if (budget < 1) throw InvalidInput("norm estimate: budget must be >= 1");
    OperatorNormEstimate out;
    out.p = p;
    out.q = q;
    bool any = false;
    for (const FamilyId& fam : families) {
        std::vector<double> ratio;
        std::vector<std::string> label;
        if (fam.kind == TestFamily::counterexample) {
            if (!op.counterexample || op.grid.ndim() != 1 || !op.apply) continue;
            const SampledField f = make_counterexample(fam.member, op.grid);
            const double in = lp_norm(f, p);
            if (!(in > 0.0)) continue;
            std::vector<double> x(op.grid.points[0]);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = op.grid.coord(0, i);
            const SampledField Tf(op.grid, op.counterexample(fam.member, x), Domain::physical);
            ratio.push_back(lp_norm(Tf, q) / in);
            char buf[160];
            const char* name = fam.member.family == CounterexampleFamily::beta  ? "beta"
                               : fam.member.family == CounterexampleFamily::eps ? "eps"
                                                                                : "log";
            std::snprintf(buf, sizeof buf, "counterexample %s beta=%.6g eps=%.6g k=%ld alpha=%.6g", name,
                          fam.member.beta, fam.member.eps, fam.member.k, fam.member.alpha);
            label.emplace_back(buf);
        } else {
            const std::size_t n = std::size_t(budget);
            ratio.assign(n, -1.0);
            label.assign(n, "");
            parallel_for(n, [&](std::size_t k) {
                Candidate c = fam.kind == TestFamily::gaussian ? gaussian_member(op.grid, fam.seed, k)
                                                               : wave_packet_member(op.grid, op.radius, fam.seed, k);
                const double in = lp_norm(c.h, p);
                if (!(in > 0.0) || !std::isfinite(in)) return;
                ratio[k] = output_norm(op, c.h, q) / in;
                label[k] = std::move(c.label);
            });
        }
        std::size_t best = ratio.size();
        for (std::size_t k = 0; k < ratio.size(); ++k)
            if (ratio[k] >= 0.0 && (best == ratio.size() || ratio[k] > ratio[best])) best = k;
        if (best == ratio.size()) continue;
        any = true;
        out.witnesses.push_back(label[best] + " ratio=" + fmt("%.17g", ratio[best]));
        out.lower_bound = std::max(out.lower_bound, ratio[best]);
    }
    if (p == 2.0 && q == 2.0) {
        const std::uint64_t seed = families.empty() ? 0x5eed : families.front().seed;
        const double pi_est = power_iteration(op, budget, seed);
        out.witnesses.push_back("power_iteration steps=" + std::to_string(budget) + " ratio=" + fmt("%.17g", pi_est));
        any = true;
        if (pi_est > out.lower_bound) {
            out.lower_bound = pi_est;
            out.method = NormMethod::power_iteration;
        }
    }
    if (!any) throw InvalidInput("norm estimate: every test input was skipped");
    return out;
}

ScalingFit fit_scaling_exponent(const std::vector<double>& lambdas, const std::vector<double>& norms) {
    if (lambdas.size() != norms.size()) throw InvalidInput("scaling fit: length mismatch");
    if (lambdas.size() < 4) throw InvalidInput("scaling fit: need at least 4 points");
    const std::size_t n = lambdas.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lambdas[i] > 0.0) || !(norms[i] > 0.0) || !std::isfinite(norms[i]) || !std::isfinite(lambdas[i]))
            throw InvalidInput("scaling fit: data must be positive and finite");
        x[i] = std::log1p(lambdas[i]);
        y[i] = std::log(norms[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidInput("scaling fit: lambdas must not all coincide");
    ScalingFit f;
    f.slope = sxy / sxx;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - my - f.slope * (x[i] - mx);
        sse += r * r;
    }
    f.stderr_ = std::sqrt(sse / double(n - 2) / sxx);
    return f;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "lambda,p,q,alpha,lower_bound,predicted_gamma,fitted_slope,stderr\n" << std::setprecision(17);
    for (const SweepRow& r : rows)
        os << r.lambda << ',' << r.p << ',' << r.q << ',' << r.alpha << ',' << r.lower_bound << ','
           << r.predicted_gamma << ',' << r.fitted_slope << ',' << r.stderr_ << '\n';
}

}  // namespace helmlab
