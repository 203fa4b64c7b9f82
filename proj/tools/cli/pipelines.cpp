#include "cli/pipelines.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "helmlab/errors.hpp"
#include "helmlab/fft.hpp"
#include "helmlab/hlzf.hpp"
#include "helmlab/norms.hpp"
#include "helmlab/parallel.hpp"

namespace helmlab::cli {

namespace {

Json grid_json(const GridSpec& g) {
    return Json{{"points", g.points}, {"half_width", g.half_width}};
}

Json physics_json(const FrequencyParams& p) {
    return Json{{"lambda", p.lambda}, {"eps", p.eps}, {"V1", p.potential.V1}, {"V2", p.potential.V2}};
}

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

Json solve(const RunConfig& cfg, OutputDir& out) {
    const SampledField f = make_source(cfg);
    const FrequencyParams& p = cfg.physics;
    SolveDiagnostics diag;
    const SampledField u = p.eps != 0.0 ? solve_perturbed(f, p, cfg.solve.options, &diag)
                                        : solve_lap(f, p, cfg.solve.branch, cfg.solve.options, &diag);
    const double res = residual(u, f, p);
    const double fn = lp_norm(f, 2.0);
    out.write_field("u.hlzf", u);
    Json j{{"command", "solve"},
           {"grid", grid_json(f.grid)},
           {"physics", physics_json(p)},
           {"branch", cfg.solve.branch == Branch::outgoing ? "outgoing" : "incoming"},
           {"residual", res},
           {"f_norm2", fn},
           {"relative_residual", fn > 0.0 ? res / fn : 0.0},
           {"shell_ratio", diag.shell_ratio},
           {"shell_warning", diag.shell_warning},
           {"collar_nodes", diag.collar_nodes},
           {"extrapolation_error", diag.extrapolation_error}};
    out.write_json("solve.json", j);
    return j;
}

Json decompose(const RunConfig& cfg, OutputDir& out) {
    const SampledField f = make_source(cfg);
    const FrequencyParams& p = cfg.physics;
    const FrequencyDecomposition d = frequency_decomposition(f, p, cfg.solve.options);
    const SampledField whole = interface_term(f, p, cfg.solve.options);
    out.write_field("w.hlzf", d.w);
    out.write_field("frak_w.hlzf", d.frak_w);
    out.write_field("frak_W.hlzf", d.frak_W);
    out.write_field("W_large.hlzf", d.W_large);
    Json j{{"command", "decompose"},
           {"grid", grid_json(f.grid)},
           {"physics", physics_json(p)},
           {"norm2", {{"w", lp_norm(d.w, 2.0)},
                      {"frak_w", lp_norm(d.frak_w, 2.0)},
                      {"frak_W", lp_norm(d.frak_W, 2.0)},
                      {"W_large", lp_norm(d.W_large, 2.0)}}},
           {"consistency_rel_l2", rel_l2(d.total().values, whole.values)}};
    out.write_json("decompose.json", j);
    return j;
}

Json kernel(const RunConfig& cfg, OutputDir& out) {
    const MultiplierSpec spec = cfg.multiplier.spec();
    const KernelParams& k = cfg.kernel;
    std::vector<double> z(std::size_t(k.samples));
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = k.samples == 1 ? k.z_min : k.z_min + (k.z_max - k.z_min) * double(i) / double(k.samples - 1);
    const KernelProfile prof = kernel_profile(spec, z);
    std::ostringstream csv;
    write_kernel_csv(prof, csv);
    out.write_text("kernel.csv", csv.str());
    Json j{{"command", "kernel"},
           {"multiplier", {{"d", spec.d}, {"a", spec.a}, {"b", spec.b}, {"alpha", spec.alpha},
                           {"lambda", spec.lambda}, {"symbol", cfg.multiplier.symbol}}},
           {"K0_abs", std::abs(kernel_K(spec, 0.0))}};
    if (k.envelope) {
        const BatchEval eval = [&](const std::vector<double>& pts) {
            CVec v(pts.size());
            parallel_for(pts.size(), [&](std::size_t i) { v[i] = kernel_K(spec, pts[i]); });
            return v;
        };
        const EnvelopeFit fit = envelope_fit(eval, k.z_lo, k.z_hi, k.windows);
        j["envelope"] = {{"z_lo", k.z_lo}, {"z_hi", k.z_hi}, {"windows", k.windows},
                         {"slope", fit.slope}, {"intercept", fit.intercept}};
    }
    out.write_json("kernel.json", j);
    return j;
}

Json scaling(const RunConfig& cfg, OutputDir& out) {
    const ScalingParams& s = cfg.scaling;
    const GridSpec g = cfg.grid.spec();
    const ExponentPair pair(s.inv_p, s.inv_q);
    const double p = pair.p(), q = pair.q();
    std::vector<FamilyId> fams;
    for (TestFamily t : s.families) fams.push_back(FamilyId{t, {}, cfg.seed});
    std::vector<double> lb;
    Json points = Json::array();
    for (double lam : s.lambdas) {
        MultiplierParams mp = cfg.multiplier;
        mp.lambda = lam;
        const OperatorNormEstimate e = estimate_norm_lower(multiplier_handle(mp.spec(), g), p, q, fams, s.budget);
        lb.push_back(e.lower_bound);
        points.push_back({{"lambda", lam},
                          {"lower_bound", e.lower_bound},
                          {"method", e.method == NormMethod::power_iteration ? "power_iteration" : "test_family"},
                          {"witnesses", e.witnesses}});
    }
    double gamma = std::numeric_limits<double>::quiet_NaN();
    std::string regime = "none", note;
    try {
        const GammaPrediction gp = predicted_gamma(pair, cfg.multiplier.d, cfg.multiplier.alpha);
        gamma = gp.gamma;
        regime = case_name(gp.regime);
        note = gp.note;
    } catch (const InvalidInput& e) {
        note = e.what();
    }
    bool positive = true;
    for (double v : lb) positive = positive && v > 0.0;
    ScalingFit fit{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    if (positive) fit = fit_scaling_exponent(s.lambdas, lb);
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < lb.size(); ++i)
        rows.push_back({s.lambdas[i], p, q, cfg.multiplier.alpha, lb[i], gamma, fit.slope, fit.stderr_});
    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    out.write_text("sweep.csv", csv.str());
    Json j{{"command", "scaling"},
           {"grid", grid_json(g)},
           {"inv_p", s.inv_p.str()},
           {"inv_q", s.inv_q.str()},
           {"d", cfg.multiplier.d},
           {"alpha", cfg.multiplier.alpha},
           {"budget", s.budget},
           {"seed", cfg.seed},
           {"predicted_gamma", gamma},
           {"gamma_case", regime},
           {"gamma_note", note},
           {"fitted_slope", fit.slope},
           {"stderr", fit.stderr_},
           {"points", points}};
    out.write_json("scaling.json", j);
    return j;
}

Json counterexample(const RunConfig& cfg, OutputDir& out) {
    const CounterexampleParams& c = cfg.counterexample;
    std::ostringstream csv;
    csv << std::setprecision(17);
    Json j{{"command", "counterexample"}, {"alpha", c.alpha}};
    switch (c.family) {
        case CounterexampleFamily::log: {
            const double constant = log_family_constant(c.alpha);
            csv << "k,response_abs,ratio,constant\n";
            Json rows = Json::array();
            for (long k : c.k) {
                const CounterexampleId id{CounterexampleFamily::log, 0.0, 0.0, k, c.alpha};
                const double r = std::abs(counterexample_response(id, c.alpha, {0.0})[0]);
                const double ratio = r / std::pow(std::log(double(k) + 1.0), 1.0 - c.alpha);
                csv << k << ',' << r << ',' << ratio << ',' << constant << '\n';
                rows.push_back({{"k", k}, {"response_abs", r}, {"ratio", ratio}});
            }
            j["family"] = "log";
            j["constant"] = constant;
            j["members"] = rows;
            break;
        }
        case CounterexampleFamily::eps: {
            csv << "eps,response_abs\n";
            Json rows = Json::array();
            for (double e : c.eps) {
                const CounterexampleId id{CounterexampleFamily::eps, c.beta, e, 1, c.alpha};
                const double r = std::abs(counterexample_response(id, c.alpha, {0.0})[0]);
                csv << e << ',' << r << '\n';
                rows.push_back({{"eps", e}, {"response_abs", r}});
            }
            j["family"] = "eps";
            j["beta"] = c.beta;
            j["members"] = rows;
            break;
        }
        case CounterexampleFamily::beta: {
            const CounterexampleId id{CounterexampleFamily::beta, c.beta, 0.0, 1, c.alpha};
            std::vector<double> x(std::size_t(c.samples));
            for (std::size_t i = 0; i < x.size(); ++i)
                x[i] = std::pow(c.x_max, double(i) / double(c.samples - 1));
            const CVec tf = counterexample_response(id, c.alpha, x);
            csv << "x,re,im,abs\n";
            for (std::size_t i = 0; i < x.size(); ++i)
                csv << x[i] << ',' << tf[i].real() << ',' << tf[i].imag() << ',' << std::abs(tf[i]) << '\n';
            const BatchEval eval = [&](const std::vector<double>& pts) { return counterexample_response(id, c.alpha, pts); };
            const EnvelopeFit fit = envelope_fit(eval, 10.0, c.x_max);
            j["family"] = "beta";
            j["beta"] = c.beta;
            j["envelope_slope"] = fit.slope;
            j["predicted_slope"] = c.alpha + c.beta - 1.0;
            break;
        }
    }
    out.write_text("counterexample.csv", csv.str());
    out.write_json("counterexample.json", j);
    return j;
}

Json regions(const RunConfig& cfg, OutputDir& out) {
    const RegionParams& r = cfg.regions;
    const RegionId id{r.region, r.n, r.alpha, r.restriction};
    std::ostringstream csv;
    Json j{{"command", "regions"}, {"region", region_name(r.region)}, {"n", r.n}, {"alpha", r.alpha.str()},
           {"max_den", r.max_den}, {"restriction_conjecture", r.restriction}, {"selfdual", r.selfdual}};
    if (r.selfdual) {
        csv << "inv_p,inv_q,q,member\n" << std::setprecision(17);
        double qmin = inf, qmax = -inf;
        int members = 0;
        for (const Rational& t : rationals_up_to(r.max_den)) {
            if (t > Rational(1, 2)) continue;
            const bool in = region_membership({Rational(1) - t, t}, id);
            const double q = t.num() == 0 ? inf : 1.0 / t.to_double();
            csv << (Rational(1) - t).to_double() << ',' << t.to_double() << ',' << num(q) << ',' << (in ? 1 : 0) << '\n';
            if (in) {
                ++members;
                qmin = std::min(qmin, q);
                qmax = std::max(qmax, q);
            }
        }
        j["members"] = members;
        j["q_min"] = members ? num(qmin) : "none";
        j["q_max"] = members ? num(qmax) : "none";
    } else {
        write_region_scan(id, r.max_den, csv);
        int members = 0;
        for (const Rational& a : rationals_up_to(r.max_den))
            for (const Rational& b : rationals_up_to(r.max_den)) members += region_membership({a, b}, id);
        j["members"] = members;
    }
    out.write_text("regions.csv", csv.str());
    out.write_json("regions.json", j);
    return j;
}

Json mp_check(const RunConfig& cfg, OutputDir& out) {
    const GridSpec g = cfg.grid.spec();
    const FrequencyParams& p = cfg.physics;
    Json profiles = Json::array(), rejected = Json::array();
    bool all_positive = true;
    for (double c : cfg.mp.centers) {
        const MountainPassCertificate m = mountain_pass_certificate(ring_profile(g, c, cfg.mp.width), p);
        all_positive = all_positive && m.positive;
        profiles.push_back({{"center", c}, {"width", cfg.mp.width}, {"volume_term", m.volume_term},
                            {"interface_term", m.interface_term}, {"positive", m.positive}});
    }
    for (double c : cfg.mp.rejected_centers) {
        Json r{{"center", c}, {"width", cfg.mp.width}};
        try {
            const MountainPassCertificate m = mountain_pass_certificate(ring_profile(g, c, cfg.mp.width), p);
            r["rejected"] = false;
            r["volume_term"] = m.volume_term;
            r["interface_term"] = m.interface_term;
        } catch (const InvalidInput& e) {
            r["rejected"] = true;
            r["reason"] = e.what();
        }
        rejected.push_back(r);
    }
    Json j{{"command", "mp-check"}, {"grid", grid_json(g)}, {"physics", physics_json(p)}, {"mu2", p.mu2()},
           {"profiles", profiles}, {"all_positive", all_positive}, {"inadmissible", rejected}};
    out.write_json("mp.json", j);
    return j;
}

}  // namespace

SampledField make_source(const RunConfig& cfg) {
    if (!cfg.source.input.empty()) return read_hlzf(cfg.source.input);
    const auto& s = cfg.source;
    const double w2 = s.width * s.width;
    return sample(cfg.grid.spec(), [&](const std::vector<double>& x) {
        double v = 0.0;
        for (std::size_t i = 0; i < s.centers.size(); ++i) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < x.size(); ++a) r2 += (x[a] - s.centers[i][a]) * (x[a] - s.centers[i][a]);
            v += s.amplitudes[i] * std::exp(-r2 / w2);
        }
        return cplx(v);
    });
}

SampledField ring_profile(const GridSpec& g, double center, double width) {
    const SampledField W = sample_frequency(g, [&](const std::vector<double>& xi) {
        double r2 = 0.0;
        for (double v : xi) r2 += v * v;
        const double t = (std::sqrt(r2) - center) / width;
        return cplx(std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0);
    });
    return dft(W, Direction::inverse);
}

Json run_pipeline(const RunConfig& cfg, OutputDir& out) {
    switch (cfg.command) {
        case Command::solve: return solve(cfg, out);
        case Command::decompose: return decompose(cfg, out);
        case Command::kernel: return kernel(cfg, out);
        case Command::scaling: return scaling(cfg, out);
        case Command::counterexample: return counterexample(cfg, out);
        case Command::regions: return regions(cfg, out);
        case Command::mp_check: return mp_check(cfg, out);
    }
    return {};
}

}  // namespace helmlab::cli
