#include "cli/config.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "helmlab/errors.hpp"
#include "toml.hpp"

namespace helmlab::cli {

namespace {

std::string join(const std::string& prefix, std::string_view key) {
    return prefix.empty() ? std::string(key) : prefix + "." + std::string(key);
}

double as_double(const toml::node& n, const std::string& key) {
    if (auto v = n.as_floating_point()) return v->get();
    if (auto v = n.as_integer()) return double(v->get());
    throw ConfigError(key, "expected a number");
}

long as_int(const toml::node& n, const std::string& key) {
    if (auto v = n.as_integer()) return long(v->get());
    throw ConfigError(key, "expected an integer");
}

bool as_bool(const toml::node& n, const std::string& key) {
    if (auto v = n.as_boolean()) return v->get();
    throw ConfigError(key, "expected a boolean");
}

std::string as_string(const toml::node& n, const std::string& key) {
    if (auto v = n.as_string()) return v->get();
    throw ConfigError(key, "expected a string");
}

const toml::array& as_array(const toml::node& n, const std::string& key) {
    if (auto v = n.as_array()) return *v;
    throw ConfigError(key, "expected an array");
}

std::vector<double> as_doubles(const toml::node& n, const std::string& key) {
    std::vector<double> out;
    for (const auto& e : as_array(n, key)) out.push_back(as_double(e, key));
    return out;
}

// Scalar or array of numbers.
std::vector<double> scalar_or_doubles(const toml::node& n, const std::string& key) {
    if (n.is_array()) return as_doubles(n, key);
    return {as_double(n, key)};
}

// "3/4", an integer, or a decimal (best rational approximation).
Rational as_rational(const toml::node& n, const std::string& key) {
    try {
        if (auto s = n.as_string()) return Rational::parse(s->get());
        if (auto i = n.as_integer()) return Rational(i->get());
        if (auto f = n.as_floating_point()) return Rational::approximate(f->get());
    } catch (const InvalidInput& e) {
        throw ConfigError(key, e.what());
    }
    throw ConfigError(key, "expected a rational such as \"3/4\"");
}

using Handler = std::function<void(const toml::node&, const std::string&)>;

void walk(const toml::node& n, const std::string& prefix, const std::map<std::string, Handler>& schema) {
    const toml::table* t = n.as_table();
    if (!t) throw ConfigError(prefix, "expected a table");
    for (const auto& [k, v] : *t) {
        const std::string key = join(prefix, k.str());
        auto it = schema.find(std::string(k.str()));
        if (it == schema.end()) throw ConfigError(key, "unknown key '" + key + "'");
        it->second(v, key);
    }
}

TestFamily parse_family(const std::string& s, const std::string& key) {
    if (s == "gaussian") return TestFamily::gaussian;
    if (s == "wave_packet") return TestFamily::wave_packet;
    throw ConfigError(key, "unknown test family '" + s + "'");
}

}  // namespace

Command parse_command(const std::string& s) {
    if (s == "solve") return Command::solve;
    if (s == "decompose") return Command::decompose;
    if (s == "kernel") return Command::kernel;
    if (s == "scaling") return Command::scaling;
    if (s == "counterexample") return Command::counterexample;
    if (s == "regions") return Command::regions;
    if (s == "mp-check") return Command::mp_check;
    throw ConfigError("command", "unknown command '" + s + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::solve: return "solve";
        case Command::decompose: return "decompose";
        case Command::kernel: return "kernel";
        case Command::scaling: return "scaling";
        case Command::counterexample: return "counterexample";
        case Command::regions: return "regions";
        case Command::mp_check: return "mp-check";
    }
    return "?";
}

MultiplierSpec MultiplierParams::spec() const {
    MultiplierSpec s;
    s.d = d;
    s.a = a;
    s.b = b;
    s.alpha = alpha;
    s.lambda = lambda;
    if (symbol == "bump") {
        const double lo = a, hi = b;
        s.symbol = [lo, hi](double r) {
            const double t = (2.0 * r - lo - hi) / (hi - lo);
            return cplx(std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0);
        };
    }
    return s;
}

void load_config(const std::string& path, RunConfig& cfg) {
    toml::table root;
    try {
        root = toml::parse_file(path);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "TOML parse error at line " << e.source().begin.line << ": " << e.description();
        throw ConfigError("", os.str());
    }
    int grid_dims = -1;
    std::vector<double> grid_points, grid_width;

    const std::map<std::string, Handler> grid{
        {"ndim", [&](auto& n, auto& k) { grid_dims = int(as_int(n, k)); }},
        {"points", [&](auto& n, auto& k) { grid_points = scalar_or_doubles(n, k); }},
        {"half_width", [&](auto& n, auto& k) { grid_width = scalar_or_doubles(n, k); }},
    };
    auto& ph = cfg.physics;
    const std::map<std::string, Handler> physics{
        {"lambda", [&](auto& n, auto& k) { ph.lambda = as_double(n, k); }},
        {"eps", [&](auto& n, auto& k) { ph.eps = as_double(n, k); }},
        {"V1", [&](auto& n, auto& k) { ph.potential.V1 = as_double(n, k); }},
        {"V2", [&](auto& n, auto& k) { ph.potential.V2 = as_double(n, k); }},
    };
    auto& src = cfg.source;
    const std::map<std::string, Handler> source{
        {"input", [&](auto& n, auto& k) { src.input = as_string(n, k); }},
        {"width", [&](auto& n, auto& k) { src.width = as_double(n, k); }},
        {"amplitudes", [&](auto& n, auto& k) { src.amplitudes = as_doubles(n, k); }},
        {"centers",
         [&](auto& n, auto& k) {
             src.centers.clear();
             for (const auto& c : as_array(n, k)) src.centers.push_back(as_doubles(c, k));
         }},
    };
    auto& so = cfg.solve;
    const std::map<std::string, Handler> solve{
        {"branch",
         [&](auto& n, auto& k) {
             const std::string b = as_string(n, k);
             if (b == "outgoing") so.branch = Branch::outgoing;
             else if (b == "incoming") so.branch = Branch::incoming;
             else throw ConfigError(k, "branch must be outgoing or incoming");
         }},
        {"volume_limit",
         [&](auto& n, auto& k) {
             const std::string b = as_string(n, k);
             if (b == "direct") so.options.volume_limit = VolumeLimit::direct;
             else if (b == "richardson") so.options.volume_limit = VolumeLimit::richardson;
             else throw ConfigError(k, "volume_limit must be direct or richardson");
         }},
        {"ladder", [&](auto& n, auto& k) { so.options.ladder = int(as_int(n, k)); }},
        {"ladder_tol", [&](auto& n, auto& k) { so.options.ladder_tol = as_double(n, k); }},
        {"eps0", [&](auto& n, auto& k) { so.options.eps0 = as_double(n, k); }},
        {"collar_fraction", [&](auto& n, auto& k) { so.options.collar_fraction = as_double(n, k); }},
        {"image_correction", [&](auto& n, auto& k) { so.options.image_correction = as_bool(n, k); }},
    };
    auto& mu = cfg.multiplier;
    const std::map<std::string, Handler> multiplier{
        {"d", [&](auto& n, auto& k) { mu.d = int(as_int(n, k)); }},
        {"a", [&](auto& n, auto& k) { mu.a = as_double(n, k); }},
        {"b", [&](auto& n, auto& k) { mu.b = as_double(n, k); }},
        {"alpha", [&](auto& n, auto& k) { mu.alpha = as_double(n, k); }},
        {"lambda", [&](auto& n, auto& k) { mu.lambda = as_double(n, k); }},
        {"symbol",
         [&](auto& n, auto& k) {
             mu.symbol = as_string(n, k);
             if (mu.symbol != "one" && mu.symbol != "bump") throw ConfigError(k, "symbol must be one or bump");
         }},
    };
    auto& ke = cfg.kernel;
    const std::map<std::string, Handler> kernel{
        {"z_min", [&](auto& n, auto& k) { ke.z_min = as_double(n, k); }},
        {"z_max", [&](auto& n, auto& k) { ke.z_max = as_double(n, k); }},
        {"samples", [&](auto& n, auto& k) { ke.samples = int(as_int(n, k)); }},
        {"envelope", [&](auto& n, auto& k) { ke.envelope = as_bool(n, k); }},
        {"z_lo", [&](auto& n, auto& k) { ke.z_lo = as_double(n, k); }},
        {"z_hi", [&](auto& n, auto& k) { ke.z_hi = as_double(n, k); }},
        {"windows", [&](auto& n, auto& k) { ke.windows = int(as_int(n, k)); }},
    };
    auto& sc = cfg.scaling;
    const std::map<std::string, Handler> scaling{
        {"inv_p", [&](auto& n, auto& k) { sc.inv_p = as_rational(n, k); }},
        {"inv_q", [&](auto& n, auto& k) { sc.inv_q = as_rational(n, k); }},
        {"lambdas", [&](auto& n, auto& k) { sc.lambdas = as_doubles(n, k); }},
        {"budget", [&](auto& n, auto& k) { sc.budget = int(as_int(n, k)); }},
        {"families",
         [&](auto& n, auto& k) {
             sc.families.clear();
             for (const auto& f : as_array(n, k)) sc.families.push_back(parse_family(as_string(f, k), k));
         }},
    };
    auto& cx = cfg.counterexample;
    const std::map<std::string, Handler> counterexample{
        {"family",
         [&](auto& n, auto& k) {
             const std::string f = as_string(n, k);
             if (f == "beta") cx.family = CounterexampleFamily::beta;
             else if (f == "eps") cx.family = CounterexampleFamily::eps;
             else if (f == "log") cx.family = CounterexampleFamily::log;
             else throw ConfigError(k, "family must be beta, eps or log");
         }},
        {"alpha", [&](auto& n, auto& k) { cx.alpha = as_double(n, k); }},
        {"beta", [&](auto& n, auto& k) { cx.beta = as_double(n, k); }},
        {"eps", [&](auto& n, auto& k) { cx.eps = as_doubles(n, k); }},
        {"k",
         [&](auto& n, auto& k) {
             cx.k.clear();
             for (const auto& v : as_array(n, k)) cx.k.push_back(as_int(v, k));
         }},
        {"x_max", [&](auto& n, auto& k) { cx.x_max = as_double(n, k); }},
        {"samples", [&](auto& n, auto& k) { cx.samples = int(as_int(n, k)); }},
    };
    auto& rg = cfg.regions;
    const std::map<std::string, Handler> regions{
        {"region",
         [&](auto& n, auto& k) {
             try {
                 rg.region = parse_region(as_string(n, k));
             } catch (const InvalidInput& e) {
                 throw ConfigError(k, e.what());
             }
         }},
        {"n", [&](auto& n, auto& k) { rg.n = int(as_int(n, k)); }},
        {"alpha", [&](auto& n, auto& k) { rg.alpha = as_rational(n, k); }},
        {"max_den", [&](auto& n, auto& k) { rg.max_den = int(as_int(n, k)); }},
        {"selfdual", [&](auto& n, auto& k) { rg.selfdual = as_bool(n, k); }},
        {"restriction", [&](auto& n, auto& k) { rg.restriction = as_bool(n, k); }},
    };
    auto& mp = cfg.mp;
    const std::map<std::string, Handler> mpsec{
        {"centers", [&](auto& n, auto& k) { mp.centers = as_doubles(n, k); }},
        {"width", [&](auto& n, auto& k) { mp.width = as_double(n, k); }},
        {"rejected_centers", [&](auto& n, auto& k) { mp.rejected_centers = as_doubles(n, k); }},
    };

    const std::map<std::string, Handler> top{
        {"command",
         [&](auto& n, auto& k) {
             if (parse_command(as_string(n, k)) != cfg.command)
                 throw ConfigError(k, "config is for '" + as_string(n, k) + "', not '" + command_name(cfg.command) + "'");
         }},
        {"seed",
         [&](auto& n, auto& k) {
             const long s = as_int(n, k);
             if (s < 0) throw ConfigError(k, "seed must be nonnegative");
             cfg.seed = std::uint64_t(s);
         }},
        {"out", [&](auto& n, auto& k) { cfg.out_dir = as_string(n, k); }},
        {"grid", [&](auto& n, auto& k) { walk(n, k, grid); }},
        {"physics", [&](auto& n, auto& k) { walk(n, k, physics); }},
        {"source", [&](auto& n, auto& k) { walk(n, k, source); }},
        {"solve", [&](auto& n, auto& k) { walk(n, k, solve); }},
        {"multiplier", [&](auto& n, auto& k) { walk(n, k, multiplier); }},
        {"kernel", [&](auto& n, auto& k) { walk(n, k, kernel); }},
        {"scaling", [&](auto& n, auto& k) { walk(n, k, scaling); }},
        {"counterexample", [&](auto& n, auto& k) { walk(n, k, counterexample); }},
        {"regions", [&](auto& n, auto& k) { walk(n, k, regions); }},
        {"mp", [&](auto& n, auto& k) { walk(n, k, mpsec); }},
    };
    walk(root, "", top);

    if (grid_dims != -1 || !grid_points.empty() || !grid_width.empty()) {
        const int nd = grid_dims != -1 ? grid_dims : int(std::max(grid_points.size(), grid_width.size()));
        if (nd < 1 || nd > 3) throw ConfigError("grid.ndim", "ndim must be 1, 2 or 3");
        auto expand = [&](std::vector<double> v, double dflt, const char* key) {
            if (v.empty()) v = {dflt};
            if (v.size() == 1) v.assign(std::size_t(nd), v[0]);
            if (int(v.size()) != nd) throw ConfigError(key, "length does not match grid.ndim");
            return v;
        };
        const auto pts = expand(grid_points, double(cfg.grid.points[0]), "grid.points");
        cfg.grid.ndim = nd;
        cfg.grid.points.clear();
        for (double p : pts) {
            if (p < 1 || p != std::floor(p)) throw ConfigError("grid.points", "points must be positive integers");
            cfg.grid.points.push_back(std::size_t(p));
        }
        cfg.grid.half_width = expand(grid_width, cfg.grid.half_width[0], "grid.half_width");
    }
    std::ostringstream os;
    os << root;
    cfg.echo = os.str();
}

void RunConfig::validate() const {
    auto wrap = [](const char* key, auto&& fn) {
        try {
            fn();
        } catch (const InvalidInput& e) {
            throw ConfigError(key, e.what());
        }
    };
    if (threads < 1) throw ConfigError("threads", "threads must be >= 1");
    switch (command) {
        case Command::solve:
        case Command::decompose:
            wrap("grid", [&] { grid.spec().validate(); });
            wrap("physics", [&] { physics.validate(); });
            if (grid.ndim < 2) throw ConfigError("grid.ndim", "the step solver needs ndim 2 or 3");
            if (source.input.empty()) {
                if (source.centers.size() != source.amplitudes.size())
                    throw ConfigError("source.amplitudes", "one amplitude per centre expected");
                for (const auto& c : source.centers)
                    if (int(c.size()) != grid.ndim) throw ConfigError("source.centers", "centre length must equal grid.ndim");
                if (!(source.width > 0.0)) throw ConfigError("source.width", "width must be positive");
            }
            if (command == Command::decompose && physics.eps != 0.0)
                throw ConfigError("physics.eps", "decompose works at eps = 0");
            if (solve.options.ladder < 2) throw ConfigError("solve.ladder", "ladder must be >= 2");
            break;
        case Command::kernel:
            wrap("multiplier", [&] { multiplier.spec().validate(); });
            if (kernel.samples < 1 || !(kernel.z_max >= kernel.z_min)) throw ConfigError("kernel", "bad z range");
            if (kernel.envelope && (!(kernel.z_lo > 0.0) || !(kernel.z_hi > kernel.z_lo) || kernel.windows < 2))
                throw ConfigError("kernel", "bad envelope window layout");
            break;
        case Command::scaling: {
            wrap("multiplier", [&] { multiplier.spec().validate(); });
            wrap("grid", [&] { grid.spec().validate(); });
            if (grid.ndim != multiplier.d) throw ConfigError("grid.ndim", "grid.ndim must equal multiplier.d");
            wrap("scaling", [&] { ExponentPair(scaling.inv_p, scaling.inv_q); });
            if (scaling.lambdas.size() < 4) throw ConfigError("scaling.lambdas", "need at least 4 lambdas");
            for (double l : scaling.lambdas)
                if (!(l > 0.0)) throw ConfigError("scaling.lambdas", "lambdas must be positive");
            if (scaling.budget < 1) throw ConfigError("scaling.budget", "budget must be >= 1");
            if (scaling.families.empty()) throw ConfigError("scaling.families", "no test family given");
            break;
        }
        case Command::counterexample:
            if (!(counterexample.alpha >= 0.0 && counterexample.alpha < 1.0))
                throw ConfigError("counterexample.alpha", "alpha must lie in [0, 1)");
            if (counterexample.samples < 2 || !(counterexample.x_max > 0.0))
                throw ConfigError("counterexample", "bad x layout");
            if (counterexample.family == CounterexampleFamily::log && counterexample.k.empty())
                throw ConfigError("counterexample.k", "no k given");
            if (counterexample.family == CounterexampleFamily::eps && counterexample.eps.empty())
                throw ConfigError("counterexample.eps", "no eps given");
            break;
        case Command::regions:
            wrap("regions", [&] { RegionId{regions.region, regions.n, regions.alpha, regions.restriction}.validate(); });
            if (regions.max_den < 1 || regions.max_den > 1000) throw ConfigError("regions.max_den", "max_den must lie in [1, 1000]");
            break;
        case Command::mp_check:
            wrap("grid", [&] { grid.spec().validate(); });
            wrap("physics", [&] { physics.validate(); });
            if (grid.ndim < 1 || grid.ndim > 2) throw ConfigError("grid.ndim", "profiles live on 1- or 2-dimensional grids");
            if (!(mp.width > 0.0)) throw ConfigError("mp.width", "width must be positive");
            break;
    }
}

}  // namespace helmlab::cli
