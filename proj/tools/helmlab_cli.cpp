#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cli/pipelines.hpp"
#include "helmlab/errors.hpp"
#include "helmlab/parallel.hpp"

using namespace helmlab;
using namespace helmlab::cli;

namespace {

std::string quoted(std::string s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

int fail(int code, const char* kind, const std::string& msg, const std::string& key = "") {
    std::cerr << "error: code=" << code << " kind=" << kind;
    if (!key.empty()) std::cerr << " key=" << key;
    std::cerr << " message=" << quoted(msg) << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz step-potential and annulus-multiplier experiments"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string config_path, out_dir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    auto* o_config = app.add_option("--config", config_path, "TOML configuration");
    auto* o_out = app.add_option("--out", out_dir, "output directory");
    auto* o_threads = app.add_option("--threads", threads, "worker threads (speed only)")->check(CLI::PositiveNumber);
    auto* o_seed = app.add_option("--seed", seed, "seed for randomized test families");

    std::string region;
    int n = 0, max_den = 0;
    std::string alpha;
    bool selfdual = false, restriction = false;
    for (const char* name : {"solve", "decompose", "kernel", "scaling", "counterexample", "mp-check"})
        app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    auto* reg = app.add_subcommand("regions", "scan an exponent region");
    auto* o_region = reg->add_option("--region", region, "D, D_tilde, D_alpha, cal_D_alpha, largefreq, smallfreq");
    auto* o_n = reg->add_option("--n", n, "dimension n (or d)");
    auto* o_alpha = reg->add_option("--alpha", alpha, "alpha as a rational, e.g. 1/4");
    auto* o_den = reg->add_option("--max-den", max_den, "largest denominator of the scan");
    auto* o_self = reg->add_flag("--selfdual", selfdual, "scan the line 1/p + 1/q = 1 only");
    auto* o_rc = reg->add_flag("--restriction", restriction, "use the conjectured restriction exponents");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    }

    RunConfig cfg;
    try {
        cfg.command = parse_command(app.get_subcommands().front()->get_name());
        if (*o_config) {
            if (!std::filesystem::exists(config_path)) throw IoError("config file '" + config_path + "' not found");
            cfg.config_path = config_path;
            load_config(config_path, cfg);
        }
        if (*o_out) cfg.out_dir = out_dir;
        if (*o_threads) cfg.threads = threads;
        if (*o_seed) cfg.seed = seed;
        if (*o_region) cfg.regions.region = parse_region(region);
        if (*o_n) cfg.regions.n = n;
        if (*o_alpha) cfg.regions.alpha = Rational::parse(alpha);
        if (*o_den) cfg.regions.max_den = max_den;
        if (*o_self) cfg.regions.selfdual = selfdual;
        if (*o_rc) cfg.regions.restriction = restriction;
        if (!cfg.source.input.empty() && !std::filesystem::exists(cfg.source.input))
            throw IoError("input field '" + cfg.source.input + "' not found");
        cfg.validate();
        set_thread_count(cfg.threads);
        OutputDir out(cfg.out_dir);
        const auto t0 = std::chrono::steady_clock::now();
        const Json diag = run_pipeline(cfg, out);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(out, cfg, wall, diag);
    } catch (const ConfigError& e) {
        return fail(2, "config", e.what(), e.key);
    } catch (const InvalidInput& e) {
        return fail(2, "config", e.what());
    } catch (const RationalOverflow& e) {
        return fail(2, "config", e.what());
    } catch (const AccuracyError& e) {
        return fail(3, "accuracy", std::string(e.what()) + " (last " + std::to_string(e.last_estimate) + ", previous " +
                                       std::to_string(e.previous_estimate) + ")");
    } catch (const SingularityError& e) {
        return fail(3, "accuracy", e.what());
    } catch (const IoError& e) {
        return fail(4, "io", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(4, "io", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
    return 0;
}
