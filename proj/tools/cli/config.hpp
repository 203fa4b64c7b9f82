#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmlab/annulus.hpp"
#include "helmlab/grid.hpp"
#include "helmlab/normlab.hpp"
#include "helmlab/step.hpp"

namespace helmlab::cli {

enum class Command { solve, decompose, kernel, scaling, counterexample, regions, mp_check };

Command parse_command(const std::string& s);
std::string command_name(Command c);

// Bad or unknown configuration; `key` is the dotted path when one applies.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& key, const std::string& what) : std::runtime_error(what), key(key) {}
    std::string key;
};

struct GridParams {
    int ndim = 2;
    std::vector<std::size_t> points{256, 256};
    std::vector<double> half_width{8.0, 8.0};
    GridSpec spec() const { return GridSpec(points, half_width); }
};

// Sum of Gaussians a exp(-|x - c|^2 / w^2), or an HLZF file.
struct SourceParams {
    std::string input;  // HLZF path; empty means the Gaussian source
    std::vector<std::vector<double>> centers{{0.0, 2.0}, {-1.0, -2.0}};
    std::vector<double> amplitudes{1.0, 0.7};
    double width = 0.70710678118654752;
};

struct SolveParams {
    Branch branch = Branch::outgoing;
    SolveOptions options;
};

struct MultiplierParams {
    int d = 1;
    double a = 1.0;
    double b = 2.0;
    double alpha = 0.0;
    double lambda = 0.0;
    std::string symbol = "one";  // one | bump
    MultiplierSpec spec() const;
};

struct KernelParams {
    double z_min = 0.0;
    double z_max = 50.0;
    int samples = 501;
    bool envelope = true;
    double z_lo = 100.0;
    double z_hi = 10000.0;
    int windows = 40;
};

struct ScalingParams {
    Rational inv_p{3, 4};
    Rational inv_q{1, 4};
    std::vector<double> lambdas{1, 2, 4, 8, 16, 32, 64, 128};
    int budget = 16;
    std::vector<TestFamily> families{TestFamily::gaussian, TestFamily::wave_packet};
};

struct CounterexampleParams {
    CounterexampleFamily family = CounterexampleFamily::log;
    double alpha = 0.5;
    double beta = 0.35;
    std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<long> k{10, 100, 1000};
    double x_max = 1000.0;
    int samples = 201;
};

struct RegionParams {
    Region region = Region::D_tilde_n;
    int n = 3;
    Rational alpha{0};
    int max_den = 40;
    bool selfdual = false;
    bool restriction = false;
};

// Profiles with w^ a radial bump of the given width around each centre.
struct MpParams {
    std::vector<double> centers{3.5, 4.0, 5.0, 6.0, 7.0};
    double width = 0.4;
    std::vector<double> rejected_centers{2.0};
};

struct RunConfig {
    Command command = Command::solve;
    std::optional<std::string> config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    GridParams grid;
    FrequencyParams physics{5.0, 0.25, 1.0, 0.0};
    SourceParams source;
    SolveParams solve;
    MultiplierParams multiplier;
    KernelParams kernel;
    ScalingParams scaling;
    CounterexampleParams counterexample;
    RegionParams regions;
    MpParams mp;
    std::string echo;  // normalized TOML of the loaded file, or empty

    void validate() const;
};

// Reads the TOML file into cfg; unknown keys and wrong types throw ConfigError.
void load_config(const std::string& path, RunConfig& cfg);

}  // namespace helmlab::cli
