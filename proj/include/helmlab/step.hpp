#pragma once
#include <string>
#include <vector>

#include "helmlab/grid.hpp"

namespace helmlab {

// V = V1 on {y >= 0}, V2 on {y < 0}; y is the last grid axis.
struct StepPotential {
    double V1 = 0.0;
    double V2 = 0.0;
};

struct FrequencyParams {
    double lambda = 0.0;
    double eps = 0.0;
    StepPotential potential;

    FrequencyParams() = default;
    FrequencyParams(double lambda, double eps, double V1, double V2);
    double mu1() const;
    double mu2() const;
    double mu(int j) const { return j == 1 ? mu1() : mu2(); }
    bool constant_potential() const { return potential.V1 == potential.V2; }
    void validate() const;
};

cplx nu(double xi_norm, int j, const FrequencyParams& params);

// Interface symbol m_j with sign(y) supplied explicitly (sign_y = +1 or -1).
cplx interface_multiplier(double xi_norm, int j, int sign_y, const FrequencyParams& params);

// Same symbol from precomputed wavenumbers.
cplx multiplier_from_nu(int j, int sign_y, cplx nu1, cplx nu2);

enum class HalfSpace { plus, minus };

// Half-space indicator in the last coordinate; the y = 0 line gets 1/2.
double half_space_weight(const GridSpec& g, std::size_t iy, HalfSpace side);

SampledField one_sided_ft(const SampledField& f, HalfSpace side);

struct BoundaryTrace {
    GridSpec grid;  // lateral (n-1)-dimensional grid; values live on its dual grid
    CVec g_plus;
    CVec g_minus;
};

BoundaryTrace boundary_traces(const SampledField& f, const FrequencyParams& params);

struct InterfaceData {
    CVec trace0;  // lateral transform of u(., 0)
    CVec trace1;  // lateral transform of d_y u(., 0)
};

InterfaceData interface_data(const BoundaryTrace& traces, const FrequencyParams& params);

// How solve_lap reaches eps = 0 in the volume term.
enum class VolumeLimit {
    direct,      // outgoing 1-d Green's function per lateral frequency
    richardson,  // Neville extrapolation along the eps ladder
};

// Knobs for the discretization.
struct SolveOptions {
    bool image_correction = true;    // remove the periodic images of the volume term in y
    VolumeLimit volume_limit = VolumeLimit::direct;
    double eps0 = 0.5;               // first rung of the epsilon ladder (solve_lap)
    int ladder = 7;                  // rungs eps0 * 2^-k, k = 0 .. ladder-1
    double ladder_tol = 5e-2;        // accepted relative change of the last two diagonal entries
    double collar_fraction = 0.5;    // collar reaches from (1-f) mu1 to (1+f) mu2
    int collar_radial_nodes = 24;
    int collar_angular_nodes = 64;   // n = 3 only
};

struct SolveDiagnostics {
    std::vector<double> ladder_eps;
    std::vector<double> ladder_change;  // relative change of successive diagonal entries
    double extrapolation_error = 0.0;
    std::size_t collar_nodes = 0;
    double shell_ratio = 0.0;
    bool shell_warning = false;
};

SampledField solve_perturbed(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt = {},
                             SolveDiagnostics* diag = nullptr);

enum class Branch { outgoing, incoming };

SampledField solve_lap(const SampledField& f, const FrequencyParams& params, Branch branch = Branch::outgoing,
                       const SolveOptions& opt = {}, SolveDiagnostics* diag = nullptr);

// The two halves of the solution formula, exposed for cross-checks.
SampledField volume_term(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt = {},
                         SolveDiagnostics* diag = nullptr);
SampledField interface_term(const SampledField& f, const FrequencyParams& params, const SolveOptions& opt = {},
                            SolveDiagnostics* diag = nullptr);

struct FrequencyDecomposition {
    SampledField w, frak_w, frak_W, W_large;
    SampledField total() const;
};

FrequencyDecomposition frequency_decomposition(const SampledField& f, const FrequencyParams& params,
                                               const SolveOptions& opt = {});

// Block membership of term t (0: m1 g+, 1: m2 g-, 2: m3 g+, 3: m4 g-) at lateral radius r.
enum class Block { w = 0, frak_w = 1, frak_W = 2, W_large = 3 };
Block block_of(int term, double r, double mu1, double mu2);

double residual(const SampledField& u, const SampledField& f, const FrequencyParams& params);

SampledField herglotz(const SampledField& f, double mu, int n_nodes = 0);

struct MountainPassCertificate {
    double volume_term = 0.0;
    double interface_term = 0.0;
    bool positive = false;
};

MountainPassCertificate mountain_pass_certificate(const SampledField& w_profile, const FrequencyParams& params);

// Stability constants of the nu sandwich and the m2/m3 decay on a lateral grid.
struct SymbolConstants {
    double nu_lower = 0.0;  // min of |nu| sqrt(1 + |grad nu|^2) / (1 + |xi|)
    double nu_upper = 0.0;  // max of the same ratio
    double m23_decay = 0.0; // max of (|m2| + |m3|)(1 + |xi|)
};
SymbolConstants symbol_constants(const GridSpec& lateral, int j, const FrequencyParams& params);

}  // namespace helmlab
