#pragma once
#include <functional>
#include <iosfwd>
#include <vector>

#include "helmlab/grid.hpp"

namespace helmlab {

enum class Smoothness { continuous, C1 };

// Annulus A = {a <= |xi| <= b} in R^d (d = 1 or 2) carrying the weight
// (|xi|^2 - a^2)^{-alpha} e^{-lambda sqrt(|xi|^2 - a^2)} m(|xi|).
// The smoothness tag is informational; m is never differentiated.
struct MultiplierSpec {
    int d = 1;
    double a = 1.0;
    double b = 2.0;
    double alpha = 0.0;
    cplx s = 0.0;  // exponent of the analytic family, read by apply_T_family only
    double lambda = 0.0;
    std::function<cplx(double)> symbol;  // empty means m = 1
    Smoothness smoothness = Smoothness::C1;

    void validate() const;
    cplx m(double r) const { return symbol ? symbol(r) : cplx(1.0); }
    double damping(double r) const;
};

// Lanczos approximation (g = 7, nine terms) with reflection for Re z < 1/2.
cplx lanczos_gamma(cplx z);

// e^{(1-s)^2} / Gamma(1-s)
cplx family_prefactor(cplx s);

// Periodic FFT realization of T_{lambda,alpha}. Nodes with |xi| - a < 2 dxi
// carry the radial cell average of the singular weight.
SampledField apply_T(const MultiplierSpec& spec, const SampledField& h);

// Same with weight (|xi|^2 - a^2)^{-s} and the family prefactor.
SampledField apply_T_family(const MultiplierSpec& spec, const SampledField& h);

// The multiplier (including the collar average) on the dual grid of g.
CVec multiplier_on_grid(const MultiplierSpec& spec, const GridSpec& g, cplx s);

// Non-periodic evaluation for d = 1: the exact transform of the samples is
// integrated against the weight with graded Gauss panels, then evaluated at x.
CVec apply_T_direct(const MultiplierSpec& spec, const SampledField& h, const std::vector<double>& x);

// Values on the dual-grid nodes that lie in A.
struct AnnulusSamples {
    GridSpec grid;
    std::vector<std::size_t> index;
    CVec values;
    double cell = 0.0;  // dual cell volume

    // Riemann-sum L^s(A) norm; s = inf gives the max.
    double norm(double s) const;
};

AnnulusSamples annulus_nodes(const MultiplierSpec& spec, const GridSpec& g);
cplx inner(const AnnulusSamples& f, const AnnulusSamples& g);

AnnulusSamples apply_S(const MultiplierSpec& spec, const SampledField& h);
SampledField apply_S_adjoint(const MultiplierSpec& spec, const AnnulusSamples& g);

// Nodes and weights with sum w_k g(x_k) ~ int_lo^hi (x - edge)^{-delta} g(x) dx
// for smooth g, fine enough for factors e^{ixz} with |z| <= zmax.
struct OscRule {
    std::vector<double> x;
    std::vector<double> w;
};
OscRule graded_rule(double lo, double hi, double edge, double delta, double zmax);

// K_lambda(z) = (2 pi)^{-d} int_A e^{i xi . z} weight; radial profile for d = 2.
cplx kernel_K(const MultiplierSpec& spec, double z);

struct KernelProfile {
    std::vector<double> z;
    CVec K;
    std::vector<bool> envelope;  // local maxima of |K|
};
KernelProfile kernel_profile(const MultiplierSpec& spec, const std::vector<double>& z);
void write_kernel_csv(const KernelProfile& p, std::ostream& os);

// Log-log fit of windowed maxima of |f| at log-spaced z in [z_lo, z_hi].
struct EnvelopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> z;
    std::vector<double> peak;
};
using BatchEval = std::function<CVec(const std::vector<double>&)>;
EnvelopeFit envelope_fit(const BatchEval& f, double z_lo, double z_hi, int windows = 40, double window = 6.283185307179586,
                         int samples = 64);

// int_0^inf e^{i rho} rho^{-delta} d rho, cached per delta.
cplx C_delta(double delta);

// int_0^x t^{-delta} e^{it} dt for x >= 0.
cplx incomplete_C(double delta, double x);

struct OscAsymptotics {
    cplx integral;
    cplx leading;
    double remainder = 0.0;
};
OscAsymptotics osc_asymptotics(const std::function<cplx(double)>& a, double delta, double c);

// Counterexample families on the annulus [1, 2] with m = 1 and lambda = 0.
enum class CounterexampleFamily { beta, eps, log };

struct CounterexampleId {
    CounterexampleFamily family = CounterexampleFamily::beta;
    double beta = 0.0;
    double eps = 0.0;
    long k = 1;
    double alpha = 0.0;

    void validate() const;
};

// max{1 - alpha - 1/q, 0} < beta < 1 - 1/p
bool beta_in_window(double alpha, double p, double q, double beta);

SampledField make_counterexample(const CounterexampleId& id, const GridSpec& g);

// T_{0,alpha} applied to the family member, computed from its exact spectrum.
CVec counterexample_response(const CounterexampleId& id, double alpha, const std::vector<double>& x);

// |mu| / (4 pi) with mu = 2^{-alpha} int_0^inf e^{-i rho} rho^{-alpha} d rho.
double log_family_constant(double alpha);

}  // namespace helmlab
