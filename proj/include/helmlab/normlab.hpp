#pragma once
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmlab/annulus.hpp"
#include "helmlab/grid.hpp"

namespace helmlab {

struct RationalOverflow : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// num/den in lowest terms with den > 0. Every operation is exact; a result
// that does not fit in 64 bits throws RationalOverflow.
class Rational {
public:
    Rational(std::int64_t n = 0, std::int64_t d = 1);
    // "3/4", "-2", "5"
    static Rational parse(const std::string& s);
    // Best approximation with denominator <= max_den (continued fractions).
    static Rational approximate(double x, std::int64_t max_den = 1000000);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    double to_double() const { return double(num_) / double(den_); }
    std::string str() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_;
    std::int64_t den_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// All fractions a/b in [0, 1] with b <= max_den, ascending.
std::vector<Rational> rationals_up_to(int max_den);

// Stored as (1/p, 1/q); q = inf is 1/q = 0.
struct ExponentPair {
    Rational inv_p;
    Rational inv_q;

    ExponentPair() = default;
    ExponentPair(Rational ip, Rational iq);
    double p() const;
    double q() const;
    Rational gap() const { return inv_p - inv_q; }
};

enum class Region { D_n, D_tilde_n, D_alpha_annulus, cal_D_alpha, largefreq_P38, smallfreq_P35 };

// n is the space dimension (d for the annulus regions). The restriction flag
// swaps p_*(n), q_*(n) for 2n/(n+1), 2n/(n-1) in D_tilde_n and smallfreq_P35.
struct RegionId {
    Region which = Region::D_n;
    int n = 2;
    Rational alpha = 0;
    bool restriction_conjecture = false;

    void validate() const;
};

Region parse_region(const std::string& name);
std::string region_name(Region r);

bool region_membership(const ExponentPair& pair, const RegionId& region);

// 1/p_*(n): 3/4 for n = 2, (n+4)/(2(n+2)) for n >= 3, (n+1)/(2n) under the conjecture.
Rational inv_p_star(int n, bool restriction_conjecture = false);

// Membership grid over rationals_up_to(max_den) on both axes: inv_p,inv_q,member.
void write_region_scan(const RegionId& region, int max_den, std::ostream& os);

double compute_beta(const Rational& inv_p, const Rational& inv_s, int d, const Rational& eps = Rational(1, 1000000),
                    bool restriction_conjecture = false);

enum class GammaCase { a, b, c, d1 };
std::string case_name(GammaCase c);

struct GammaPrediction {
    double gamma = 0.0;
    Rational exact;
    GammaCase regime = GammaCase::d1;
    double eps = 0.0;
    // Case (c) only: the two-branch closed form as printed, kept next to the
    // value rebuilt from the interpolation parameters.
    double printed = 0.0;
    std::string note;
};

// alpha is converted with Rational::approximate before the case tests.
GammaPrediction predicted_gamma(const ExponentPair& pair, int d, double alpha,
                                const Rational& eps = Rational(1, 1000000));

// gamma <= 2 alpha - 2 + 1/p - 1/q, strictly if p = 1 or q = inf.
bool gamma_bound_holds(const ExponentPair& pair, double alpha, const GammaPrediction& g);

// An operator on sampled fields. Exactly one of apply / apply_to_annulus is set.
// An empty adjoint means the operator is self-adjoint.
struct OperatorHandle {
    GridSpec grid;
    std::function<SampledField(const SampledField&)> apply;
    std::function<SampledField(const SampledField&)> adjoint;
    std::function<AnnulusSamples(const SampledField&)> apply_to_annulus;
    std::function<SampledField(const AnnulusSamples&)> annulus_adjoint;
    // T applied to a 1-d counterexample member, from its exact spectrum.
    std::function<CVec(const CounterexampleId&, const std::vector<double>&)> counterexample;
    double radius = 1.0;  // wave packets are centred near |xi| = radius
};

OperatorHandle multiplier_handle(const MultiplierSpec& spec, const GridSpec& g);
OperatorHandle restriction_handle(const MultiplierSpec& spec, const GridSpec& g);

enum class TestFamily { gaussian, wave_packet, counterexample };

struct FamilyId {
    TestFamily kind = TestFamily::gaussian;
    CounterexampleId member;  // counterexample only
    std::uint64_t seed = 0x5eed;
};

enum class NormMethod { test_family, power_iteration };

struct OperatorNormEstimate {
    double p = 2.0;
    double q = 2.0;
    double lower_bound = 0.0;
    NormMethod method = NormMethod::test_family;
    std::vector<std::string> witnesses;  // best input per family, then power iteration
};

// ||op h||_q / ||h||_p; throws InvalidInput when ||h||_p = 0.
double norm_ratio(const OperatorHandle& op, const SampledField& h, double p, double q);

// Each Gaussian / wave-packet family contributes its first `budget` members,
// a counterexample family its one member. p = q = 2 adds `budget` power steps.
OperatorNormEstimate estimate_norm_lower(const OperatorHandle& op, double p, double q,
                                         const std::vector<FamilyId>& families, int budget);

struct ScalingFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

// Least squares of log(norm) against log(1 + lambda).
ScalingFit fit_scaling_exponent(const std::vector<double>& lambdas, const std::vector<double>& norms);

struct SweepRow {
    double lambda = 0.0;
    double p = 2.0;
    double q = 2.0;
    double alpha = 0.0;
    double lower_bound = 0.0;
    double predicted_gamma = 0.0;
    double fitted_slope = 0.0;
    double stderr_ = 0.0;
};

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);

}  // namespace helmlab
