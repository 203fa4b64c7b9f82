#pragma once
#include <limits>
#include "helmlab/grid.hpp"

namespace helmlab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Riemann-sum L^p norm with pairwise summation; p = inf gives max |v|.
double lp_norm(const SampledField& field, double p);

// Same norm with the dual cell volume, for frequency-side fields.
double lp_norm_frequency(const SampledField& field, double p);

// Discrete L^2 inner product <f, g> = sum f conj(g) * cell volume.
cplx inner(const SampledField& f, const SampledField& g);

// Relative 2-norm difference |a - b| / |b| on raw vectors.
double rel_l2(const CVec& a, const CVec& b);

}  // namespace helmlab
