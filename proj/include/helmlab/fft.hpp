#pragma once
#include "helmlab/grid.hpp"

namespace helmlab {

enum class Direction { forward, inverse };

// Trapezoidal Fourier transform with the symmetric (2 pi)^{-d/2} convention.
// Forward maps physical samples to the dual grid xi_m = (m - N/2) pi / L.
SampledField dft(const SampledField& field, Direction dir);

// Transform only along the first `naxes` axes, in place on raw row-major data.
// Used for the lateral (n-1)-dimensional transforms of the step solver.
void dft_leading_axes(const GridSpec& g, int naxes, CVec& data, Direction dir);

// Transform along axes [first, last) of row-major data on grid g.
void dft_axis_range(const GridSpec& g, int first, int last, CVec& data, Direction dir);

// Plain transform of a contiguous block with the given shape (all axes).
void dft_block(const std::vector<std::size_t>& shape, const std::vector<double>& half_width,
               cplx* data, Direction dir);

}  // namespace helmlab
