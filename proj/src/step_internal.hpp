#pragma once
#include <functional>

#include "helmlab/step.hpp"

namespace helmlab::detail {

// Geometry shared by the step-potential routines: lateral axes first, y last.
struct Layout {
    explicit Layout(const GridSpec& grid);
    GridSpec g;
    GridSpec lat;
    int n = 2;
    std::size_t nx = 0;  // lateral node count
    std::size_t ny = 0;
    double hy = 0.0;
    double Ly = 0.0;
    std::vector<double> radius;  // |xi| per lateral dual node
    double y(std::size_t iy) const { return g.coord(n - 1, iy); }
    std::size_t iy0() const { return ny / 2; }
};

// Lateral transform of every y line: mixed (xi, y) representation.
CVec lateral_forward(const SampledField& f);

// g_+ and g_- from one mixed column (stride 1, length ny).
void traces_from_column(const Layout& lay, const cplx* col, cplx nu1, cplx nu2, cplx& gp, cplx& gm);

// Per-term window; returns the weight of term t (0..3) at lateral radius r.
using Window = std::function<double(int, double)>;

// Collar node in lateral frequency space.
struct CollarNode {
    double xi[2] = {0.0, 0.0};
    double r = 0.0;
    double weight = 0.0;
};

// Smooth partition of unity around the critical circles: chi = 1 on a neighbourhood of
// [mu1, mu2], 0 outside the band. Grid columns carry 1 - chi, collar nodes carry chi.
struct CollarSet {
    struct Band {
        double lo, mid, hi;
    };
    std::vector<double> radii;
    std::vector<CollarNode> nodes;
    std::vector<Band> bands;
    double chi(double r) const;
};

CollarSet make_collars(const Layout& lay, const FrequencyParams& params, const SolveOptions& opt);

CVec volume_mixed(const Layout& lay, const CVec& S, const FrequencyParams& params, double eps, bool image_correction);

CVec interface_mixed(const Layout& lay, const CVec& S, const FrequencyParams& params, const CollarSet* collars,
                     const Window& window);

// Physical-space contribution of the collar nodes at eps = 0.
CVec collar_physical(const Layout& lay, const SampledField& f, const FrequencyParams& params, const CollarSet& collars,
                     bool with_volume, bool with_interface, const Window& window);

}  // namespace helmlab::detail
