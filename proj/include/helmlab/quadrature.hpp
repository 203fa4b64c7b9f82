#pragma once
#include <functional>
#include <vector>
#include "helmlab/grid.hpp"

namespace helmlab {

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 60;
    double graded_mesh_ratio = 0.5;
    void validate() const;
};

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int n);

// Integral of phi(rho) rho^{-delta} over (0, 1].
cplx singular_quad(const std::function<cplx(double)>& phi, double delta, const QuadratureSpec& spec = {});

// Adaptive Gauss integral of a smooth function over [lo, hi].
cplx adaptive_quad(const std::function<cplx(double)>& fn, double lo, double hi, const QuadratureSpec& spec = {});

// Integral of g over the sphere of radius mu in R^d, d in {2, 3}.
cplx sphere_quad(const std::function<cplx(const double*)>& g, double mu, int d, int n_nodes);

// Nodes and weights of the sphere rule (dsigma included), for callers that
// batch the evaluation themselves.
struct SphereRule {
    int d = 2;
    std::vector<double> nodes;  // d coordinates per node
    std::vector<double> weights;
    std::size_t count() const { return weights.size(); }
};
SphereRule sphere_rule(double mu, int d, int n_nodes);

}  // namespace helmlab
