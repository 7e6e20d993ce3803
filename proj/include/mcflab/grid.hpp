#pragma once

#include <vector>

namespace mcflab {

// Uniform radial grid for graphs over R^n. r[0] = 0 always; the axis node
// carries the symmetry closure u'(0) = 0.
struct RadialGrid {
    int n = 2;              // ambient dimension minus one, n >= 2
    double h = 0.0;
    std::vector<double> r;  // r[i] = i*h

    int size() const { return static_cast<int>(r.size()); }
    double r_max() const { return r.back(); }
};

// M = round(r_max/h) + 1 nodes; rejects M < 8 (stencils undefined) and n < 2.
RadialGrid make_grid(int n, double r_max, double h);

// Rotationally symmetric entire graph x_{n+1} = u(|y|) at flow time t.
struct GraphProfile {
    RadialGrid grid;
    std::vector<double> u;
    double t = 0.0;
};

GraphProfile make_profile(const RadialGrid& grid, std::vector<double> u, double t = 0.0);

// u(r) = (r^2 + eps^2)^{alpha/2} - eps^alpha; eps = 0 gives the raw power.
// The shift keeps u(0) = 0 so height comparisons stay meaningful.
std::vector<double> power_graph(const RadialGrid& grid, double alpha, double eps);

std::vector<double> plane_graph(const RadialGrid& grid, double height);

// Default mollification: powers below 2 have unbounded curvature at the
// origin. eps = 2h resolves 1 <= alpha < 2; alpha < 1 needs 4h to keep
// |A|^2 h^2 below the blowup threshold at t = 0.
double default_eps_smooth(double alpha, double h);

} // namespace mcflab
