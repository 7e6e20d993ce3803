#pragma once

#include <vector>

#include "mcflab/grid.hpp"

namespace mcflab {

// Pointwise geometry of the rotationally symmetric graph. Curvature sign
// convention: H > 0 where the surface opens upward (paraboloid bowls have
// H > 0 with the downward normal).
struct GeometrySample {
    std::vector<double> du;
    std::vector<double> d2u;
    std::vector<double> W;       // 1/sqrt(1+u'^2)
    std::vector<double> H;       // kappa1 + (n-1)*kappa2
    std::vector<double> kappa1;  // u''/(1+u'^2)^{3/2}
    std::vector<double> kappa2;  // u'/(r*sqrt(1+u'^2)); kappa2(0) = kappa1(0)
    std::vector<double> A2;      // kappa1^2 + (n-1)*kappa2^2
};

// Second-order stencils throughout: centered interior, even extension at
// r = 0 (df[0] = 0, d2f[0] = 2(f[1]-f[0])/h^2), one-sided 3/4-point at the
// outer node. Exact on quadratics.
void radial_derivatives(const RadialGrid& grid, const std::vector<double>& f,
                        std::vector<double>& df, std::vector<double>& d2f);

GeometrySample geometry_at(const GraphProfile& profile);

// Laplace-Beltrami of a radial scalar on the graph:
//   Df = f''/(1+u'^2) + [(n-1)/(r(1+u'^2)) - u'u''/(1+u'^2)^2] f',
// with the axis closure Df(0) = n f''(0)/(1+u'(0)^2) = n f''(0).
// Satisfies D(u) = H*W identically.
std::vector<double> laplace_beltrami_radial(const GraphProfile& profile,
                                            const std::vector<double>& f);

// d/ds f = W * d/dr f along the meridian.
std::vector<double> arc_length_derivative(const GraphProfile& profile,
                                          const std::vector<double>& f);

} // namespace mcflab
