#pragma once

#include "mcflab/grid.hpp"

#include <string>
#include <vector>

namespace mcflab {

enum class SolitonKind { translator, expander };

std::string to_string(SolitonKind k);

struct SolitonProfile {
    SolitonKind kind = SolitonKind::translator;
    double parameter = 1.0;  // speed N or expander constant c
    int n = 2;
    GraphProfile profile;
    std::vector<double> slope;       // u' carried by the integrator
    double residual_max = 0.0;       // certified ODE residual (6th-order FD)
    // Translator: mean of u'(r)(n-1)/(N r) over the outer quarter of the
    // domain (tends to 1 as r_max grows). Expander: u'(r_max)/b.
    double asymptotic_slope_ratio = 0.0;
};

// Bowl translator: u'' = (1+u'^2)(N - (n-1)u'/r), u(0) = u'(0) = 0,
// u''(0) = N/n. RK4 on the (u,u') system with a series start
// u = A r^2 + B r^4, A = N/(2n), B = 2A^3/(n+2). Throws CheckFailure when
// the certified residual exceeds cert_tol.
SolitonProfile translator_profile(double N, int n, double r_max, double h,
                                  double cert_tol = 1e-6);

// Expander asymptotic to the cone u = b r: u'' = (1+u'^2)(c(u - r u') -
// (n-1)u'/r), shooting on u(0) by bisection until u'(r_max) = b within 1e-3.
// Non-finite integrations count as overshoot.
SolitonProfile expander_profile(double c, int n, double b, double r_max, double h,
                                double cert_tol = 1e-6);

// Residuals of an arbitrary stored profile against the soliton equations,
// using the standard second-order stencils: max node of
// |u''/(1+u'^2) + (n-1)u'/r - N| and |... - c(u - r u')|.
double translation_residual(const GraphProfile& profile, double N);
double expander_residual(const GraphProfile& profile, double c);

} // namespace mcflab
