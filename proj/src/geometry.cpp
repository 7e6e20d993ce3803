#include "mcflab/geometry.hpp"

#include <cmath>

#include "mcflab/errors.hpp"

namespace mcflab {

void radial_derivatives(const RadialGrid& grid, const std::vector<double>& f,
                        std::vector<double>& df, std::vector<double>& d2f) {
    const int m = grid.size();
    if (static_cast<int>(f.size()) != m)
        throw ConfigError("field size does not match grid");
    df.assign(m, 0.0);
    d2f.assign(m, 0.0);
    const double h = grid.h;
    const double h2 = h * h;

    // Axis: even extension f(-h) = f(h).
    df[0] = 0.0;
    d2f[0] = 2.0 * (f[1] - f[0]) / h2;

    for (int i = 1; i + 1 < m; ++i) {
        df[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        d2f[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    }

    // Outer node: one-sided stencils, exact on quadratics and cubics.
    const int k = m - 1;
    df[k] = (3.0 * f[k] - 4.0 * f[k - 1] + f[k - 2]) / (2.0 * h);
    d2f[k] = (2.0 * f[k] - 5.0 * f[k - 1] + 4.0 * f[k - 2] - f[k - 3]) / h2;
}

GeometrySample geometry_at(const GraphProfile& profile) {
    const RadialGrid& grid = profile.grid;
    const int m = grid.size();
    const int n = grid.n;
    GeometrySample g;
    radial_derivatives(grid, profile.u, g.du, g.d2u);
    g.W.resize(m);
    g.H.resize(m);
    g.kappa1.resize(m);
    g.kappa2.resize(m);
    g.A2.resize(m);
    for (int i = 0; i < m; ++i) {
        const double p = g.du[i];
        const double q = g.d2u[i];
        const double one_p2 = 1.0 + p * p;
        g.W[i] = 1.0 / std::sqrt(one_p2);
        g.kappa1[i] = q / (one_p2 * std::sqrt(one_p2));
        g.kappa2[i] = (i == 0) ? g.kappa1[0]
                               : p / (grid.r[i] * std::sqrt(one_p2));
        g.H[i] = g.kappa1[i] + static_cast<double>(n - 1) * g.kappa2[i];
        g.A2[i] = g.kappa1[i] * g.kappa1[i] +
                  static_cast<double>(n - 1) * g.kappa2[i] * g.kappa2[i];
    }
    return g;
}

std::vector<double> laplace_beltrami_radial(const GraphProfile& profile,
                                            const std::vector<double>& f) {
    const RadialGrid& grid = profile.grid;
    const int m = grid.size();
    std::vector<double> du, d2u, df, d2f;
    radial_derivatives(grid, profile.u, du, d2u);
    radial_derivatives(grid, f, df, d2f);
    std::vector<double> lap(m);
    const int n = grid.n;
    for (int i = 0; i < m; ++i) {
        const double p = du[i];
        const double one_p2 = 1.0 + p * p;
        if (i == 0) {
            // df(0) = 0 by symmetry; the (n-1)/r * f' term limits to
            // (n-1) f''(0), so the axis value is n f''(0)/(1+u'(0)^2).
            lap[0] = static_cast<double>(n) * d2f[0] / one_p2;
            continue;
        }
        lap[i] = d2f[i] / one_p2 +
                 (static_cast<double>(n - 1) / (grid.r[i] * one_p2) -
                  p * d2u[i] / (one_p2 * one_p2)) *
                     df[i];
    }
    return lap;
}

std::vector<double> arc_length_derivative(const GraphProfile& profile,
                                          const std::vector<double>& f) {
    const RadialGrid& grid = profile.grid;
    std::vector<double> du, d2u, df, d2f;
    radial_derivatives(grid, profile.u, du, d2u);
    radial_derivatives(grid, f, df, d2f);
    std::vector<double> ds(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        ds[i] = df[i] / std::sqrt(1.0 + du[i] * du[i]);
    return ds;
}

} // namespace mcflab
