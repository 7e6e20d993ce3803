#include "mcflab/grid.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mcflab/errors.hpp"

namespace mcflab {

RadialGrid make_grid(int n, double r_max, double h) {
    if (n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(n));
    if (!(h > 0.0) || !std::isfinite(h))
        throw ConfigError("h must be positive, got " + std::to_string(h));
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw ConfigError("r_max must be positive, got " + std::to_string(r_max));
    const double cells = r_max / h;
    const long m = std::lround(cells);
    if (std::abs(cells - static_cast<double>(m)) > 1e-9 * std::max(1.0, cells))
        throw ConfigError("r_max/h must be integral, got " + std::to_string(cells));
    const int size = static_cast<int>(m) + 1;
    if (size < 8)
        throw ConfigError("grid needs at least 8 nodes, got " + std::to_string(size));
    RadialGrid grid;
    grid.n = n;
    grid.h = h;
    grid.r.resize(size);
    for (int i = 0; i < size; ++i) grid.r[i] = h * static_cast<double>(i);
    return grid;
}

GraphProfile make_profile(const RadialGrid& grid, std::vector<double> u, double t) {
    if (static_cast<int>(u.size()) != grid.size())
        throw ConfigError("profile size " + std::to_string(u.size()) +
                          " does not match grid size " + std::to_string(grid.size()));
    GraphProfile p;
    p.grid = grid;
    p.u = std::move(u);
    p.t = t;
    return p;
}

std::vector<double> power_graph(const RadialGrid& grid, double alpha, double eps) {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be positive, got " + std::to_string(alpha));
    if (eps < 0.0) throw ConfigError("eps_smooth must be >= 0, got " + std::to_string(eps));
    std::vector<double> u(grid.r.size());
    const double shift = std::pow(eps, alpha);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = grid.r[i];
        u[i] = std::pow(r * r + eps * eps, 0.5 * alpha) - shift;
    }
    return u;
}

std::vector<double> plane_graph(const RadialGrid& grid, double height) {
    return std::vector<double>(grid.r.size(), height);
}

double default_eps_smooth(double alpha, double h) {
    if (alpha >= 2.0) return 0.0;
    if (alpha < 1.0) return 4.0 * h;
    return 2.0 * h;
}

} // namespace mcflab
