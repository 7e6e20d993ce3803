#include "mcflab/solitons.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "mcflab/errors.hpp"
#include "mcflab/geometry.hpp"

namespace mcflab {

std::string to_string(SolitonKind k) {
    return k == SolitonKind::translator ? "translator" : "expander";
}

namespace {

struct Ode {
    // dp/dr = (1+p^2) * force(r, u, p); du/dr = p.
    SolitonKind kind;
    double par = 1.0;  // N or c
    int n = 2;

    double force(double r, double u, double p) const {
        const double drag = static_cast<double>(n - 1) * p / r;
        if (kind == SolitonKind::translator) return par - drag;
        return par * (u - r * p) - drag;
    }
};

void series_at(const Ode& ode, double u0, double r, double& u, double& p) {
    double A, B;
    if (ode.kind == SolitonKind::translator) {
        A = ode.par / (2.0 * ode.n);
        B = 2.0 * A * A * A / (ode.n + 2.0);
    } else {
        A = ode.par * u0 / (2.0 * ode.n);
        B = (8.0 * A * A * A - ode.par * A) / (4.0 * (ode.n + 2.0));
    }
    u = u0 + A * r * r + B * r * r * r * r;
    p = 2.0 * A * r + 4.0 * B * r * r * r;
}

// RK4 on (u, p) from node 1 outward; the first cell comes from the series,
// which keeps every force evaluation away from r = 0.
void integrate(const Ode& ode, double u0, const RadialGrid& grid, int nsub,
               std::vector<double>& u, std::vector<double>& p) {
    const int m = grid.size();
    u.assign(m, 0.0);
    p.assign(m, 0.0);
    u[0] = u0;
    series_at(ode, u0, grid.h, u[1], p[1]);
    const double hs = grid.h / nsub;
    for (int i = 1; i + 1 < m; ++i) {
        double uu = u[i], pp = p[i], rr = grid.r[i];
        for (int s = 0; s < nsub; ++s) {
            const double k1u = pp;
            const double k1p = (1.0 + pp * pp) * ode.force(rr, uu, pp);
            double u2 = uu + 0.5 * hs * k1u, p2 = pp + 0.5 * hs * k1p;
            const double k2u = p2;
            const double k2p = (1.0 + p2 * p2) * ode.force(rr + 0.5 * hs, u2, p2);
            double u3 = uu + 0.5 * hs * k2u, p3 = pp + 0.5 * hs * k2p;
            const double k3u = p3;
            const double k3p = (1.0 + p3 * p3) * ode.force(rr + 0.5 * hs, u3, p3);
            double u4 = uu + hs * k3u, p4 = pp + hs * k3p;
            const double k4u = p4;
            const double k4p = (1.0 + p4 * p4) * ode.force(rr + hs, u4, p4);
            uu += hs / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            pp += hs / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            rr += hs;
        }
        u[i + 1] = uu;
        p[i + 1] = pp;
    }
}

// Certified residual: compare a 6th-order centered derivative of the stored
// slope against the ODE right-hand side, max over the inner 90% of nodes.
// The integrator's own error is far below this stencil's truncation, so the
// check is independent of the marching scheme.
double certify(const Ode& ode, const RadialGrid& grid, const std::vector<double>& u,
               const std::vector<double>& p) {
    const int m = grid.size();
    const double cutoff = 0.9 * grid.r_max();
    double worst = 0.0;
    for (int i = 3; i + 3 < m; ++i) {
        if (grid.r[i] > cutoff) break;
        const double dp = (-p[i - 3] + 9.0 * p[i - 2] - 45.0 * p[i - 1] +
                           45.0 * p[i + 1] - 9.0 * p[i + 2] + p[i + 3]) /
                          (60.0 * grid.h);
        const double f = (1.0 + p[i] * p[i]) * ode.force(grid.r[i], u[i], p[i]);
        worst = std::max(worst, std::abs(dp - f));
    }
    return worst;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

constexpr int kSubsteps = 8;

} // namespace

SolitonProfile translator_profile(double N, int n, double r_max, double h,
                                  double cert_tol) {
    if (!(N > 0.0)) throw ConfigError("translator speed N must be positive");
    RadialGrid grid = make_grid(n, r_max, h);
    Ode ode{SolitonKind::translator, N, n};
    std::vector<double> u, p;
    integrate(ode, 0.0, grid, kSubsteps, u, p);
    if (!all_finite(u) || !all_finite(p))
        throw NumericalError("translator integration left the finite range");

    SolitonProfile out;
    out.kind = SolitonKind::translator;
    out.parameter = N;
    out.n = n;
    out.slope = p;
    out.residual_max = certify(ode, grid, u, p);
    // Far-field slope against the quadratic bowl N r / (n-1), averaged over
    // the outer quarter where the log correction has mostly decayed.
    double ratio_sum = 0.0;
    int ratio_count = 0;
    for (int i = 0; i < grid.size(); ++i) {
        if (grid.r[i] < 0.75 * r_max) continue;
        ratio_sum += p[i] * (n - 1) / (N * grid.r[i]);
        ++ratio_count;
    }
    out.asymptotic_slope_ratio = ratio_sum / ratio_count;
    out.profile = make_profile(grid, std::move(u));
    if (out.residual_max > cert_tol)
        throw CheckFailure("translator residual " + std::to_string(out.residual_max) +
                           " exceeds " + std::to_string(cert_tol));
    return out;
}

SolitonProfile expander_profile(double c, int n, double b, double r_max, double h,
                                double cert_tol) {
    if (!(c > 0.0)) throw ConfigError("expander constant c must be positive");
    if (!(b > 0.0)) throw ConfigError("expander asymptotic slope must be positive");
    RadialGrid grid = make_grid(n, r_max, h);
    Ode ode{SolitonKind::expander, c, n};

    // Shooting on the axis height. Profiles that leave the finite range
    // before r_max overshoot the target slope.
    auto outer_slope = [&](double u0, std::vector<double>& u, std::vector<double>& p) {
        integrate(ode, u0, grid, kSubsteps, u, p);
        if (!all_finite(u) || !all_finite(p))
            return std::numeric_limits<double>::infinity();
        return p.back();
    };

    std::vector<double> u, p;
    double lo = 1e-3 / c, hi = 1e3 / c;
    const double flo = outer_slope(lo, u, p) - b;
    const double fhi = outer_slope(hi, u, p) - b;
    if (!(flo < 0.0) || !(fhi > 0.0))
        throw NumericalError("expander shooting bracket does not straddle the target");
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (outer_slope(mid, u, p) - b < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double u0 = 0.5 * (lo + hi);
    const double miss = std::abs(outer_slope(u0, u, p) - b);
    if (!(miss <= 1e-3))
        throw NumericalError("expander shooting missed the asymptotic slope by " +
                             std::to_string(miss));

    SolitonProfile out;
    out.kind = SolitonKind::expander;
    out.parameter = c;
    out.n = n;
    out.slope = p;
    out.residual_max = certify(ode, grid, u, p);
    out.asymptotic_slope_ratio = p.back() / b;
    out.profile = make_profile(grid, std::move(u));
    if (out.residual_max > cert_tol)
        throw CheckFailure("expander residual " + std::to_string(out.residual_max) +
                           " exceeds " + std::to_string(cert_tol));
    return out;
}

namespace {

double stencil_residual(const GraphProfile& profile,
                        const std::function<double(int, double, double)>& target) {
    GeometrySample g = geometry_at(profile);
    const RadialGrid& grid = profile.grid;
    double worst = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        double v;
        if (i == 0) {
            v = static_cast<double>(grid.n) * g.d2u[0];
        } else {
            const double pp = g.du[i];
            v = g.d2u[i] / (1.0 + pp * pp) +
                static_cast<double>(grid.n - 1) * pp / grid.r[i];
        }
        worst = std::max(worst, std::abs(v - target(i, profile.u[i], g.du[i])));
    }
    return worst;
}

} // namespace

double translation_residual(const GraphProfile& profile, double N) {
    return stencil_residual(profile, [N](int, double, double) { return N; });
}

double expander_residual(const GraphProfile& profile, double c) {
    const std::vector<double>& r = profile.grid.r;
    return stencil_residual(profile, [c, &r](int i, double u, double p) {
        return c * (u - r[i] * p);
    });
}

} // namespace mcflab
