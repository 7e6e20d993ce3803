#include "mcflab/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcflab/errors.hpp"

namespace mcflab {

std::string to_string(Hint h) {
    switch (h) {
        case Hint::type_iii: return "type_iii_consistent";
        case Hint::type_iib: return "type_iib_consistent";
        case Hint::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

double max_A2(const GeometrySample& g) {
    double m = 0.0;
    for (double a : g.A2) m = std::max(m, a);
    return m;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / k, my = sy / k;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

ClassifierReport type_classifier(const FlowTrajectory& traj, const MonitorConfig& cfg) {
    ClassifierReport rep;
    rep.T.name = "tA2";
    std::vector<double> ts, Ts;
    for (const FlowSample& s : traj.samples) {
        if (!(s.t > 0.0)) continue;
        const double T = s.t * max_A2(s.geo);
        rep.T.points.push_back({s.t, T});
        ts.push_back(s.t);
        Ts.push_back(T);
    }
    if (ts.size() < 10)
        throw ConfigError("type_classifier needs at least 10 samples with t > 0");

    const std::size_t k = ts.size();
    const std::size_t half = k / 2;
    rep.max_T = *std::max_element(Ts.begin(), Ts.end());
    rep.early_max_T = *std::max_element(Ts.begin(), Ts.begin() + half);

    if (rep.max_T <= 1e-12) {
        rep.hint = Hint::type_iii;
        rep.loglog_slope = 0.0;
        return rep;
    }

    std::vector<double> lx, ly;
    for (std::size_t i = half; i < k; ++i) {
        if (Ts[i] <= 0.0) continue;
        lx.push_back(std::log(ts[i]));
        ly.push_back(std::log(Ts[i]));
    }
    if (lx.size() < 2) {
        rep.hint = Hint::inconclusive;
        return rep;
    }
    rep.loglog_slope = ls_slope(lx, ly);

    const bool bounded = rep.max_T <= cfg.bound_factor * rep.early_max_T;
    if (rep.loglog_slope <= cfg.slope_type_iii && bounded)
        rep.hint = Hint::type_iii;
    else if (rep.loglog_slope >= cfg.slope_type_iib)
        rep.hint = Hint::type_iib;
    else
        rep.hint = Hint::inconclusive;
    return rep;
}

PinchingReport pinching_check(const FlowTrajectory& traj, const MonitorConfig& cfg) {
    PinchingReport rep;
    rep.margin_lower.name = "pinch_lower";
    rep.margin_upper.name = "pinch_upper";
    rep.margin_growth.name = "pinch_growth";
    const double ex = 0.5 * (1.0 - cfg.epsilon);
    for (const FlowSample& s : traj.samples) {
        double m1 = std::numeric_limits<double>::infinity();
        double m2 = m1, m3 = m1;
        const int m = s.profile.grid.size();
        for (int i = 0; i < m; ++i) {
            const double W = s.geo.W[i];
            const double H = s.geo.H[i];
            if (H <= 0.0) ++rep.nonpositive_H_nodes;
            const double r = s.profile.grid.r[i];
            const double u = s.profile.u[i];
            const double x2 = r * r + u * u;
            m1 = std::min(m1, W - cfg.C1 * H);
            m2 = std::min(m2, cfg.C2 * H - W);
            m3 = std::min(m3, cfg.C * std::pow(1.0 + x2, ex) * H - std::abs(W));
        }
        rep.margin_lower.points.push_back({s.t, m1});
        rep.margin_upper.points.push_back({s.t, m2});
        rep.margin_growth.points.push_back({s.t, m3});
    }
    const Series* all[3] = {&rep.margin_lower, &rep.margin_upper, &rep.margin_growth};
    for (int q = 0; q < 3; ++q) {
        const std::vector<SeriesPoint>& pts = all[q]->points;
        if (pts.empty()) continue;
        const double base = pts.front().value;
        for (const SeriesPoint& p : pts)
            if (p.value < base - cfg.preserve_tol) rep.preserved[q] = false;
    }
    return rep;
}

Series w_evolution_residual(const FlowTrajectory& traj) {
    Series out;
    out.name = "w_residual";
    const std::size_t ns = traj.samples.size();
    for (std::size_t s = 1; s + 1 < ns; ++s) {
        const FlowSample& prev = traj.samples[s - 1];
        const FlowSample& cur = traj.samples[s];
        const FlowSample& next = traj.samples[s + 1];
        const double dt2 = next.t - prev.t;
        if (!(dt2 > 0.0)) throw NumericalError("sample times are not increasing");

        const int m = cur.profile.grid.size();
        const std::vector<double> lapW = laplace_beltrami_radial(cur.profile, cur.geo.W);
        const std::vector<double> ut = rhs(cur.profile, cur.geo);
        std::vector<double> dWr, d2Wr;
        radial_derivatives(cur.profile.grid, cur.geo.W, dWr, d2Wr);

        double worst = 0.0;
        for (int i = 0; i + 2 < m; ++i) {
            const double p = cur.geo.du[i];
            const double dW_graph = (next.geo.W[i] - prev.geo.W[i]) / dt2;
            const double dW_normal = dW_graph - (ut[i] * p / (1.0 + p * p)) * dWr[i];
            const double res = dW_normal - lapW[i] - cur.geo.A2[i] * cur.geo.W[i];
            worst = std::max(worst, std::abs(res));
        }
        out.points.push_back({cur.t, worst});
    }
    return out;
}

Series gradient_ratio(const FlowTrajectory& traj, int l, double kappa_floor) {
    if (l != 1 && l != 2) throw ConfigError("gradient_ratio supports l = 1 or 2");
    Series out;
    out.name = l == 1 ? "grad1_ratio" : "grad2_ratio";
    for (const FlowSample& s : traj.samples) {
        std::vector<double> g = arc_length_derivative(s.profile, s.geo.H);
        if (l == 2) g = arc_length_derivative(s.profile, g);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double H = s.geo.H[i];
            if (H <= kappa_floor) continue;
            double denom = H * H;
            if (l == 2) denom *= H;
            worst = std::max(worst, std::abs(g[i]) / denom);
        }
        out.points.push_back({s.t, worst});
    }
    return out;
}

MeridianShape meridian_from_profile(const GraphProfile& profile) {
    const GeometrySample g = geometry_at(profile);
    const int m = profile.grid.size();
    MeridianShape shape;
    shape.first_reflected = m;
    const int total = 2 * m - 1;
    shape.x.reserve(total);
    shape.z.reserve(total);
    shape.nx.reserve(total);
    shape.nz.reserve(total);
    shape.H.reserve(total);
    shape.kmax_pos.reserve(total);
    shape.kmax_neg.reserve(total);
    auto push = [&](double sign, int i) {
        const double s2 = std::sqrt(1.0 + g.du[i] * g.du[i]);
        shape.x.push_back(sign * profile.grid.r[i]);
        shape.z.push_back(profile.u[i]);
        shape.nx.push_back(sign * g.du[i] / s2);
        shape.nz.push_back(-1.0 / s2);
        shape.H.push_back(g.H[i]);
        const double kp = std::max({g.kappa1[i], g.kappa2[i], 0.0});
        const double kn = std::max({-g.kappa1[i], -g.kappa2[i], 0.0});
        shape.kmax_pos.push_back(kp);
        shape.kmax_neg.push_back(kn);
    };
    for (int i = 0; i < m; ++i) push(1.0, i);
    for (int i = 1; i < m; ++i) push(-1.0, i);
    return shape;
}

NoncollapseSample noncollapse_radii(const MeridianShape& shape) {
    const int total = static_cast<int>(shape.x.size());
    const int eval = shape.first_reflected > 0 ? shape.first_reflected : total;
    const double inf = std::numeric_limits<double>::infinity();

    NoncollapseSample out;
    out.r_int.assign(eval, inf);
    out.r_ext.assign(eval, inf);
    out.delta_in.assign(eval, inf);
    out.delta_ext.assign(eval, inf);
    out.global_min_delta = inf;

    for (int i = 0; i < eval; ++i) {
        double ri = inf, re = inf;
        for (int k = 0; k < total; ++k) {
            const double dx = shape.x[k] - shape.x[i];
            const double dz = shape.z[k] - shape.z[i];
            const double dist2 = dx * dx + dz * dz;
            // <X(x) - X(y), nu(x)> decides which side y lies on.
            const double inner = -(dx * shape.nx[i] + dz * shape.nz[i]);
            if (inner > 1e-14) ri = std::min(ri, dist2 / (2.0 * inner));
            if (inner < -1e-14) re = std::min(re, dist2 / (-2.0 * inner));
        }
        // Osculating limits: interior balls cannot exceed the tightest
        // positive curvature, exterior balls the tightest negative one.
        if (shape.kmax_pos[i] > 0.0) ri = std::min(ri, 1.0 / shape.kmax_pos[i]);
        if (shape.kmax_neg[i] > 0.0) re = std::min(re, 1.0 / shape.kmax_neg[i]);
        out.r_int[i] = ri;
        out.r_ext[i] = re;
        out.delta_in[i] = shape.H[i] * ri;
        out.delta_ext[i] = shape.H[i] * re;
        if (std::isinf(re)) out.ext_unbounded = true;
        out.global_min_delta = std::min(out.global_min_delta, out.delta_in[i]);
    }
    return out;
}

NoncollapseSample noncollapse_delta(const GraphProfile& profile) {
    const GeometrySample g = geometry_at(profile);
    for (std::size_t i = 0; i < g.H.size(); ++i)
        if (!(g.H[i] > 0.0))
            throw ConfigError("noncollapse_delta needs H > 0 at every node; node " +
                              std::to_string(i) + " has H = " + std::to_string(g.H[i]));
    return noncollapse_radii(meridian_from_profile(profile));
}

NoncollapseReport noncollapse_preservation(const FlowTrajectory& traj,
                                           const MonitorConfig& cfg) {
    NoncollapseReport rep;
    rep.min_delta.name = "min_delta_in";
    for (const FlowSample& s : traj.samples) {
        const NoncollapseSample nc = noncollapse_delta(s.profile);
        rep.min_delta.points.push_back({s.t, nc.global_min_delta});
        rep.any_ext_unbounded = rep.any_ext_unbounded || nc.ext_unbounded;
    }
    if (!rep.min_delta.points.empty()) {
        const double target = cfg.delta0 >= 0.0 ? cfg.delta0
                                                : rep.min_delta.points.front().value;
        for (const SeriesPoint& p : rep.min_delta.points)
            if (p.value < target - cfg.preserve_tol) rep.preserved = false;
    }
    return rep;
}

EHSample eh_conditions(const GraphProfile& profile, const MonitorConfig& cfg) {
    const GeometrySample g = geometry_at(profile);
    EHSample out;
    for (int i = 0; i < profile.grid.size(); ++i) {
        const double upsilon = 1.0 / g.W[i];
        if (upsilon > out.upsilon_max) {
            out.upsilon_max = upsilon;
            out.upsilon_argmax = i;
        }
        const double r = profile.grid.r[i];
        const double u = profile.u[i];
        const double xnu = (u - r * g.du[i]) * g.W[i];
        const double x2 = r * r + u * u;
        const double growth = xnu * xnu / std::pow(1.0 + x2, 1.0 - cfg.delta_growth);
        out.growth_max = std::max(out.growth_max, growth);
    }
    out.gradient_ok = out.upsilon_max <= cfg.c_linear;
    out.growth_ok = out.growth_max <= cfg.c_growth;
    return out;
}

EHReport eh_conditions(const FlowTrajectory& traj, const MonitorConfig& cfg) {
    EHReport rep;
    rep.gradient_bound.name = "upsilon_max";
    rep.growth_bound.name = "growth_max";
    for (const FlowSample& s : traj.samples) {
        const EHSample e = eh_conditions(s.profile, cfg);
        rep.gradient_bound.points.push_back({s.t, e.upsilon_max});
        rep.growth_bound.points.push_back({s.t, e.growth_max});
        rep.gradient_ok = rep.gradient_ok && e.gradient_ok;
        rep.growth_ok = rep.growth_ok && e.growth_ok;
    }
    return rep;
}

HalfspaceReport halfspace_check(const GraphProfile& profile, double omega_vertical) {
    HalfspaceReport rep;
    rep.inf_u = *std::min_element(profile.u.begin(), profile.u.end());
    rep.margin = std::abs(omega_vertical);
    rep.ok = std::isfinite(rep.inf_u) && rep.margin > 0.0;
    return rep;
}

ComparisonReport comparison_check(const FlowTrajectory& a, const FlowTrajectory& b) {
    if (a.samples.empty() || b.samples.empty())
        throw ConfigError("comparison_check needs non-empty trajectories");
    const RadialGrid& ga = a.samples[0].profile.grid;
    const RadialGrid& gb = b.samples[0].profile.grid;
    if (ga.n != gb.n || ga.size() != gb.size() || std::abs(ga.h - gb.h) > 1e-15)
        throw ConfigError("comparison_check needs a common grid");
    const std::size_t ns = std::min(a.samples.size(), b.samples.size());

    ComparisonReport rep;
    rep.worst_gap.name = "ordering_gap";
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < ns; ++s) {
        if (std::abs(a.samples[s].t - b.samples[s].t) > 1e-9)
            throw ConfigError("comparison_check needs shared sample times");
        double gap = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < ga.size(); ++i)
            gap = std::max(gap, a.samples[s].profile.u[i] - b.samples[s].profile.u[i]);
        rep.worst_gap.points.push_back({a.samples[s].t, gap});
        if (s == 0) rep.initially_ordered = gap <= 0.0;
        rep.max_violation = std::max(rep.max_violation, gap);
    }
    return rep;
}

} // namespace mcflab
