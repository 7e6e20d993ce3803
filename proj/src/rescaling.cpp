#include "mcflab/rescaling.hpp"

#include <algorithm>
#include <cmath>

#include "mcflab/errors.hpp"

namespace mcflab {

namespace {

RadialGrid scaled_grid(const RadialGrid& src, double factor) {
    RadialGrid g;
    g.n = src.n;
    g.h = src.h * factor;
    g.r.resize(src.r.size());
    for (std::size_t i = 0; i < src.r.size(); ++i) g.r[i] = src.r[i] * factor;
    return g;
}

} // namespace

NormalizedState normalize(const GraphProfile& profile) {
    if (profile.t < 0.0) throw ConfigError("normalize needs t >= 0");
    const double c = std::sqrt(2.0 * profile.t + 1.0);
    NormalizedState out;
    out.source_t = profile.t;
    out.s = 0.5 * std::log(2.0 * profile.t + 1.0);
    out.profile.grid = scaled_grid(profile.grid, 1.0 / c);
    out.profile.t = profile.t;
    out.profile.u.resize(profile.u.size());
    for (std::size_t i = 0; i < profile.u.size(); ++i)
        out.profile.u[i] = profile.u[i] / c;
    return out;
}

GraphProfile denormalize(const NormalizedState& state) {
    const double c = std::sqrt(2.0 * state.source_t + 1.0);
    GraphProfile out;
    out.grid = scaled_grid(state.profile.grid, c);
    out.t = state.source_t;
    out.u.resize(state.profile.u.size());
    for (std::size_t i = 0; i < state.profile.u.size(); ++i)
        out.u[i] = state.profile.u[i] * c;
    return out;
}

BlowupSelection select_blowup_point(const FlowTrajectory& traj, double j,
                                    double gamma) {
    if (traj.samples.empty()) throw ConfigError("empty trajectory");
    if (!(gamma > 0.0) || gamma > 1.0) throw ConfigError("gamma must be in (0,1]");
    if (!(j > 0.0) || traj.samples.back().t < j - 1e-12)
        throw ConfigError("trajectory does not cover [0, j]");

    BlowupSelection sel;
    sel.j = j;
    sel.gamma = gamma;
    bool found = false;
    for (std::size_t s = 0; s < traj.samples.size(); ++s) {
        const FlowSample& smp = traj.samples[s];
        const double t = smp.t;
        if (!(t > 0.0) || !(t < j)) continue;
        const double weight = t * (j - t);
        for (std::size_t i = 0; i < smp.geo.H.size(); ++i) {
            const double score = weight * smp.geo.H[i] * smp.geo.H[i];
            // Strict improvement keeps the first maximizer (t, then r).
            if (!found || score > sel.score) {
                found = true;
                sel.score = score;
                sel.sample_index = static_cast<int>(s);
                sel.p_index = static_cast<int>(i);
                sel.t_sel = t;
                sel.L = std::abs(smp.geo.H[i]);
            }
        }
    }
    if (!found) throw ConfigError("no stored sample lies strictly inside (0, j)");
    sel.alpha_j = -sel.t_sel * sel.L * sel.L;
    sel.omega_j = (j - sel.t_sel) * sel.L * sel.L;
    return sel;
}

RescaledFlow rescale_flow(const FlowTrajectory& traj, const BlowupSelection& sel) {
    if (sel.sample_index < 0 ||
        sel.sample_index >= static_cast<int>(traj.samples.size()))
        throw ConfigError("selection does not point into the trajectory");
    const FlowSample& base = traj.samples[sel.sample_index];
    if (sel.p_index < 0 || sel.p_index >= base.profile.grid.size())
        throw ConfigError("selection node outside the grid");
    if (!(sel.L > 0.0)) throw ConfigError("selection has zero curvature scale");

    const double u_p = base.profile.u[sel.p_index];
    const double L2 = sel.L * sel.L;

    RescaledFlow out;
    out.selection = sel;
    out.base_index = sel.p_index;
    out.rho_base = sel.L * base.profile.grid.r[sel.p_index];
    out.slice0 = -1;

    // The map X -> L (X - height of the base point): radial symmetry is kept
    // by translating vertically only; the base radius is carried as rho_base.
    for (std::size_t s = 0; s < traj.samples.size(); ++s) {
        const FlowSample& smp = traj.samples[s];
        const double tau = L2 * (smp.t - sel.t_sel);
        if (tau < sel.alpha_j - 1e-12 || tau > sel.omega_j + 1e-12) continue;
        RescaledSample rs;
        rs.tau = tau;
        rs.source_t = smp.t;
        rs.profile.grid = scaled_grid(smp.profile.grid, sel.L);
        rs.profile.t = tau;
        rs.profile.u.resize(smp.profile.u.size());
        for (std::size_t i = 0; i < smp.profile.u.size(); ++i)
            rs.profile.u[i] = sel.L * (smp.profile.u[i] - u_p);
        if (static_cast<int>(s) == sel.sample_index)
            out.slice0 = static_cast<int>(out.samples.size());
        out.samples.push_back(std::move(rs));
    }
    if (out.slice0 < 0) throw ConfigError("rescaled window lost the base slice");
    return out;
}

SolitonMatch soliton_match(const RescaledFlow& rflow, double window) {
    const RescaledSample& slice = rflow.samples[rflow.slice0];
    const std::vector<double> f = rhs(slice.profile);
    const std::vector<double>& rho = slice.profile.grid.r;

    SolitonMatch out;
    out.window_radius = window;

    double sum = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(rho[i] - rflow.rho_base) > window) continue;
        sum += f[i];
        peak = std::max(peak, std::abs(f[i]));
        ++out.window_nodes;
    }
    if (out.window_nodes == 0) throw ConfigError("soliton window contains no nodes");
    out.N_fit = sum / out.window_nodes;
    out.degenerate_flat = peak <= 1e-14;
    if (out.degenerate_flat) out.N_fit = 0.0;

    for (std::size_t i = 0; i < f.size(); ++i) {
        const double dev = std::abs(f[i] - out.N_fit);
        out.residual_full = std::max(out.residual_full, dev);
        if (std::abs(rho[i] - rflow.rho_base) <= window)
            out.residual_window = std::max(out.residual_window, dev);
    }
    return out;
}

HarnackField harnack_min(const FlowTrajectory& traj, double t, bool add_time_term,
                         double kappa_floor) {
    const std::size_t ns = traj.samples.size();
    if (ns < 3) throw ConfigError("harnack_min needs at least three samples");

    std::size_t s = 0;
    double best = std::abs(traj.samples[0].t - t);
    for (std::size_t k = 1; k < ns; ++k) {
        const double d = std::abs(traj.samples[k].t - t);
        if (d < best) {
            best = d;
            s = k;
        }
    }
    if (s == 0) s = 1;
    if (s == ns - 1) s = ns - 2;

    const FlowSample& prev = traj.samples[s - 1];
    const FlowSample& cur = traj.samples[s];
    const FlowSample& next = traj.samples[s + 1];
    const double dt2 = next.t - prev.t;
    if (!(dt2 > 0.0)) throw NumericalError("sample times are not increasing");
    if (add_time_term && !(cur.t > 0.0))
        throw ConfigError("the H/(2t) term needs t > 0");

    const int m = cur.profile.grid.size();
    std::vector<double> dH_graph(m);
    for (int i = 0; i < m; ++i)
        dH_graph[i] = (next.geo.H[i] - prev.geo.H[i]) / dt2;

    std::vector<double> dHr, d2Hr;
    radial_derivatives(cur.profile.grid, cur.geo.H, dHr, d2Hr);
    const std::vector<double> ut = rhs(cur.profile, cur.geo);

    HarnackField out;
    out.t = cur.t;
    out.z.assign(m, 0.0);
    out.masked.assign(m, false);
    bool have_min = false;
    for (int i = 0; i < m; ++i) {
        const double p = cur.geo.du[i];
        const double one_p2 = 1.0 + p * p;
        const double dH_normal = dH_graph[i] - (ut[i] * p / one_p2) * dHr[i];
        const double dH_s = dHr[i] * cur.geo.W[i];
        if (cur.geo.kappa1[i] <= kappa_floor) {
            out.masked[i] = true;
            ++out.masked_count;
            continue;
        }
        double z = dH_normal - dH_s * dH_s / cur.geo.kappa1[i];
        if (add_time_term) z += cur.geo.H[i] / (2.0 * cur.t);
        out.z[i] = z;
        if (!have_min || z < out.z_min) {
            have_min = true;
            out.z_min = z;
            out.argmin = i;
        }
    }
    if (!have_min) {
        out.z_min = 0.0;
        out.argmin = -1;
    }
    return out;
}

} // namespace mcflab
