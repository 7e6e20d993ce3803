#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcflab/errors.hpp"
#include "mcflab/geometry.hpp"
#include "mcflab/grid.hpp"
#include "mcflab/monitors.hpp"
#include "mcflab/solitons.hpp"
#include "mcflab/solver.hpp"

using namespace mcflab;

namespace {

// Shared runs: built once, reused by every check that needs them.
const FlowTrajectory& translator_run() {
    static FlowTrajectory traj = [] {
        SolitonProfile g1 = translator_profile(1.0, 2, 20.0, 0.05);
        SolverConfig cfg;
        cfg.t_end = 1.0;
        return evolve(g1.profile, cfg);
    }();
    return traj;
}

const FlowTrajectory& paraboloid_run() {
    static FlowTrajectory traj = [] {
        RadialGrid g = make_grid(2, 30.0, 0.05);
        SolverConfig cfg;
        cfg.t_end = 1.0;
        return evolve(make_profile(g, power_graph(g, 2.0, 0.0)), cfg);
    }();
    return traj;
}

FlowTrajectory single_sample(const GraphProfile& profile) {
    FlowTrajectory traj;
    FlowSample smp;
    smp.t = profile.t;
    smp.profile = profile;
    smp.geo = geometry_at(profile);
    traj.samples.push_back(std::move(smp));
    return traj;
}

double series_max(const Series& s) {
    double m = -1e300;
    for (const SeriesPoint& p : s.points) m = std::max(m, p.value);
    return m;
}

void series_range(const Series& s, double& lo, double& hi) {
    lo = 1e300;
    hi = -1e300;
    for (const SeriesPoint& p : s.points) {
        lo = std::min(lo, p.value);
        hi = std::max(hi, p.value);
    }
}

} // namespace

TEST_CASE("growth classifier separates steady translation from expansion") {
    MonitorConfig mc;

    // plane: t max|A|^2 is identically negligible
    RadialGrid g = make_grid(2, 5.0, 0.05);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    FlowTrajectory flat = evolve(make_profile(g, plane_graph(g, 0.0)), cfg);
    ClassifierReport cp = type_classifier(flat, mc);
    CHECK(cp.hint == Hint::type_iii);
    CHECK(cp.loglog_slope == 0.0);
    CHECK(cp.T.name == "tA2");

    // translator: curvature persists, so T grows linearly
    ClassifierReport ct = type_classifier(translator_run(), mc);
    CHECK(ct.hint == Hint::type_iib);
    CHECK(ct.loglog_slope > 0.95);
    CHECK(ct.loglog_slope < 1.05);

    // expander: curvature decays like 1/t and T stays bounded
    SolitonProfile E = expander_profile(1.0, 2, 1.0, 30.0, 0.05);
    SolverConfig ce;
    ce.t_end = 20.0;
    ce.sample_stride = 400;
    FlowTrajectory exp_traj = evolve(E.profile, ce);
    ClassifierReport cx = type_classifier(exp_traj, mc);
    CHECK(cx.hint == Hint::type_iii);
    CHECK(cx.loglog_slope < 0.05);  // measured 0.0337
    CHECK(cx.max_T == doctest::Approx(0.3566).epsilon(1e-2));
    CHECK(cx.max_T <= mc.bound_factor * cx.early_max_T);

    // a two-sample trajectory cannot support the log-log fit
    SolverConfig tiny;
    tiny.t_end = 0.004;
    FlowTrajectory brief = evolve(make_profile(g, plane_graph(g, 0.0)), tiny);
    CHECK_THROWS_AS(type_classifier(brief, mc), ConfigError);

    CHECK(to_string(Hint::type_iii) == "type_iii_consistent");
    CHECK(to_string(Hint::type_iib) == "type_iib_consistent");
    CHECK(to_string(Hint::inconclusive) == "inconclusive");
}

TEST_CASE("pinching margins of the paraboloid at rest") {
    RadialGrid g = make_grid(2, 30.0, 0.05);
    GraphProfile para = make_profile(g, power_graph(g, 2.0, 0.0));
    MonitorConfig mc;
    PinchingReport rep = pinching_check(single_sample(para), mc);
    CHECK(rep.margin_lower.name == "pinch_lower");
    CHECK(rep.margin_upper.name == "pinch_upper");
    CHECK(rep.margin_growth.name == "pinch_growth");
    REQUIRE(rep.margin_lower.points.size() == 1);
    // the axis saturates W = H/4 exactly
    CHECK(std::abs(rep.margin_lower.points[0].value) < 1e-14);
    CHECK(rep.margin_upper.points[0].value > 0.0);
    CHECK(rep.margin_upper.points[0].value < 1e-5);  // measured 4.63e-6
    CHECK(rep.margin_growth.points[0].value ==
          doctest::Approx(0.856132).epsilon(1e-3));
    CHECK(rep.nonpositive_H_nodes == 0);
}

TEST_CASE("pinching margins of a plane are the signed unit gaps") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile plane = make_profile(g, plane_graph(g, 0.0));
    MonitorConfig mc;
    PinchingReport rep = pinching_check(single_sample(plane), mc);
    CHECK(rep.margin_lower.points[0].value == 1.0);
    CHECK(rep.margin_upper.points[0].value == -1.0);
    CHECK(rep.margin_growth.points[0].value == -1.0);
    CHECK(rep.nonpositive_H_nodes == g.size());
    CHECK(rep.preserved[0]);
    CHECK(rep.preserved[1]);
    CHECK(rep.preserved[2]);
}

TEST_CASE("pinching margins persist along the paraboloid flow") {
    MonitorConfig mc;
    PinchingReport rep = pinching_check(paraboloid_run(), mc);
    CHECK(rep.preserved[0]);
    CHECK(rep.preserved[1]);
    CHECK(rep.preserved[2]);
    CHECK(rep.nonpositive_H_nodes == 0);

    // the verdict survives a dyadic parabolic rescaling of the stored run:
    // u -> u(2r, 4t)/2 subsamples every fourth sample onto half the domain
    const FlowTrajectory& src = paraboloid_run();
    FlowTrajectory scaled;
    RadialGrid half = make_grid(2, 15.0, 0.05);
    for (std::size_t k = 0; 4 * k < src.samples.size(); ++k) {
        const FlowSample& s = src.samples[4 * k];
        std::vector<double> u(half.size());
        for (int i = 0; i < half.size(); ++i) u[i] = s.profile.u[2 * i] / 2.0;
        FlowSample out;
        out.t = s.t / 4.0;
        out.profile = make_profile(half, std::move(u), out.t);
        out.geo = geometry_at(out.profile);
        scaled.samples.push_back(std::move(out));
    }
    PinchingReport srep = pinching_check(scaled, mc);
    CHECK(srep.preserved[0]);
    CHECK(srep.preserved[1]);
    CHECK(srep.preserved[2]);
    CHECK(srep.nonpositive_H_nodes == 0);
}

TEST_CASE("normal-time evolution of the gradient function closes") {
    // planes are exact
    RadialGrid g = make_grid(2, 5.0, 0.05);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    FlowTrajectory flat = evolve(make_profile(g, plane_graph(g, 0.0)), cfg);
    Series flat_res = w_evolution_residual(flat);
    CHECK(flat_res.name == "w_residual");
    for (const SeriesPoint& p : flat_res.points) CHECK(p.value == 0.0);

    // translator: spatial truncation only, contracts at second order
    double tr_res[2];
    for (int k = 0; k < 2; ++k) {
        const double h = k == 0 ? 0.05 : 0.025;
        SolitonProfile g1 = translator_profile(1.0, 2, 20.0, h);
        SolverConfig sc;
        sc.t_end = 0.5;
        FlowTrajectory traj = evolve(g1.profile, sc);
        tr_res[k] = series_max(w_evolution_residual(traj));
    }
    CHECK(tr_res[0] < 1e-4);  // measured 8.08e-5
    CHECK(tr_res[0] / tr_res[1] > 3.3);
    CHECK(tr_res[0] / tr_res[1] < 4.7);

    // paraboloid: away from the initial transient, same contraction with the
    // sampling interval tied to the step size (fixed stride)
    double pa_res[2];
    for (int k = 0; k < 2; ++k) {
        const double h = k == 0 ? 0.05 : 0.025;
        RadialGrid grid = make_grid(2, 30.0, h);
        SolverConfig sc;
        sc.t_end = 0.5;
        FlowTrajectory traj = evolve(make_profile(grid, power_graph(grid, 2.0, 0.0)), sc);
        Series res = w_evolution_residual(traj);
        double worst = 0.0;
        for (const SeriesPoint& p : res.points)
            if (p.t >= 0.1) worst = std::max(worst, p.value);
        pa_res[k] = worst;
    }
    CHECK(pa_res[0] < 1.5e-2);  // measured 1.29e-2
    CHECK(pa_res[0] / pa_res[1] > 3.3);  // measured ratio 3.80
    CHECK(pa_res[0] / pa_res[1] < 4.7);
}

TEST_CASE("curvature gradient ratios stay below the regularity bands") {
    // constant mean curvature: a sphere cap has vanishing first ratio
    RadialGrid g = make_grid(2, 5.0, 0.05);
    std::vector<double> u(g.size());
    const double R = 10.0;
    for (int i = 0; i < g.size(); ++i)
        u[i] = R - std::sqrt(R * R - g.r[i] * g.r[i]);
    FlowTrajectory cap = single_sample(make_profile(g, std::move(u)));
    Series c1 = gradient_ratio(cap, 1);
    CHECK(c1.name == "grad1_ratio");
    CHECK(c1.points[0].value < 0.05);  // measured 1.68e-2

    // paraboloid flow: ratios bounded uniformly in time
    Series p1 = gradient_ratio(paraboloid_run(), 1);
    Series p2 = gradient_ratio(paraboloid_run(), 2);
    CHECK(p2.name == "grad2_ratio");
    CHECK(series_max(p1) < 0.8);  // measured 0.559
    CHECK(series_max(p2) < 0.9);  // measured 0.696

    // translator: ratios are constants of the motion
    Series t1 = gradient_ratio(translator_run(), 1);
    Series t2 = gradient_ratio(translator_run(), 2);
    double lo, hi;
    series_range(t1, lo, hi);
    CHECK(hi - lo < 1e-4);  // measured spread 3e-6
    CHECK(hi == doctest::Approx(0.49645).epsilon(1e-3));
    series_range(t2, lo, hi);
    CHECK(hi - lo < 1e-4);
    CHECK(hi == doctest::Approx(0.56757).epsilon(1e-3));

    CHECK_THROWS_AS(gradient_ratio(translator_run(), 3), ConfigError);
}

TEST_CASE("inscribed balls of the unit sphere meridian have delta = 2") {
    const int M = 64;
    MeridianShape s;
    for (int i = 0; i < M; ++i) {
        const double th = M_PI * i / (M - 1);
        s.x.push_back(std::sin(th));
        s.z.push_back(std::cos(th));
        s.nx.push_back(std::sin(th));
        s.nz.push_back(std::cos(th));
        s.H.push_back(2.0);
        s.kmax_pos.push_back(1.0);
        s.kmax_neg.push_back(0.0);
    }
    s.first_reflected = M;
    NoncollapseSample nc = noncollapse_radii(s);
    for (double d : nc.delta_in) CHECK(d == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(nc.ext_unbounded);
    CHECK(nc.global_min_delta == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("noncollapsing scan of the paraboloid") {
    RadialGrid g = make_grid(2, 30.0, 0.05);
    GraphProfile para = make_profile(g, power_graph(g, 2.0, 0.0));
    NoncollapseSample nc = noncollapse_delta(para);
    // at the vertex both curvatures are 2, the curvature cap is sharp
    CHECK(nc.r_int[0] == 0.5);
    CHECK(nc.delta_in[0] == 2.0);
    CHECK(nc.global_min_delta == doctest::Approx(1.0002777006386923).epsilon(1e-12));
    CHECK(nc.ext_unbounded);  // convex: no exterior tangent ball constraint

    RadialGrid g5 = make_grid(2, 5.0, 0.05);
    GraphProfile plane = make_profile(g5, plane_graph(g5, 0.0));
    CHECK_THROWS_AS(noncollapse_delta(plane), ConfigError);
}

TEST_CASE("noncollapsing quantity is steady on the translator") {
    MonitorConfig mc;
    NoncollapseReport rep = noncollapse_preservation(translator_run(), mc);
    CHECK(rep.min_delta.name == "min_delta_in");
    CHECK(rep.preserved);
    CHECK(rep.any_ext_unbounded);
    double lo, hi;
    series_range(rep.min_delta, lo, hi);
    CHECK(hi - lo < 1e-6);  // measured spread 2.9e-8
    CHECK(hi == doctest::Approx(1.002519).epsilon(1e-3));

    // identical profiles give bitwise identical scan results
    FlowTrajectory frozen;
    for (int s = 0; s < 3; ++s) {
        FlowSample smp = translator_run().samples[0];
        smp.t = static_cast<double>(s);
        frozen.samples.push_back(std::move(smp));
    }
    NoncollapseReport frep = noncollapse_preservation(frozen, mc);
    CHECK(frep.min_delta.points[0].value == frep.min_delta.points[1].value);
    CHECK(frep.min_delta.points[1].value == frep.min_delta.points[2].value);

    // explicit targets override the t = 0 reference
    MonitorConfig loose = mc;
    loose.delta0 = 0.5;
    CHECK(noncollapse_preservation(translator_run(), loose).preserved);
    MonitorConfig strict = mc;
    strict.delta0 = 5.0;
    CHECK(!noncollapse_preservation(translator_run(), strict).preserved);
}

TEST_CASE("gradient and displacement growth conditions") {
    MonitorConfig mc;
    RadialGrid g = make_grid(2, 30.0, 0.05);

    GraphProfile plane = make_profile(g, plane_graph(g, 0.0));
    EHSample ep = eh_conditions(plane, mc);
    CHECK(ep.upsilon_max == 1.0);
    CHECK(ep.growth_max == 0.0);
    CHECK(ep.gradient_ok);
    CHECK(ep.growth_ok);

    // steep paraboloid fails the linear-growth gradient bound at the rim
    GraphProfile para = make_profile(g, power_graph(g, 2.0, 0.0));
    EHSample e2 = eh_conditions(para, mc);
    CHECK(e2.upsilon_max == doctest::Approx(60.0083).epsilon(1e-3));
    CHECK(e2.upsilon_argmax == g.size() - 1);
    CHECK(!e2.gradient_ok);

    // mollified sublinear power satisfies both conditions
    GraphProfile a05 = make_profile(g, power_graph(g, 0.5, 0.2));
    EHSample e05 = eh_conditions(a05, mc);
    CHECK(e05.upsilon_max == doctest::Approx(1.215450).epsilon(1e-3));
    CHECK(e05.growth_max == doctest::Approx(0.171112).epsilon(1e-3));
    CHECK(e05.gradient_ok);
    CHECK(e05.growth_ok);

    // trajectory overload reports the per-sample series
    RadialGrid g5 = make_grid(2, 5.0, 0.05);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    FlowTrajectory flat = evolve(make_profile(g5, plane_graph(g5, 0.0)), cfg);
    EHReport rep = eh_conditions(flat, mc);
    CHECK(rep.gradient_bound.name == "upsilon_max");
    CHECK(rep.growth_bound.name == "growth_max");
    CHECK(rep.gradient_bound.points.size() == flat.samples.size());
    CHECK(rep.gradient_ok);
    CHECK(rep.growth_ok);
    for (const SeriesPoint& p : rep.gradient_bound.points) CHECK(p.value == 1.0);
}

TEST_CASE("halfspace containment needs a vertical component") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile para = make_profile(g, power_graph(g, 2.0, 0.0));
    HalfspaceReport r1 = halfspace_check(para, -1.0);
    CHECK(r1.ok);
    CHECK(r1.margin == 1.0);
    CHECK(r1.inf_u == 0.0);
    HalfspaceReport r0 = halfspace_check(para, 0.0);
    CHECK(!r0.ok);
    CHECK(r0.margin == 0.0);
    HalfspaceReport r2 = halfspace_check(para, std::sqrt(2.0));
    CHECK(r2.ok);
    CHECK(r2.margin == std::sqrt(2.0));
}

TEST_CASE("graph ordering persists under the flow") {
    const FlowTrajectory& lower = paraboloid_run();
    ComparisonReport self = comparison_check(lower, lower);
    CHECK(self.initially_ordered);
    CHECK(self.max_violation == 0.0);
    CHECK(self.worst_gap.name == "ordering_gap");
    CHECK(self.worst_gap.points.size() == lower.samples.size());

    // a unit vertical gap is carried unchanged to rounding
    RadialGrid g = make_grid(2, 30.0, 0.05);
    std::vector<double> u = power_graph(g, 2.0, 0.0);
    for (double& x : u) x += 1.0;
    SolverConfig cfg;
    cfg.t_end = 1.0;
    FlowTrajectory upper = evolve(make_profile(g, std::move(u)), cfg);
    ComparisonReport rep = comparison_check(lower, upper);
    CHECK(rep.initially_ordered);
    CHECK(rep.max_violation < -1.0 + 1e-9);
    CHECK(rep.max_violation > -1.0 - 1e-9);

    // reversed order is reported, not enforced
    FlowTrajectory one;
    one.samples.push_back(upper.samples[0]);
    FlowTrajectory two;
    two.samples.push_back(lower.samples[0]);
    ComparisonReport rev = comparison_check(one, two);
    CHECK(!rev.initially_ordered);
    // the stored gap is fl(fl(u)+1) - fl(u): exactly 1 up to one rounding
    CHECK(rev.max_violation > 1.0 - 1e-12);
    CHECK(rev.max_violation < 1.0 + 1e-12);

    // mismatched grids and mismatched times are rejected
    RadialGrid g5 = make_grid(2, 5.0, 0.05);
    FlowTrajectory small;
    small.samples.push_back(
        {0.0, make_profile(g5, plane_graph(g5, 0.0)), geometry_at(make_profile(g5, plane_graph(g5, 0.0)))});
    CHECK_THROWS_AS(comparison_check(lower, small), ConfigError);
    FlowTrajectory shifted = two;
    shifted.samples[0].t = 0.25;
    CHECK_THROWS_AS(comparison_check(one, shifted), ConfigError);
    CHECK_THROWS_AS(comparison_check(FlowTrajectory{}, lower), ConfigError);
}
