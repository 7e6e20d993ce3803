#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mcflab/errors.hpp"
#include "mcflab/geometry.hpp"
#include "mcflab/grid.hpp"
#include "mcflab/solver.hpp"

using namespace mcflab;

namespace {

GraphProfile parabola(int n, double r_max, double h, double a) {
    RadialGrid g = make_grid(n, r_max, h);
    std::vector<double> u(g.size());
    for (int i = 0; i < g.size(); ++i) u[i] = a * g.r[i] * g.r[i];
    return make_profile(g, std::move(u));
}

} // namespace

TEST_CASE("flow velocity equals sqrt(1+u'^2) H from the same stencils") {
    RadialGrid g = make_grid(3, 4.0, 0.05);
    std::vector<double> u(g.size());
    for (int i = 0; i < g.size(); ++i) u[i] = std::cosh(g.r[i]) - 1.0;
    GraphProfile prof = make_profile(g, std::move(u));
    GeometrySample geo = geometry_at(prof);
    std::vector<double> v = rhs(prof, geo);
    for (int i = 0; i < g.size(); ++i)
        CHECK(v[i] == doctest::Approx(geo.H[i] / geo.W[i]).epsilon(1e-12));
    // axis closure u_t(0) = n u''(0)
    CHECK(v[0] == doctest::Approx(3.0 * geo.d2u[0]).epsilon(1e-12));
}

TEST_CASE("planes are stationary to the bit") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile prof = make_profile(g, plane_graph(g, 0.3));
    SolverConfig cfg;
    cfg.t_end = 0.2;  // dt = 0.4*h^2/2 = 5e-4, so 400 steps
    FlowTrajectory traj = evolve(prof, cfg);

    CHECK(traj.termination == Termination::reached_t_end);
    CHECK(traj.steps_taken == 400);
    REQUIRE(traj.samples.size() == 5);
    const double expected_t[] = {0.0, 0.05, 0.1, 0.15, 0.2};
    for (int s = 0; s < 5; ++s) {
        CHECK(traj.samples[s].t == doctest::Approx(expected_t[s]).epsilon(1e-12));
        for (double v : traj.samples[s].profile.u) CHECK(v == 0.3);
    }
    for (const StepStat& st : traj.stats) CHECK(st.halvings == 0);
}

TEST_CASE("cubic graph marches to t_end with strictly increasing samples") {
    RadialGrid g = make_grid(2, 8.0, 0.05);
    GraphProfile prof = make_profile(g, power_graph(g, 3.0, 0.0));
    SolverConfig cfg;  // t_end = 5, stride = 100
    FlowTrajectory traj = evolve(prof, cfg);

    CHECK(traj.termination == Termination::reached_t_end);
    CHECK(traj.steps_taken == 10000);
    REQUIRE(traj.samples.size() == 101);
    for (std::size_t s = 1; s < traj.samples.size(); ++s)
        CHECK(traj.samples[s].t > traj.samples[s - 1].t);
    CHECK(traj.samples.back().t == doctest::Approx(5.0).epsilon(1e-12));
    // graphs stay graphs: height at the axis only grows for convex data
    CHECK(traj.samples.back().profile.u[0] > 0.0);
}

TEST_CASE("step halves dt until the curvature budget is met") {
    GraphProfile prof = parabola(2, 2.0, 0.05, 6.12);
    SolverConfig cfg;
    auto [next, stat] = step(prof, cfg);
    // max|A|^2 = 2(2a)^2 = 299.6 at the axis; 299.6 * 5e-4 > 0.1, one halving
    CHECK(stat.max_A2 > 250.0);
    CHECK(stat.max_A2 < 350.0);
    CHECK(stat.halvings == 1);
    CHECK(stat.dt == doctest::Approx(2.5e-4).epsilon(1e-15));
    CHECK(next.t == doctest::Approx(stat.dt).epsilon(1e-15));
}

TEST_CASE("unresolved curvature aborts before stepping") {
    // max|A|^2 h^2 = 3200 * 0.0025 = 8 exceeds the threshold at t = 0
    GraphProfile prof = parabola(2, 2.0, 0.05, 20.0);
    FlowTrajectory traj = evolve(prof, SolverConfig{});
    CHECK(traj.termination == Termination::blowup_unresolved);
    CHECK(traj.steps_taken == 0);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].t == 0.0);
}

TEST_CASE("unsmoothed low power has unresolvable origin curvature") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile prof = make_profile(g, power_graph(g, 0.5, 0.0));
    FlowTrajectory traj = evolve(prof, SolverConfig{});
    CHECK(traj.termination == Termination::blowup_unresolved);
    CHECK(traj.samples.back().t < 5.0);
}

TEST_CASE("outer boundary condition selects the update rule") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    GraphProfile prof = make_profile(g, power_graph(g, 2.0, 0.0));

    cfg.outer_bc = OuterBC::frozen;
    FlowTrajectory frozen = evolve(prof, cfg);
    CHECK(frozen.samples.back().profile.u.back() == prof.u.back());

    cfg.outer_bc = OuterBC::one_sided;
    FlowTrajectory moving = evolve(prof, cfg);
    CHECK(moving.samples.back().profile.u.back() != prof.u.back());
    CHECK(moving.samples.back().profile.u.back() > prof.u.back());
}

TEST_CASE("step cap terminates long marches") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile prof = make_profile(g, power_graph(g, 2.0, 0.0));
    SolverConfig cfg;
    cfg.max_steps = 10;
    FlowTrajectory traj = evolve(prof, cfg);
    CHECK(traj.termination == Termination::step_cap);
    CHECK(traj.steps_taken == 10);
}

TEST_CASE("final step absorbs the remainder instead of emitting a sliver") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile prof = make_profile(g, plane_graph(g, 0.0));
    SolverConfig cfg;
    cfg.t_end = 0.2006;  // 401 base steps of 5e-4 would overshoot
    FlowTrajectory traj = evolve(prof, cfg);
    CHECK(traj.termination == Termination::reached_t_end);
    CHECK(traj.samples.back().t == doctest::Approx(0.2006).epsilon(1e-12));
    // the absorbed step may stretch up to 1.5x the base dt
    CHECK(traj.stats.back().dt > 5.5e-4);
    CHECK(traj.stats.back().dt < 7.5e-4);
    for (std::size_t s = 1; s < traj.samples.size(); ++s)
        CHECK(traj.samples[s].t > traj.samples[s - 1].t);
}

TEST_CASE("evolution is bitwise deterministic") {
    RadialGrid g = make_grid(2, 5.0, 0.05);
    GraphProfile prof = make_profile(g, power_graph(g, 2.0, 0.0));
    SolverConfig cfg;
    cfg.t_end = 0.2;
    FlowTrajectory a = evolve(prof, cfg);
    FlowTrajectory b = evolve(prof, cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t s = 0; s < a.samples.size(); ++s) {
        CHECK(a.samples[s].t == b.samples[s].t);
        CHECK(a.samples[s].profile.u == b.samples[s].profile.u);
    }
}

TEST_CASE("doubling the domain leaves interior evolution unchanged") {
    SolverConfig cfg;
    cfg.t_end = 0.5;
    double d2 = domain_sensitivity(cfg, 2, 15.0, 0.05,
                                   [](double r) { return r * r; });
    CHECK(d2 < 1e-6);

    cfg.t_end = 0.2;
    auto cubic = [](double r) { return r * r * r; };
    double d6 = domain_sensitivity(cfg, 2, 6.0, 0.05, cubic);
    double d9 = domain_sensitivity(cfg, 2, 9.0, 0.05, cubic);
    CHECK(d6 < 1e-3);
    CHECK(d9 < d6);
}

TEST_CASE("termination and boundary labels") {
    CHECK(to_string(Termination::reached_t_end) == "reached_t_end");
    CHECK(to_string(Termination::blowup_unresolved) == "blowup_unresolved");
    CHECK(to_string(Termination::step_cap) == "step_cap");
    CHECK(to_string(Termination::numerical_failure) == "numerical_failure");
    CHECK(to_string(OuterBC::one_sided) == "one_sided");
    CHECK(to_string(OuterBC::frozen) == "frozen");
}
