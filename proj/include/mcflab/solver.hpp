#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mcflab/geometry.hpp"
#include "mcflab/grid.hpp"

namespace mcflab {

enum class OuterBC { one_sided, frozen };

enum class Termination { reached_t_end, blowup_unresolved, step_cap, numerical_failure };

std::string to_string(Termination t);
std::string to_string(OuterBC bc);

struct SolverConfig {
    double cfl_safety = 0.4;
    double t_end = 5.0;
    int sample_stride = 100;
    OuterBC outer_bc = OuterBC::one_sided;
    long max_steps = 10'000'000;
    double blowup_threshold = 1.0;  // abort when max|A|^2 h^2 exceeds this
};

struct StepStat {
    double t = 0.0;
    double dt = 0.0;
    double max_A2 = 0.0;
    int halvings = 0;
};

struct FlowSample {
    double t = 0.0;
    GraphProfile profile;
    GeometrySample geo;
};

struct FlowTrajectory {
    std::vector<FlowSample> samples;
    std::vector<StepStat> stats;
    Termination termination = Termination::reached_t_end;
    long steps_taken = 0;
};

// Graph flow velocity u_t = u''/(1+u'^2) + (n-1)u'/r, with the axis closure
// u_t(0) = n u''(0). Equal to sqrt(1+u'^2) H built from the same stencils.
std::vector<double> rhs(const GraphProfile& profile);
std::vector<double> rhs(const GraphProfile& profile, const GeometrySample& geo);

// One explicit midpoint step. dt starts at cfl*h^2/2, or at dt_request when
// that is positive, and halves while max|A|^2 dt > 0.1 at the base point.
// Returns the stepped profile and the stat record. Throws NumericalError on
// non-finite state.
std::pair<GraphProfile, StepStat> step(const GraphProfile& profile,
                                       const SolverConfig& config,
                                       double dt_request = -1.0);

// March to t_end, sampling every sample_stride steps plus the initial and
// final states. The last step absorbs the remainder (dt = t_end - t once
// t + 1.5 dt >= t_end) so sample times stay strictly increasing.
FlowTrajectory evolve(GraphProfile initial, const SolverConfig& config);

// Max over the retained samples of max node |u_A - u_B| between runs on
// [0, r_max] and [0, 2 r_max], compared on the shared nodes.
double domain_sensitivity(const SolverConfig& config, int n, double r_max, double h,
                          const std::function<double(double)>& initial);

} // namespace mcflab
