#pragma once

#include <array>
#include <string>
#include <vector>

#include "mcflab/solver.hpp"

namespace mcflab {

struct MonitorConfig {
    double C1 = 0.25;          // lower pinching W >= C1 H
    double C2 = 0.5;           // upper pinching W <= ... via C2 H - W form
    double C = 1.0;            // growth pinching constant
    double epsilon = 0.5;      // growth pinching exponent parameter
    double c_linear = 10.0;    // EH gradient bound: max 1/W <= c_linear
    double c_growth = 10.0;    // EH displacement bound constant
    double delta_growth = 0.5; // EH displacement bound exponent
    double slope_type_iii = 0.05;
    double slope_type_iib = 0.2;
    double bound_factor = 1.1; // late max T vs early max T for type III
    double kappa_floor = 1e-8;
    double preserve_tol = 1e-3;
    double A_floor = 0.1;      // check floor for |A|(0,t) on bounded-|A| rows
    double delta0 = -1.0;      // noncollapsing target; < 0 takes the t = 0 value
};

enum class Hint { type_iii, type_iib, inconclusive };

std::string to_string(Hint h);

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
};

struct Series {
    std::string name;
    std::vector<SeriesPoint> points;
};

// T(t) = t * max|A|^2. Log-log least-squares slope over the later half of
// the positive-time samples. type_iii needs slope <= slope_type_iii and the
// late max of T within bound_factor of the early max; type_iib needs slope
// >= slope_type_iib. Identically negligible T (a plane) is type_iii with
// slope 0. Fewer than 10 positive-time samples is rejected.
struct ClassifierReport {
    Hint hint = Hint::inconclusive;
    double loglog_slope = 0.0;
    double max_T = 0.0;
    double early_max_T = 0.0;
    Series T;
};

ClassifierReport type_classifier(const FlowTrajectory& traj, const MonitorConfig& cfg);

// Pointwise pinching margins per sample:
//   m1 = min(W - C1 H), m2 = min(C2 H - W),
//   m3 = min(C (1 + r^2 + u^2)^{(1-eps)/2} H - |W|) with |W| = W.
// preserved: every t > 0 margin stays above margin(0) - preserve_tol.
struct PinchingReport {
    Series margin_lower;   // W - C1 H
    Series margin_upper;   // C2 H - W
    Series margin_growth;  // C (1+|x|^2)^{(1-eps)/2} H - W
    std::array<bool, 3> preserved{true, true, true};
    int nonpositive_H_nodes = 0;  // counted across all samples
};

PinchingReport pinching_check(const FlowTrajectory& traj, const MonitorConfig& cfg);

// Max node residual of dW/dt|_normal = Laplace(W) + |A|^2 W across each
// interior sample (centered time differences need both neighbors). The last
// two radial nodes are excluded: the one-sided second-derivative stencil
// under the Laplacian is not consistent with the normal-time difference
// there. Refinement at fixed sample_stride contracts at second order.
Series w_evolution_residual(const FlowTrajectory& traj);

// max over nodes of |d_s^l H| / H^{l+1} per sample, l in {1, 2}, with d_s
// the meridian arc-length derivative. Nodes with H <= kappa_floor masked.
Series gradient_ratio(const FlowTrajectory& traj, int l,
                      double kappa_floor = 1e-8);

// Meridian polyline with outward normal, curvature, and caps for the
// inscribed/exterior ball scan. Graph profiles build this with the reflected
// branch (-r, u) appended so the scan sees the full meridian.
struct MeridianShape {
    std::vector<double> x;   // abscissa along the meridian (signed radius)
    std::vector<double> z;   // height
    std::vector<double> nx;  // outward normal (matches H sign convention)
    std::vector<double> nz;
    std::vector<double> H;   // mean curvature at the node
    std::vector<double> kmax_pos;  // largest positive principal curvature, 0 if none
    std::vector<double> kmax_neg;  // largest |negative| principal curvature, 0 if none
    int first_reflected = -1;      // index where the reflected branch starts
};

MeridianShape meridian_from_profile(const GraphProfile& profile);

// Inscribed and exterior ball radii at one node: pairwise scan
// r(x,y) = |X(y)-X(x)|^2 / (2 <X(x)-X(y), nu(x)>) over the side-consistent
// opponents, capped by the curvature bound on that side. Convex profiles
// have no exterior cap; ext_unbounded flags r_ext = +inf.
struct NoncollapseSample {
    std::vector<double> r_int;
    std::vector<double> r_ext;
    std::vector<double> delta_in;   // r_int * |H|
    std::vector<double> delta_ext;  // r_ext * |H|
    bool ext_unbounded = false;
    double global_min_delta = 0.0;  // min over nodes of delta_in
};

NoncollapseSample noncollapse_radii(const MeridianShape& shape);
NoncollapseSample noncollapse_delta(const GraphProfile& profile);

// min delta_in per retained sample; preserved when no later sample drops
// below the initial min by more than preserve_tol.
struct NoncollapseReport {
    Series min_delta;
    bool preserved = true;
    bool any_ext_unbounded = false;
};

NoncollapseReport noncollapse_preservation(const FlowTrajectory& traj,
                                           const MonitorConfig& cfg);

// Gradient and displacement bounds: max 1/W vs c_linear and
// max <x,nu>^2/(1+|x|^2)^{1-delta} vs c_growth, with
// <x,nu> = (u - r u')/sqrt(1+u'^2) and |x|^2 = r^2 + u^2.
struct EHSample {
    double upsilon_max = 0.0;  // max 1/W
    double growth_max = 0.0;
    int upsilon_argmax = 0;
    bool gradient_ok = true;
    bool growth_ok = true;
};

EHSample eh_conditions(const GraphProfile& profile, const MonitorConfig& cfg);

struct EHReport {
    Series gradient_bound;  // max 1/W per sample
    Series growth_bound;
    bool gradient_ok = true;
    bool growth_ok = true;
};

EHReport eh_conditions(const FlowTrajectory& traj, const MonitorConfig& cfg);

// A graph lies in a halfspace {<X, omega> <= const} exactly when omega has a
// vertical component and inf u is finite; margin is |<omega, e_{n+1}>|.
struct HalfspaceReport {
    bool ok = false;
    double margin = 0.0;
    double inf_u = 0.0;
};

HalfspaceReport halfspace_check(const GraphProfile& profile, double omega_vertical);

// Ordering persistence between two trajectories on a shared grid and shared
// sample times: requires u1 <= u2 at t = 0, reports the max over time of
// max node (u1 - u2). Nonpositive max means the ordering held.
struct ComparisonReport {
    bool initially_ordered = false;
    double max_violation = 0.0;
    Series worst_gap;  // max node (u1 - u2) per shared sample
};

ComparisonReport comparison_check(const FlowTrajectory& a, const FlowTrajectory& b);

} // namespace mcflab
