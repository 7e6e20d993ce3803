#pragma once

#include <vector>

#include "mcflab/solver.hpp"

namespace mcflab {

// Static rescaling: rho = r/sqrt(2t+1), v = u/sqrt(2t+1), s = log(2t+1)/2.
// The grid is rescaled through its spacing; no interpolation happens, so
// denormalize(normalize(x)) is bitwise the identity on u up to one multiply.
struct NormalizedState {
    double s = 0.0;
    GraphProfile profile;  // grid.h = h/sqrt(2t+1), u = v
    double source_t = 0.0;
};

NormalizedState normalize(const GraphProfile& profile);
GraphProfile denormalize(const NormalizedState& state);

// One selected space-time point per parabola level j: exhaustive scan of the
// stored samples maximizing (t)(j - t)H(p,t)^2 over 0 < t < j, first
// maximizer in (t, then r) order.
struct BlowupSelection {
    double j = 0.0;
    double gamma = 1.0;     // recorded only; the scan itself is exhaustive
    int p_index = 0;        // radial node of the selected point
    int sample_index = 0;   // trajectory sample of the selected time
    double t_sel = 0.0;
    double L = 0.0;         // |H| at the selected point
    double alpha_j = 0.0;   // -t_sel * L^2
    double omega_j = 0.0;   // (j - t_sel) * L^2
    double score = 0.0;     // t (j - t) H^2 at the maximizer
};

BlowupSelection select_blowup_point(const FlowTrajectory& traj, double j,
                                    double gamma = 1.0);

// Parabolic rescaling about the selected point: rho = L r, v = L (u - u_p),
// tau = L^2 (t - t_sel). Only the spatial slices are materialized; each
// sample keeps its source time. rho_base marks the selected node.
struct RescaledSample {
    double tau = 0.0;
    GraphProfile profile;  // grid.h = L h, u = v
    double source_t = 0.0;
};

struct RescaledFlow {
    BlowupSelection selection;
    std::vector<RescaledSample> samples;
    int slice0 = 0;       // sample index with tau = 0
    int base_index = 0;   // radial node of the base point
    double rho_base = 0.0;
};

RescaledFlow rescale_flow(const FlowTrajectory& traj, const BlowupSelection& sel);

// Fit of the tau = 0 slice against a translator: N_fit is the mean of the
// rescaled graph velocity over the window |rho - rho_base| <= window, the
// residual its max deviation from N_fit there. degenerate_flat marks windows
// whose velocity never leaves +-1e-14.
struct SolitonMatch {
    double N_fit = 0.0;
    double residual_window = 0.0;
    double residual_full = 0.0;
    double window_radius = 0.0;
    int window_nodes = 0;
    bool degenerate_flat = false;
};

SolitonMatch soliton_match(const RescaledFlow& rflow, double window = 5.0);

// Harnack-type quantity Z = dH/dt|_normal + [H/(2t)] - (d_s H)^2 / kappa1,
// evaluated at every node of the sample nearest to t. The normal time
// derivative comes from centered graph-time differences corrected by the
// tangential drift: dH/dt|_normal = dH/dt|_graph - (u_t u'/(1+u'^2)) dH/dr.
// Nodes with kappa1 <= kappa_floor are masked out of the minimum.
struct HarnackField {
    double t = 0.0;
    std::vector<double> z;
    std::vector<bool> masked;
    int masked_count = 0;
    double z_min = 0.0;
    int argmin = 0;
};

HarnackField harnack_min(const FlowTrajectory& traj, double t, bool add_time_term,
                         double kappa_floor = 1e-8);

} // namespace mcflab
