#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcflab/monitors.hpp"
#include "mcflab/solver.hpp"

namespace mcflab {

// Scientific notation with 17 significant digits via std::to_chars: the
// shortest form that round-trips IEEE doubles exactly and stays bit-stable
// across runs.
std::string format_double(double x);

// FNV-1a 64-bit over the raw bytes of a string.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Header: t,r,u,du,H,W,A2,kappa1,kappa2. One row per (sample, node).
std::string trajectory_csv(const FlowTrajectory& traj);
void write_trajectory_csv(const std::string& path, const FlowTrajectory& traj);

// Header: t,series,value. Series are emitted in the order given.
std::string monitor_csv(const std::vector<Series>& series);
void write_monitor_csv(const std::string& path, const std::vector<Series>& series);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace mcflab
