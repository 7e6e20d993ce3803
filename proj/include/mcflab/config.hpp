#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcflab/monitors.hpp"
#include "mcflab/solver.hpp"

namespace mcflab {

enum class InitialKind { power_graph, translator, expander, plane, tabulated };

std::string to_string(InitialKind k);

struct InitialData {
    InitialKind kind = InitialKind::power_graph;
    double alpha = 2.0;
    double eps_smooth = -1.0;  // < 0 means resolve from alpha and h
    double N = 1.0;
    double c = 1.0;
    double slope = 1.0;
    double height = 0.0;
    std::string path;
};

struct RescalingConfig {
    std::vector<double> j_list{2.0, 4.0};
    double gamma = 1.0;
    double window = 5.0;
};

struct Table1Config {
    std::vector<double> alphas{0.5, 1.5, 2.0, 3.0};
};

struct ExperimentConfig {
    InitialData initial_data;
    int n = 2;
    double r_max = 30.0;
    double h = 0.05;
    SolverConfig solver;
    MonitorConfig monitors;
    RescalingConfig rescaling;
    Table1Config table1;
    std::string output_dir = "out";
};

// eps_smooth < 0 resolves to the grid-dependent default; explicit values
// pass through, including 0 for alpha >= 2.
double resolved_eps(const InitialData& init, double h);

// Flat `key = value` lines, `#` comments, keys are the dot-separated field
// paths of ExperimentConfig. Unknown keys and malformed values throw
// ConfigError with the offending line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// CLI overrides reuse the same key space.
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

void validate(const ExperimentConfig& cfg);

// Canonical echo: every field as `key = value` lines in fixed order, so the
// manifest's config echo is bit-stable.
std::string config_echo(const ExperimentConfig& cfg);

} // namespace mcflab
