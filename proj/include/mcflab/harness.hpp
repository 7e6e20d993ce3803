#pragma once

#include <string>
#include <vector>

#include "mcflab/config.hpp"
#include "mcflab/rescaling.hpp"

namespace mcflab {

struct FileRecord {
    std::string name;
    std::string checksum;  // FNV-1a 64 of the file bytes, hex
};

struct RunManifest {
    std::string status;  // "running" then "finalized"
    std::string version;
    std::string config;  // canonical echo
    std::string started;
    std::string finished;
    std::string termination;
    std::vector<FileRecord> files;
};

GraphProfile make_initial_profile(const ExperimentConfig& cfg);

// Full pipeline: initial data, evolve, monitors, optional blow-up
// rescalings, CSV + summary emission under cfg.output_dir. The manifest is
// written with status "running" before the evolve and finalized afterwards,
// so a crash leaves evidence. check = true asserts the per-kind tolerances
// and throws CheckFailure on violation (after the outputs are written).
RunManifest run_experiment(const ExperimentConfig& cfg, bool check = false,
                           bool with_rescaling = false);

// One run per alpha in cfg.table1.alphas under output_dir/alpha_<value>;
// failures are recorded per row and do not stop the suite. Emits
// table1_summary.csv next to the per-run outputs. check = true asserts the
// per-row trend bounds and throws CheckFailure naming the failing rows.
RunManifest table1_suite(const ExperimentConfig& cfg, bool check = false);

} // namespace mcflab
