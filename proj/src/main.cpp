#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcflab/errors.hpp"
#include "mcflab/harness.hpp"
#include "mcflab/io.hpp"
#include "mcflab/monitors.hpp"
#include "mcflab/solitons.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    bool check = false;
    double alpha = 0.0;
    int dim = 0;
    double rmax = 0.0;
    double h = 0.0;
    double tend = 0.0;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* dim_opt = nullptr;
    CLI::Option* rmax_opt = nullptr;
    CLI::Option* h_opt = nullptr;
    CLI::Option* tend_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--config", o.config_path, "config file (key = value lines)");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_flag("--check", o.check, "assert built-in tolerances");
    o.alpha_opt = cmd->add_option("--alpha", o.alpha, "power-graph exponent");
    o.dim_opt = cmd->add_option("--dim", o.dim, "base dimension n");
    o.rmax_opt = cmd->add_option("--rmax", o.rmax, "domain radius");
    o.h_opt = cmd->add_option("--h", o.h, "grid spacing");
    o.tend_opt = cmd->add_option("--tend", o.tend, "final time");
}

mcflab::ExperimentConfig build_config(const CommonOpts& o, bool alpha_is_table1) {
    mcflab::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = mcflab::load_config(o.config_path);
    if (o.alpha_opt->count()) {
        if (alpha_is_table1)
            cfg.table1.alphas = {o.alpha};
        else
            cfg.initial_data.alpha = o.alpha;
    }
    if (o.dim_opt->count()) cfg.n = o.dim;
    if (o.rmax_opt->count()) cfg.r_max = o.rmax;
    if (o.h_opt->count()) cfg.h = o.h;
    if (o.tend_opt->count()) cfg.solver.t_end = o.tend;
    if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
    mcflab::validate(cfg);
    return cfg;
}

void print_summary_fields(const std::string& dir, bool with_fit) {
    const nlohmann::json j =
        nlohmann::json::parse(mcflab::read_text_file(dir + "/summary.json"));
    std::printf("classification_hint = %s\n",
                j["classification_hint"].get<std::string>().c_str());
    if (!j["loglog_slope"].is_null())
        std::printf("loglog_slope = %.6f\n", j["loglog_slope"].get<double>());
    if (with_fit && !j["soliton_fit"]["N"].is_null())
        std::printf("soliton_fit: N = %.6f residual = %.6f\n",
                    j["soliton_fit"]["N"].get<double>(),
                    j["soliton_fit"]["residual"].get<double>());
}

int cmd_evolve(const CommonOpts& o, bool with_rescaling, bool print_class) {
    const mcflab::ExperimentConfig cfg = build_config(o, false);
    const mcflab::RunManifest m = mcflab::run_experiment(cfg, o.check, with_rescaling);
    std::printf("termination = %s\n", m.termination.c_str());
    std::printf("output_dir = %s\n", cfg.output_dir.c_str());
    if (print_class || with_rescaling)
        print_summary_fields(cfg.output_dir, with_rescaling);
    return 0;
}

int cmd_soliton(const CommonOpts& o) {
    const mcflab::ExperimentConfig cfg = build_config(o, false);
    mcflab::SolitonProfile prof;
    if (cfg.initial_data.kind == mcflab::InitialKind::translator) {
        prof = mcflab::translator_profile(cfg.initial_data.N, cfg.n, cfg.r_max, cfg.h);
    } else if (cfg.initial_data.kind == mcflab::InitialKind::expander) {
        prof = mcflab::expander_profile(cfg.initial_data.c, cfg.n,
                                        cfg.initial_data.slope, cfg.r_max, cfg.h);
    } else {
        throw mcflab::ConfigError(
            "soliton needs initial_data.kind = translator or expander");
    }
    std::filesystem::create_directories(cfg.output_dir);

    mcflab::FlowTrajectory slice;
    slice.samples.push_back(
        {0.0, prof.profile, mcflab::geometry_at(prof.profile)});
    mcflab::write_trajectory_csv(cfg.output_dir + "/soliton.csv", slice);

    const double stencil_res =
        prof.kind == mcflab::SolitonKind::translator
            ? mcflab::translation_residual(prof.profile, prof.parameter)
            : mcflab::expander_residual(prof.profile, prof.parameter);
    nlohmann::ordered_json j;
    j["kind"] = mcflab::to_string(prof.kind);
    j["parameter"] = prof.parameter;
    j["u0"] = prof.profile.u[0];
    j["residual_max"] = prof.residual_max;
    j["stencil_residual"] = stencil_res;
    j["asymptotic_slope_ratio"] = prof.asymptotic_slope_ratio;
    mcflab::write_text_file(cfg.output_dir + "/soliton_summary.json",
                            j.dump(2) + "\n");

    std::printf("kind = %s\n", mcflab::to_string(prof.kind).c_str());
    std::printf("residual_max = %s\n", mcflab::format_double(prof.residual_max).c_str());
    std::printf("output_dir = %s\n", cfg.output_dir.c_str());
    return 0;
}

int cmd_noncollapse(const CommonOpts& o) {
    const mcflab::ExperimentConfig cfg = build_config(o, false);
    const mcflab::GraphProfile profile = mcflab::make_initial_profile(cfg);
    const mcflab::NoncollapseSample nc = mcflab::noncollapse_delta(profile);
    std::filesystem::create_directories(cfg.output_dir);

    std::string csv = "r,r_int,r_ext,delta_in,delta_ext\n";
    for (std::size_t i = 0; i < nc.r_int.size(); ++i) {
        csv += mcflab::format_double(profile.grid.r[i]) + "," +
               mcflab::format_double(nc.r_int[i]) + "," +
               mcflab::format_double(nc.r_ext[i]) + "," +
               mcflab::format_double(nc.delta_in[i]) + "," +
               mcflab::format_double(nc.delta_ext[i]) + "\n";
    }
    mcflab::write_text_file(cfg.output_dir + "/noncollapse.csv", csv);

    nlohmann::ordered_json j;
    j["global_min_delta"] = nc.global_min_delta;
    j["ext_unbounded"] = nc.ext_unbounded;
    mcflab::write_text_file(cfg.output_dir + "/noncollapse_summary.json",
                            j.dump(2) + "\n");

    std::printf("global_min_delta = %s\n",
                mcflab::format_double(nc.global_min_delta).c_str());
    std::printf("ext_unbounded = %s\n", nc.ext_unbounded ? "true" : "false");
    std::printf("output_dir = %s\n", cfg.output_dir.c_str());

    if (o.check && cfg.monitors.delta0 >= 0.0 &&
        !(nc.global_min_delta >= cfg.monitors.delta0 - cfg.monitors.preserve_tol))
        throw mcflab::CheckFailure("global_min_delta below configured delta0");
    return 0;
}

int cmd_table1(const CommonOpts& o) {
    const mcflab::ExperimentConfig cfg = build_config(o, true);
    mcflab::table1_suite(cfg, o.check);
    std::printf("output_dir = %s\n", cfg.output_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotationally symmetric graph mean curvature flow laboratory"};
    app.require_subcommand(1);

    CommonOpts evolve_o, soliton_o, rescale_o, classify_o, nc_o, table1_o;
    CLI::App* evolve = app.add_subcommand("evolve", "run the flow and monitors");
    add_common(evolve, evolve_o);
    CLI::App* soliton = app.add_subcommand("soliton", "solve a soliton profile ODE");
    add_common(soliton, soliton_o);
    CLI::App* rescale =
        app.add_subcommand("rescale", "run the flow plus blow-up rescalings");
    add_common(rescale, rescale_o);
    CLI::App* classify =
        app.add_subcommand("classify", "run the flow and report the type hint");
    add_common(classify, classify_o);
    CLI::App* noncollapse =
        app.add_subcommand("noncollapse", "tangent-ball scan of the initial profile");
    add_common(noncollapse, nc_o);
    CLI::App* table1 = app.add_subcommand("table1", "run the power-graph suite");
    add_common(table1, table1_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (evolve->parsed()) return cmd_evolve(evolve_o, false, false);
        if (soliton->parsed()) return cmd_soliton(soliton_o);
        if (rescale->parsed()) return cmd_evolve(rescale_o, true, false);
        if (classify->parsed()) return cmd_evolve(classify_o, false, true);
        if (noncollapse->parsed()) return cmd_noncollapse(nc_o);
        if (table1->parsed()) return cmd_table1(table1_o);
    } catch (const mcflab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const mcflab::CheckFailure& e) {
        std::fprintf(stderr, "check failure: %s\n", e.what());
        return 3;
    } catch (const mcflab::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
