#include "mcflab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <limits>

#include <json.hpp>

#include "mcflab/errors.hpp"
#include "mcflab/io.hpp"
#include "mcflab/monitors.hpp"
#include "mcflab/solitons.hpp"

namespace mcflab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return std::string(buf);
}

std::string compact_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    std::string s(buf);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

GraphProfile tabulated_profile(const ExperimentConfig& cfg) {
    const std::string text = read_text_file(cfg.initial_data.path);
    std::vector<double> rs, us;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line =
            nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(cfg.initial_data.path + ": expected r,u rows");
        rs.push_back(std::strtod(line.substr(0, comma).c_str(), nullptr));
        us.push_back(std::strtod(line.substr(comma + 1).c_str(), nullptr));
    }
    if (rs.size() < 8) throw ConfigError(cfg.initial_data.path + ": needs >= 8 rows");
    if (std::abs(rs[0]) > 1e-12)
        throw ConfigError(cfg.initial_data.path + ": first node must sit at r = 0");
    const double h = rs[1] - rs[0];
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (std::abs(rs[i] - rs[i - 1] - h) > 1e-9)
            throw ConfigError(cfg.initial_data.path + ": grid spacing is not uniform");
    RadialGrid grid = make_grid(cfg.n, rs.back(), h);
    if (grid.size() != static_cast<int>(us.size()))
        throw ConfigError(cfg.initial_data.path + ": node count mismatch");
    return make_profile(grid, std::move(us));
}

struct RescaleRow {
    double j = 0.0;
    BlowupSelection sel;
    SolitonMatch fit;
    double base_H_rescaled = 0.0;
    double effective_gamma = 1.0;
};

struct RunOutputs {
    FlowTrajectory traj;
    bool classified = false;
    ClassifierReport cls;
    PinchingReport pinch;
    bool nc_ran = false;
    NoncollapseReport nc;
    Series w_resid;
    Series grad1;
    Series grad2;
    EHReport eh;
    std::vector<RescaleRow> rescales;
    std::vector<RescaledFlow> rflows;
    std::vector<std::pair<std::string, std::string>> checks;
};

void add_check(RunOutputs& out, const std::string& name, const std::string& value) {
    out.checks.emplace_back(name, value);
}

void add_check(RunOutputs& out, const std::string& name, double value) {
    out.checks.emplace_back(name, format_double(value));
}

double max_abs_A(const FlowTrajectory& traj) {
    double worst = 0.0;
    for (const FlowSample& s : traj.samples)
        for (double a : s.geo.A2) worst = std::max(worst, a);
    return std::sqrt(worst);
}

Series axis_A_series(const FlowTrajectory& traj) {
    Series s;
    s.name = "absA_axis";
    for (const FlowSample& smp : traj.samples)
        s.points.push_back({smp.t, std::sqrt(smp.geo.A2[0])});
    return s;
}

double value_at(const Series& s, double t) {
    double best = std::numeric_limits<double>::infinity();
    double v = 0.0;
    for (const SeriesPoint& p : s.points) {
        const double d = std::abs(p.t - t);
        if (d < best) {
            best = d;
            v = p.value;
        }
    }
    return v;
}

double linear_interp(const std::vector<double>& x, const std::vector<double>& y,
                     double xq) {
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    const std::size_t hi =
        std::upper_bound(x.begin(), x.end(), xq) - x.begin();
    const std::size_t lo = hi - 1;
    const double w = (xq - x[lo]) / (x[hi] - x[lo]);
    return (1.0 - w) * y[lo] + w * y[hi];
}

RunOutputs run_core(const ExperimentConfig& cfg, bool with_rescaling) {
    RunOutputs out;
    GraphProfile initial = make_initial_profile(cfg);
    out.traj = evolve(initial, cfg.solver);

    try {
        out.cls = type_classifier(out.traj, cfg.monitors);
        out.classified = true;
    } catch (const ConfigError&) {
        add_check(out, "classifier", "skipped_too_few_samples");
    }
    out.pinch = pinching_check(out.traj, cfg.monitors);
    try {
        out.nc = noncollapse_preservation(out.traj, cfg.monitors);
        out.nc_ran = true;
    } catch (const ConfigError&) {
        add_check(out, "noncollapse", "skipped_nonpositive_H");
    }
    if (out.traj.samples.size() >= 3) out.w_resid = w_evolution_residual(out.traj);
    out.grad1 = gradient_ratio(out.traj, 1, cfg.monitors.kappa_floor);
    out.grad2 = gradient_ratio(out.traj, 2, cfg.monitors.kappa_floor);
    out.eh = eh_conditions(out.traj, cfg.monitors);

    add_check(out, "steps_taken", static_cast<double>(out.traj.steps_taken));
    add_check(out, "max_absA", max_abs_A(out.traj));

    if (with_rescaling) {
        SolverConfig fine = cfg.solver;
        fine.sample_stride = std::max(1, cfg.solver.sample_stride / 2);
        FlowTrajectory traj_fine = evolve(make_initial_profile(cfg), fine);
        for (double j : cfg.rescaling.j_list) {
            if (out.traj.samples.back().t < j - 1e-12) {
                add_check(out, "rescale_j" + compact_number(j), "skipped_outside_window");
                continue;
            }
            RescaleRow row;
            row.j = j;
            row.sel = select_blowup_point(out.traj, j, cfg.rescaling.gamma);
            RescaledFlow rf = rescale_flow(out.traj, row.sel);
            row.fit = soliton_match(rf, cfg.rescaling.window);
            const GeometrySample base_geo =
                geometry_at(rf.samples[rf.slice0].profile);
            row.base_H_rescaled = base_geo.H[rf.base_index];
            const BlowupSelection fine_sel =
                select_blowup_point(traj_fine, j, cfg.rescaling.gamma);
            row.effective_gamma =
                fine_sel.score > 0.0 ? row.sel.score / fine_sel.score : 1.0;
            out.rescales.push_back(row);
            out.rflows.push_back(std::move(rf));
        }
    }
    return out;
}

ordered_json config_json(const ExperimentConfig& cfg) {
    ordered_json j = ordered_json::object();
    const std::string echo = config_echo(cfg);
    std::size_t pos = 0;
    while (pos < echo.size()) {
        const std::size_t nl = echo.find('\n', pos);
        const std::string line = echo.substr(pos, nl - pos);
        pos = nl + 1;
        const std::size_t eq = line.find(" = ");
        j[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

double series_min(const Series& s) {
    double m = std::numeric_limits<double>::infinity();
    for (const SeriesPoint& p : s.points) m = std::min(m, p.value);
    return m;
}

std::string summary_json(const ExperimentConfig& cfg, const RunOutputs& out) {
    ordered_json j;
    j["config"] = config_json(cfg);
    j["termination"] = to_string(out.traj.termination);
    j["classification_hint"] =
        out.classified ? to_string(out.cls.hint) : "not_classified";
    j["loglog_slope"] = out.classified ? ordered_json(out.cls.loglog_slope)
                                       : ordered_json(nullptr);
    j["max_tA2"] = out.classified ? ordered_json(out.cls.max_T) : ordered_json(nullptr);
    j["pinching_margins"] = {
        {"lower", series_min(out.pinch.margin_lower)},
        {"upper", series_min(out.pinch.margin_upper)},
        {"growth", series_min(out.pinch.margin_growth)},
        {"preserved_lower", out.pinch.preserved[0]},
        {"preserved_upper", out.pinch.preserved[1]},
        {"preserved_growth", out.pinch.preserved[2]},
    };
    j["delta_min_series_min"] = out.nc_ran ? ordered_json(series_min(out.nc.min_delta))
                                           : ordered_json(nullptr);
    if (!out.rescales.empty()) {
        const RescaleRow& last = out.rescales.back();
        j["soliton_fit"] = {{"N", last.fit.N_fit},
                            {"residual", last.fit.residual_window}};
    } else {
        j["soliton_fit"] = {{"N", nullptr}, {"residual", nullptr}};
    }
    ordered_json checks = ordered_json::object();
    for (const std::pair<std::string, std::string>& c : out.checks)
        checks[c.first] = c.second;
    for (const RescaleRow& row : out.rescales) {
        const std::string tag = "j" + compact_number(row.j);
        checks["rescale_" + tag + "_t_sel"] = format_double(row.sel.t_sel);
        checks["rescale_" + tag + "_L"] = format_double(row.sel.L);
        checks["rescale_" + tag + "_base_H"] = format_double(row.base_H_rescaled);
        checks["rescale_" + tag + "_N_fit"] = format_double(row.fit.N_fit);
        checks["rescale_" + tag + "_residual"] = format_double(row.fit.residual_window);
        checks["rescale_" + tag + "_effective_gamma"] =
            format_double(row.effective_gamma);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
    ordered_json j;
    j["status"] = m.status;
    j["version"] = m.version;
    j["config"] = m.config;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["termination"] = m.termination;
    ordered_json files = ordered_json::array();
    for (const FileRecord& f : m.files)
        files.push_back({{"name", f.name}, {"checksum", f.checksum}});
    j["files"] = files;
    return j.dump(2) + "\n";
}

void write_manifest(const std::string& dir, const RunManifest& m) {
    write_text_file(dir + "/manifest.json", manifest_json(m));
}

void emit_file(const std::string& dir, const std::string& name,
               const std::string& content, RunManifest& m) {
    write_text_file(dir + "/" + name, content);
    m.files.push_back({name, hex64(fnv1a64(content))});
}

FlowTrajectory single_slice(const GraphProfile& profile) {
    FlowTrajectory t;
    t.samples.push_back({profile.t, profile, geometry_at(profile)});
    return t;
}

void emit_run(const ExperimentConfig& cfg, const RunOutputs& out, RunManifest& m) {
    emit_file(cfg.output_dir, "trajectory.csv", trajectory_csv(out.traj), m);
    std::vector<Series> series;
    if (out.classified) series.push_back(out.cls.T);
    series.push_back(axis_A_series(out.traj));
    series.push_back(out.pinch.margin_lower);
    series.push_back(out.pinch.margin_upper);
    series.push_back(out.pinch.margin_growth);
    if (out.nc_ran) series.push_back(out.nc.min_delta);
    if (!out.w_resid.points.empty()) series.push_back(out.w_resid);
    series.push_back(out.grad1);
    series.push_back(out.grad2);
    series.push_back(out.eh.gradient_bound);
    series.push_back(out.eh.growth_bound);
    emit_file(cfg.output_dir, "monitors.csv", monitor_csv(series), m);
    for (std::size_t k = 0; k < out.rflows.size(); ++k) {
        const std::string name =
            "rescaled_j" + compact_number(out.rescales[k].j) + ".csv";
        const RescaledFlow& rf = out.rflows[k];
        emit_file(cfg.output_dir, name,
                  trajectory_csv(single_slice(rf.samples[rf.slice0].profile)), m);
    }
    emit_file(cfg.output_dir, "summary.json", summary_json(cfg, out), m);
}

// Per-kind assertions behind --check. Tolerances live here, next to the
// initial-data kinds they certify.
void run_checks(const ExperimentConfig& cfg, RunOutputs& out) {
    std::vector<std::string> failures;
    const FlowSample& last = out.traj.samples.back();

    if (cfg.initial_data.kind == InitialKind::translator) {
        const SolitonProfile g =
            translator_profile(cfg.initial_data.N, cfg.n, cfg.r_max, cfg.h);
        double err = 0.0;
        for (int i = 0; i < last.profile.grid.size(); ++i)
            err = std::max(err, std::abs(last.profile.u[i] -
                                         (g.profile.u[i] +
                                          cfg.initial_data.N * last.t)));
        add_check(out, "translator_steadiness_err", err);
        if (!(err <= 5e-3)) failures.push_back("translator_steadiness");
    }
    if (cfg.initial_data.kind == InitialKind::expander) {
        const SolitonProfile e = expander_profile(
            cfg.initial_data.c, cfg.n, cfg.initial_data.slope, cfg.r_max, cfg.h);
        const double c = std::sqrt(2.0 * last.t + 1.0);
        double err = 0.0;
        for (int i = 0; i < last.profile.grid.size(); ++i) {
            const double r = last.profile.grid.r[i];
            if (r > 10.0) break;
            const double E = linear_interp(e.profile.grid.r, e.profile.u, r / c);
            err = std::max(err,
                           std::abs(last.profile.u[i] - c * E) / std::max(1.0, E));
        }
        add_check(out, "expander_self_similarity_err", err);
        if (!(err <= 1e-2)) failures.push_back("expander_self_similarity");
    }
    if (cfg.initial_data.kind == InitialKind::plane) {
        const double a = max_abs_A(out.traj);
        add_check(out, "plane_max_absA", a);
        if (!(a <= 1e-12)) failures.push_back("plane_flatness");
    }
    if (cfg.initial_data.kind == InitialKind::power_graph) {
        add_check(out, "termination", to_string(out.traj.termination));
        if (out.traj.termination != Termination::reached_t_end)
            failures.push_back("power_graph_completion");
    }
    if (!failures.empty()) {
        std::string msg = "check failures:";
        for (const std::string& f : failures) msg += " " + f;
        throw CheckFailure(msg);
    }
}

} // namespace

GraphProfile make_initial_profile(const ExperimentConfig& cfg) {
    switch (cfg.initial_data.kind) {
        case InitialKind::power_graph: {
            RadialGrid grid = make_grid(cfg.n, cfg.r_max, cfg.h);
            const double eps = resolved_eps(cfg.initial_data, cfg.h);
            return make_profile(grid, power_graph(grid, cfg.initial_data.alpha, eps));
        }
        case InitialKind::translator:
            return translator_profile(cfg.initial_data.N, cfg.n, cfg.r_max, cfg.h)
                .profile;
        case InitialKind::expander:
            return expander_profile(cfg.initial_data.c, cfg.n, cfg.initial_data.slope,
                                    cfg.r_max, cfg.h)
                .profile;
        case InitialKind::plane: {
            RadialGrid grid = make_grid(cfg.n, cfg.r_max, cfg.h);
            return make_profile(grid, plane_graph(grid, cfg.initial_data.height));
        }
        case InitialKind::tabulated:
            return tabulated_profile(cfg);
    }
    throw ConfigError("unknown initial data kind");
}

RunManifest run_experiment(const ExperimentConfig& cfg, bool check,
                           bool with_rescaling) {
    validate(cfg);
    std::filesystem::create_directories(cfg.output_dir);

    RunManifest m;
    m.status = "running";
    m.version = kVersion;
    m.config = config_echo(cfg);
    m.started = now_utc();
    write_manifest(cfg.output_dir, m);

    RunOutputs out = run_core(cfg, with_rescaling);
    if (check) {
        try {
            run_checks(cfg, out);
        } catch (const CheckFailure&) {
            emit_run(cfg, out, m);
            m.status = "finalized";
            m.finished = now_utc();
            m.termination = to_string(out.traj.termination);
            write_manifest(cfg.output_dir, m);
            throw;
        }
    }
    emit_run(cfg, out, m);
    m.status = "finalized";
    m.finished = now_utc();
    m.termination = to_string(out.traj.termination);
    write_manifest(cfg.output_dir, m);
    return m;
}

RunManifest table1_suite(const ExperimentConfig& cfg, bool check) {
    validate(cfg);
    std::filesystem::create_directories(cfg.output_dir);

    RunManifest m;
    m.status = "running";
    m.version = kVersion;
    m.config = config_echo(cfg);
    m.started = now_utc();
    write_manifest(cfg.output_dir, m);

    std::string table =
        "alpha,status,termination,hint,loglog_slope,max_tA2,max_absA,absA_axis_t1,"
        "absA_axis_end\n";
    std::vector<std::string> failures;

    for (double alpha : cfg.table1.alphas) {
        ExperimentConfig sub = cfg;
        sub.initial_data.kind = InitialKind::power_graph;
        sub.initial_data.alpha = alpha;
        sub.output_dir = cfg.output_dir + "/alpha_" + compact_number(alpha);
        std::string status = "ok";
        std::string termination = "none";
        std::string hint = "none";
        double slope = 0.0, maxT = 0.0, maxA = 0.0, a1 = 0.0, aend = 0.0;
        try {
            std::filesystem::create_directories(sub.output_dir);
            RunOutputs out = run_core(sub, false);
            RunManifest subm;
            subm.status = "finalized";
            subm.version = kVersion;
            subm.config = config_echo(sub);
            subm.started = m.started;
            subm.termination = to_string(out.traj.termination);
            emit_run(sub, out, subm);
            subm.finished = now_utc();
            write_manifest(sub.output_dir, subm);
            for (const FileRecord& f : subm.files)
                m.files.push_back({"alpha_" + compact_number(alpha) + "/" + f.name,
                                   f.checksum});

            termination = to_string(out.traj.termination);
            if (out.classified) {
                hint = to_string(out.cls.hint);
                slope = out.cls.loglog_slope;
                maxT = out.cls.max_T;
            }
            maxA = max_abs_A(out.traj);
            const Series axis = axis_A_series(out.traj);
            a1 = value_at(axis, 1.0);
            aend = axis.points.back().value;

            if (check) {
                // Trend bounds per row, matching the published table shape:
                // alpha = 2 bounded with an axis floor, alpha = 3 growing,
                // alpha = 1.5 decaying to half, alpha = 0.5 bounded T.
                if (std::abs(alpha - 2.0) < 1e-12) {
                    const double cap = 2.0 * cfg.n * cfg.n * (1.0 + 1e-2);
                    if (!(maxA <= cap)) failures.push_back("alpha2_A_cap");
                    double axis_min = std::numeric_limits<double>::infinity();
                    for (const SeriesPoint& p : axis.points)
                        axis_min = std::min(axis_min, p.value);
                    if (!(axis_min >= cfg.monitors.A_floor))
                        failures.push_back("alpha2_A_floor");
                }
                if (std::abs(alpha - 3.0) < 1e-12) {
                    for (std::size_t i = 1; i < axis.points.size(); ++i)
                        if (axis.points[i].t >= 1.0 && axis.points[i - 1].t >= 1.0 &&
                            !(axis.points[i].value > axis.points[i - 1].value)) {
                            failures.push_back("alpha3_A_increasing");
                            break;
                        }
                    if (!(slope >= cfg.monitors.slope_type_iib) ||
                        hint != "type_iib_consistent")
                        failures.push_back("alpha3_type_iib");
                }
                if (std::abs(alpha - 1.5) < 1e-12) {
                    for (std::size_t i = 1; i < axis.points.size(); ++i)
                        if (axis.points[i].t >= 1.0 && axis.points[i - 1].t >= 1.0 &&
                            !(axis.points[i].value < axis.points[i - 1].value)) {
                            failures.push_back("alpha1p5_A_decreasing");
                            break;
                        }
                    if (!(aend <= 0.5 * a1)) failures.push_back("alpha1p5_A_halving");
                }
                if (std::abs(alpha - 0.5) < 1e-12) {
                    const double T1 = value_at(out.cls.T, 1.0);
                    double late = 0.0;
                    for (const SeriesPoint& p : out.cls.T.points)
                        if (p.t >= 1.0) late = std::max(late, p.value);
                    if (!(late <= 1.1 * T1)) failures.push_back("alpha0p5_T_bounded");
                    if (hint != "type_iii_consistent")
                        failures.push_back("alpha0p5_type_iii");
                }
            }
        } catch (const std::exception& e) {
            status = std::string("error: ") + e.what();
            for (char& ch : status)
                if (ch == ',' || ch == '\n') ch = ';';
        }
        table += compact_number(alpha) + "," + status + "," + termination + "," +
                 hint + "," + format_double(slope) + "," + format_double(maxT) +
                 "," + format_double(maxA) + "," + format_double(a1) + "," +
                 format_double(aend) + "\n";
    }

    emit_file(cfg.output_dir, "table1_summary.csv", table, m);
    m.status = "finalized";
    m.finished = now_utc();
    m.termination = "suite_complete";
    write_manifest(cfg.output_dir, m);

    if (check && !failures.empty()) {
        std::string msg = "table1 check failures:";
        for (const std::string& f : failures) msg += " " + f;
        throw CheckFailure(msg);
    }
    return m;
}

} // namespace mcflab
