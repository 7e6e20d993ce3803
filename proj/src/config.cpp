#include "mcflab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "mcflab/errors.hpp"
#include "mcflab/io.hpp"

namespace mcflab {

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::power_graph: return "power_graph";
        case InitialKind::translator: return "translator";
        case InitialKind::expander: return "expander";
        case InitialKind::plane: return "plane";
        case InitialKind::tabulated: return "tabulated";
    }
    return "unknown";
}

double resolved_eps(const InitialData& init, double h) {
    if (init.eps_smooth >= 0.0) return init.eps_smooth;
    return default_eps_smooth(init.alpha, h);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": not a number: '" + v + "'");
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": not an integer: '" + v + "'");
    return x;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const std::size_t comma = v.find(',', pos);
        const std::string item =
            trim(comma == std::string::npos ? v.substr(pos) : v.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(parse_double(key, item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

InitialKind parse_kind(const std::string& v) {
    if (v == "power_graph") return InitialKind::power_graph;
    if (v == "translator") return InitialKind::translator;
    if (v == "expander") return InitialKind::expander;
    if (v == "plane") return InitialKind::plane;
    if (v == "tabulated") return InitialKind::tabulated;
    throw ConfigError("initial_data.kind: unknown kind '" + v + "'");
}

OuterBC parse_bc(const std::string& v) {
    if (v == "one_sided") return OuterBC::one_sided;
    if (v == "frozen") return OuterBC::frozen;
    throw ConfigError("solver.outer_bc: unknown mode '" + v + "'");
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "initial_data.kind") cfg.initial_data.kind = parse_kind(value);
    else if (key == "initial_data.alpha") cfg.initial_data.alpha = parse_double(key, value);
    else if (key == "initial_data.eps_smooth") cfg.initial_data.eps_smooth = parse_double(key, value);
    else if (key == "initial_data.N") cfg.initial_data.N = parse_double(key, value);
    else if (key == "initial_data.c") cfg.initial_data.c = parse_double(key, value);
    else if (key == "initial_data.slope") cfg.initial_data.slope = parse_double(key, value);
    else if (key == "initial_data.height") cfg.initial_data.height = parse_double(key, value);
    else if (key == "initial_data.path") cfg.initial_data.path = value;
    else if (key == "n") cfg.n = static_cast<int>(parse_long(key, value));
    else if (key == "r_max") cfg.r_max = parse_double(key, value);
    else if (key == "h") cfg.h = parse_double(key, value);
    else if (key == "solver.cfl_safety") cfg.solver.cfl_safety = parse_double(key, value);
    else if (key == "solver.t_end") cfg.solver.t_end = parse_double(key, value);
    else if (key == "solver.sample_stride") cfg.solver.sample_stride = static_cast<int>(parse_long(key, value));
    else if (key == "solver.outer_bc") cfg.solver.outer_bc = parse_bc(value);
    else if (key == "solver.max_steps") cfg.solver.max_steps = parse_long(key, value);
    else if (key == "solver.blowup_threshold") cfg.solver.blowup_threshold = parse_double(key, value);
    else if (key == "monitors.C1") cfg.monitors.C1 = parse_double(key, value);
    else if (key == "monitors.C2") cfg.monitors.C2 = parse_double(key, value);
    else if (key == "monitors.C") cfg.monitors.C = parse_double(key, value);
    else if (key == "monitors.epsilon") cfg.monitors.epsilon = parse_double(key, value);
    else if (key == "monitors.c_linear") cfg.monitors.c_linear = parse_double(key, value);
    else if (key == "monitors.c_growth") cfg.monitors.c_growth = parse_double(key, value);
    else if (key == "monitors.delta_growth") cfg.monitors.delta_growth = parse_double(key, value);
    else if (key == "monitors.slope_type_iii") cfg.monitors.slope_type_iii = parse_double(key, value);
    else if (key == "monitors.slope_type_iib") cfg.monitors.slope_type_iib = parse_double(key, value);
    else if (key == "monitors.bound_factor") cfg.monitors.bound_factor = parse_double(key, value);
    else if (key == "monitors.kappa_floor") cfg.monitors.kappa_floor = parse_double(key, value);
    else if (key == "monitors.preserve_tol") cfg.monitors.preserve_tol = parse_double(key, value);
    else if (key == "monitors.A_floor") cfg.monitors.A_floor = parse_double(key, value);
    else if (key == "monitors.delta0") cfg.monitors.delta0 = parse_double(key, value);
    else if (key == "rescaling.j_list") cfg.rescaling.j_list = parse_list(key, value);
    else if (key == "rescaling.gamma") cfg.rescaling.gamma = parse_double(key, value);
    else if (key == "rescaling.window") cfg.rescaling.window = parse_double(key, value);
    else if (key == "table1.alphas") cfg.table1.alphas = parse_list(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += format_double(xs[i]);
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line =
            nl == std::string::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        ++lineno;
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        try {
            set_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path));
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
    set_key(cfg, key, value);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw ConfigError("n must be >= 2");
    if (!(cfg.h > 0.0)) throw ConfigError("h must be positive");
    if (!(cfg.r_max > 0.0)) throw ConfigError("r_max must be positive");
    const double cells = cfg.r_max / cfg.h;
    if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells))
        throw ConfigError("r_max/h must be integral");
    if (cfg.initial_data.kind == InitialKind::power_graph && !(cfg.initial_data.alpha > 0.0))
        throw ConfigError("initial_data.alpha must be positive");
    if (cfg.initial_data.kind == InitialKind::translator && !(cfg.initial_data.N > 0.0))
        throw ConfigError("initial_data.N must be positive");
    if (cfg.initial_data.kind == InitialKind::expander &&
        (!(cfg.initial_data.c > 0.0) || !(cfg.initial_data.slope > 0.0)))
        throw ConfigError("initial_data.c and initial_data.slope must be positive");
    if (cfg.initial_data.kind == InitialKind::tabulated && cfg.initial_data.path.empty())
        throw ConfigError("initial_data.path required for tabulated data");
    if (!(cfg.solver.t_end >= 0.0)) throw ConfigError("solver.t_end must be >= 0");
    if (cfg.solver.sample_stride < 1) throw ConfigError("solver.sample_stride must be >= 1");
    if (cfg.solver.max_steps < 1) throw ConfigError("solver.max_steps must be >= 1");
    if (!(cfg.solver.cfl_safety > 0.0) || cfg.solver.cfl_safety > 1.0)
        throw ConfigError("solver.cfl_safety must be in (0,1]");
    if (!(cfg.rescaling.gamma > 0.0) || cfg.rescaling.gamma > 1.0)
        throw ConfigError("rescaling.gamma must be in (0,1]");
    if (!(cfg.monitors.epsilon > 0.0)) throw ConfigError("monitors.epsilon must be positive");
    if (!(cfg.monitors.delta_growth > 0.0))
        throw ConfigError("monitors.delta_growth must be positive");
    for (double j : cfg.rescaling.j_list)
        if (!(j > 0.0)) throw ConfigError("rescaling.j_list entries must be positive");
    for (double a : cfg.table1.alphas)
        if (!(a > 0.0)) throw ConfigError("table1.alphas entries must be positive");
}

std::string config_echo(const ExperimentConfig& cfg) {
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    };
    kv("initial_data.kind", to_string(cfg.initial_data.kind));
    kv("initial_data.alpha", format_double(cfg.initial_data.alpha));
    kv("initial_data.eps_smooth", format_double(cfg.initial_data.eps_smooth));
    kv("initial_data.N", format_double(cfg.initial_data.N));
    kv("initial_data.c", format_double(cfg.initial_data.c));
    kv("initial_data.slope", format_double(cfg.initial_data.slope));
    kv("initial_data.height", format_double(cfg.initial_data.height));
    kv("initial_data.path", cfg.initial_data.path);
    kv("n", std::to_string(cfg.n));
    kv("r_max", format_double(cfg.r_max));
    kv("h", format_double(cfg.h));
    kv("solver.cfl_safety", format_double(cfg.solver.cfl_safety));
    kv("solver.t_end", format_double(cfg.solver.t_end));
    kv("solver.sample_stride", std::to_string(cfg.solver.sample_stride));
    kv("solver.outer_bc", to_string(cfg.solver.outer_bc));
    kv("solver.max_steps", std::to_string(cfg.solver.max_steps));
    kv("solver.blowup_threshold", format_double(cfg.solver.blowup_threshold));
    kv("monitors.C1", format_double(cfg.monitors.C1));
    kv("monitors.C2", format_double(cfg.monitors.C2));
    kv("monitors.C", format_double(cfg.monitors.C));
    kv("monitors.epsilon", format_double(cfg.monitors.epsilon));
    kv("monitors.c_linear", format_double(cfg.monitors.c_linear));
    kv("monitors.c_growth", format_double(cfg.monitors.c_growth));
    kv("monitors.delta_growth", format_double(cfg.monitors.delta_growth));
    kv("monitors.slope_type_iii", format_double(cfg.monitors.slope_type_iii));
    kv("monitors.slope_type_iib", format_double(cfg.monitors.slope_type_iib));
    kv("monitors.bound_factor", format_double(cfg.monitors.bound_factor));
    kv("monitors.kappa_floor", format_double(cfg.monitors.kappa_floor));
    kv("monitors.preserve_tol", format_double(cfg.monitors.preserve_tol));
    kv("monitors.A_floor", format_double(cfg.monitors.A_floor));
    kv("monitors.delta0", format_double(cfg.monitors.delta0));
    kv("rescaling.j_list", join(cfg.rescaling.j_list));
    kv("rescaling.gamma", format_double(cfg.rescaling.gamma));
    kv("rescaling.window", format_double(cfg.rescaling.window));
    kv("table1.alphas", join(cfg.table1.alphas));
    kv("output_dir", cfg.output_dir);
    return out;
}

} // namespace mcflab
