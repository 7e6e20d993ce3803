#include "mcflab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcflab/errors.hpp"

namespace mcflab {

std::string format_double(double x) {
    char buf[48];
    const std::to_chars_result res =
        std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

std::string trajectory_csv(const FlowTrajectory& traj) {
    std::string out = "t,r,u,du,H,W,A2,kappa1,kappa2\n";
    for (const FlowSample& s : traj.samples) {
        const std::string t = format_double(s.t);
        for (int i = 0; i < s.profile.grid.size(); ++i) {
            out += t;
            out += ',';
            out += format_double(s.profile.grid.r[i]);
            out += ',';
            out += format_double(s.profile.u[i]);
            out += ',';
            out += format_double(s.geo.du[i]);
            out += ',';
            out += format_double(s.geo.H[i]);
            out += ',';
            out += format_double(s.geo.W[i]);
            out += ',';
            out += format_double(s.geo.A2[i]);
            out += ',';
            out += format_double(s.geo.kappa1[i]);
            out += ',';
            out += format_double(s.geo.kappa2[i]);
            out += '\n';
        }
    }
    return out;
}

void write_trajectory_csv(const std::string& path, const FlowTrajectory& traj) {
    write_text_file(path, trajectory_csv(traj));
}

std::string monitor_csv(const std::vector<Series>& series) {
    std::string out = "t,series,value\n";
    for (const Series& s : series) {
        for (const SeriesPoint& p : s.points) {
            out += format_double(p.t);
            out += ',';
            out += s.name;
            out += ',';
            out += format_double(p.value);
            out += '\n';
        }
    }
    return out;
}

void write_monitor_csv(const std::string& path, const std::vector<Series>& series) {
    write_text_file(path, monitor_csv(series));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace mcflab
