// Validates the column layout and time monotonicity of emitted CSV files.
// Usage: csv_schema_check trajectory|monitor|noncollapse FILE
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace {

int count_fields(const std::string& line) {
    int n = 1;
    for (char c : line)
        if (c == ',') ++n;
    return n;
}

double first_field(const std::string& line) {
    return std::strtod(line.c_str(), nullptr);
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s trajectory|monitor|noncollapse FILE\n", argv[0]);
        return 2;
    }
    const std::string mode = argv[1];
    int expected_cols = 0;
    std::string expected_header;
    bool monotone_t = false;
    if (mode == "trajectory") {
        expected_header = "t,r,u,du,H,W,A2,kappa1,kappa2";
        expected_cols = 9;
        monotone_t = true;
    } else if (mode == "monitor") {
        expected_header = "t,series,value";
        expected_cols = 3;
    } else if (mode == "noncollapse") {
        expected_header = "r,r_int,r_ext,delta_in,delta_ext";
        expected_cols = 5;
        monotone_t = true;
    } else {
        std::fprintf(stderr, "unknown mode %s\n", mode.c_str());
        return 2;
    }

    std::ifstream f(argv[2], std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cannot open %s\n", argv[2]);
        return 2;
    }
    std::string line;
    if (!std::getline(f, line)) {
        std::fprintf(stderr, "%s: empty file\n", argv[2]);
        return 1;
    }
    if (line != expected_header) {
        std::fprintf(stderr, "%s: bad header '%s'\n", argv[2], line.c_str());
        return 1;
    }
    long rows = 0;
    double last_t = -1e300;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        ++rows;
        if (count_fields(line) != expected_cols) {
            std::fprintf(stderr, "%s: row %ld has wrong column count\n", argv[2], rows);
            return 1;
        }
        const double t = first_field(line);
        if (monotone_t && t < last_t - 1e-15) {
            std::fprintf(stderr, "%s: row %ld breaks monotonicity\n", argv[2], rows);
            return 1;
        }
        last_t = t;
    }
    std::printf("%s: ok (%ld rows)\n", argv[2], rows);
    return 0;
}
