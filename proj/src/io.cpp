#include "taildep/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace taildep {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_sample_csv(std::ostream& os, const std::vector<std::pair<double, double>>& uv) {
    os << "u,v\n";
    for (const auto& [u, v] : uv) os << fmt17(u) << "," << fmt17(v) << "\n";
}

namespace {

bool parse_two(const std::string& line, double* a, double* b) {
    std::string s = line;
    for (char& c : s) {
        if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream is(s);
    return static_cast<bool>(is >> *a >> *b);
}

std::vector<std::pair<double, double>> read_two_columns(const std::string& path,
                                                        const std::string& what) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(what + ": cannot open '" + path + "'");
    std::vector<std::pair<double, double>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        double a, b;
        if (!parse_two(line, &a, &b)) {
            if (lineno == 1) continue; // header
            throw std::runtime_error(what + ": parse error at " + path + ":" +
                                     std::to_string(lineno));
        }
        out.emplace_back(a, b);
    }
    if (out.empty()) throw std::runtime_error(what + ": no data rows in '" + path + "'");
    return out;
}

} // namespace

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
    return read_two_columns(path, "input");
}

std::pair<std::vector<double>, std::vector<double>> read_pickands_csv(const std::string& path) {
    const auto rows = read_two_columns(path, "pickands table");
    std::vector<double> w, a;
    w.reserve(rows.size());
    a.reserve(rows.size());
    for (const auto& [x, y] : rows) {
        w.push_back(x);
        a.push_back(y);
    }
    return {std::move(w), std::move(a)};
}

} // namespace taildep
