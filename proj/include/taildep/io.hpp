#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace taildep {

// 17 significant digits, shortest fixed form for round-tripping doubles
std::string fmt17(double x);

// header "u,v", one pair per line, LF line endings
void write_sample_csv(std::ostream& os, const std::vector<std::pair<double, double>>& uv);

// two numeric columns; a non-numeric first line is treated as a header
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);

// columns w,A with strictly increasing w covering 0 and 1
std::pair<std::vector<double>, std::vector<double>> read_pickands_csv(const std::string& path);

} // namespace taildep
