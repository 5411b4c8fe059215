#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace augsill {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Space separated list of shortest round-trip decimals.
std::string format_list(const std::vector<double>& values);
std::vector<double> parse_list(std::string_view text);

/// Row-major CSV with one matrix row per line and no header.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

/// Writes `contents` to `path`, throwing DataError on failure.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace augsill
