#ifndef RCNS_IO_HPP
#define RCNS_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "solver.hpp"

namespace rcns::io {

std::string sha1_hex(std::string_view data);
// hash of "blob <size>\0<content>", as git computes it for file contents
std::string git_blob_sha1(std::string_view content);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

// numeric formatting used by every CSV writer (deterministic, full precision)
std::string format_double(double x);

// snapshot CSV with header xi,v,u,pi
void write_state_csv(const std::string& path, const solver::FieldState& state);

struct ChartSeries {
  std::string name;
  std::vector<double> t;
  std::vector<double> y;
};

// minimal SVG line chart; log_y clamps nonpositive values to the floor
void write_svg_chart(const std::string& path, const std::string& title, const ChartSeries& series,
                     bool log_y);

}  // namespace rcns::io

#endif
