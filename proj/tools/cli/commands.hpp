#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <w11tools/report.hpp>

namespace w11cli {

using w11tools::ordered_json;

/// Parsed command line. Unused fields keep their defaults.
struct RunConfig {
  std::string command;
  std::string in, u0, u1, slab_out, report, csv;
  std::vector<std::string> faces;
  std::vector<double> point;
  std::string manifold = "sphere:3";
  std::string family = "constant";
  std::string norm = "euclidean";
  std::vector<double> schedule, radii;
  double R = 1.0;
  double L = 1.0;
  double h = 0.125;
  double h_fine = 0.0;
  int n_max = 4;
  int s = 1;
  int d = 1;
  long n = 16;
  int bumps = 3;
  std::uint64_t seed = 1;
};

/// Runs one subcommand and returns its report. Writes the slab or corpus
/// file when the config asks for one.
ordered_json run(const RunConfig& c);

/// Scalar leaves of a report as dotted names, arrays indexed by position.
ordered_json flatten(const ordered_json& report);

}  // namespace w11cli
