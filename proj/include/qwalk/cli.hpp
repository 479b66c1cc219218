#pragma once

#include <string>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

// One parsed invocation of the command-line front end.
struct RunConfig {
  std::string subcommand;
  double theta = 0.0;
  long tau = 1;
  int m = 1;
  int n = 1;
  Complex alpha;
  Complex beta;
  LawCase law_case;
  long t_override = -1;       // simulate: explicit final time, -1 = analysis time
  int grid_points = 1001;     // limit: density samples on (-1, 1); odd, >= 101
  double window_fraction = 0.05;
  std::vector<int> orders;
  int workers = 1;
  std::string out_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

// "0.785", "pi/4", "2pi/3", "-pi/6", "pi". Throws InvalidParams on anything else.
double parse_angle(const std::string& text);

// "re,im" with plain floating-point components.
Complex parse_complex_pair(const std::string& text);

// "usual" or "m,n" with positive integers.
LawCase parse_case(const std::string& text);

// Subcommand bodies; throw qwalk exceptions on config errors, IoError on
// unwritable output.
void cmd_simulate(const RunConfig& config);
void cmd_limit(const RunConfig& config);
void cmd_compare(const RunConfig& config);
void cmd_moments(const RunConfig& config);

// Parses argv, dispatches, and maps errors to exit codes
// (0 ok, 2 config/case error, 3 I/O error).
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace qwalk
