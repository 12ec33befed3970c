#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isoperf/groups.hpp"

namespace isoperf {

/// One fully resolved CLI invocation. Exit codes: 0 success (and no
/// violations for `verify`), 1 verify found violations, 2 bad spec or
/// arguments, 3 resource cap or I/O failure.
struct RunConfig {
  enum class Command { Growth, Bounds, Transform, Profile, Folner, Cheeger, Verify };
  enum class Format { Csv, Json };

  Command command = Command::Growth;
  GroupSpec group;
  int radius = 8;
  int max_size = 6;
  bool max_size_set = false;  // an explicit --max-size opts folner into the
                              // exact window search on infinite groups
  double n = 0;  // folner index; row cap for bounds/transform when > 0
  std::vector<double> lambdas;
  Format format = Format::Csv;
  std::string out_path;  // empty writes to stdout
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Execute one command, writing its report to out_path (or stdout).
int run(const RunConfig& config);

/// Parse argv (CLI11 grammar, one subcommand per run) and execute.
int run_cli(int argc, const char* const* argv);

}  // namespace isoperf
