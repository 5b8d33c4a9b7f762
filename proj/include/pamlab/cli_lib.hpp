#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pamlab/graph.hpp"

namespace pamlab {

// One parsed invocation. Fields cover every subcommand; each command reads
// the ones it needs after validate() has checked them.
struct RunConfig {
  std::string command;  // generate | spectrum | walk | distances | scaling |
                        // ppt | validate
  Variant variant = Variant::d;
  Construction construction = Construction::sequential;
  std::int64_t n = 1000;
  int m = 2;
  double delta = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::int64_t reps = 1'000'000;
  int pairs = 1000;
  double zeta = 0.05;
  double eta = 0.001;
  std::int64_t cap = 1'000'000;  // PPT node cap / good-pair M
  int r = 2;
  int depth = 2;
  int grid = 4000;
  int k = 10;
  std::vector<std::int64_t> n_list;
  std::string mode = "plain";  // spectrum kernel mode
  std::string output;          // file path; empty writes to stdout
  std::string format = "csv";  // csv | json
  int threads = 1;
  bool quick = false;

  std::string validate() const;  // empty when consistent
};

// Executes one subcommand; returns the process exit code
// (0 ok, 1 validation failure, 2 usage error).
int run(const RunConfig& config);

// Default output directory (PAMLAB_OUT env var, "." when unset).
std::string default_output_dir();

}  // namespace pamlab
