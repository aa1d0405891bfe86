#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coarse::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kInconclusive = 2, kUsage = 64 };

struct RunConfig {
  std::string command;
  std::string graph_path;  // "-" reads standard input
  std::string out_path;    // empty: JSON goes to standard output
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string mode = "exact";
  double tol = 1e-9;
  std::size_t path_cap = 200'000;
  std::uint64_t budget = 5'000'000;
  std::optional<int> pad_cap;
  std::string branch = "auto";
  std::string induced_branch = "auto";
  std::string a, b, x;  // comma-separated vertex lists
  int k = 1;
  int t = 2;
  std::optional<double> ell;
  std::optional<int> d;
  std::string cert_path;
  std::string edge_partition_path;
  bool induced = false;
  bool ktt = false;
  std::vector<std::string> gen;  // generator kind followed by its parameters
  int threads = 1;
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli
