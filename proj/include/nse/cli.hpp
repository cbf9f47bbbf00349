#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nse {

enum class OutputFormat { Json, Svg, Both };

// Options shared by the command-line entry points.  `input` is a path or
// "-" for standard input; an empty `output` writes artifacts to `out`.
struct RunConfig {
  std::string command;  // embed1d | embed2d | verify | crosscheck
  std::string input;
  std::string output;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Json;
  int cap = 6;  // crosscheck enumeration bound (n <= 9 supported)
  int dim = 0;  // crosscheck: 1, 2, or 0 for both
};

// Exit codes: 0 = embedding (or success), 1 = usage/input error,
// 2 = matrix witness (the other branch of the dichotomy), 3 = a
// certificate failed verification.
int cmd_embed1d(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_embed2d(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_crosscheck(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Argument parsing plus dispatch; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace nse
