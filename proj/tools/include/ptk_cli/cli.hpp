#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptk/config.hpp"

namespace ptk::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kNumericError = 3, kInvariantError = 4 };

struct RunConfig {
  std::string command;
  std::string set_spec;  // inline JSON or a path to a JSON file
  NumericConfig numeric;
  std::optional<double> a;
  std::optional<double> x;  // balayage source point
  std::optional<double> b;  // balayage left end
  std::vector<double> z;
  std::vector<int> degrees;
  std::vector<int> m_list;
  std::vector<int> n_list;
  double alpha = 0.5;
  double eta = 0.05;
  int points = 400;
  std::string output;  // empty: standard output
  std::string format;  // empty: the command's default
};

/// "5", "5,10,20", "2..64" (step 1) or "2..64:x2" (geometric). Throws InvalidInput.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// %.17g
std::string format_real(double v);

/// Parses argv (argv[0] skipped). Numeric defaults start from the
/// PTK_DEFAULTS environment variable, then --config overrides.
/// Throws InvalidInput on bad arguments.
RunConfig parse_args(int argc, const char* const* argv);

/// Runs one command. The artifact goes to cfg.output (written atomically) or
/// to `out`; failures produce one JSON error record on `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run with the same error contract; --help prints usage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptk::cli
