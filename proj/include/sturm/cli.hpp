#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sturm::cli {

// One solved level for one method, as emitted by the solve/compare/oracle
// subcommands. `reference` is the independent finite-difference energy when
// one was requested, and rel_error = |energy - reference| / |reference|.
struct ResultRecord {
  int level = 0;
  std::string method;
  double energy = 0.0;
  std::optional<double> script_e_star;
  std::optional<double> reference;
  std::optional<double> rel_error;
  std::optional<double> error_estimate;  // oracle Richardson gap
  std::string tag;                       // solver method tag / note
};

// "0..9", "0,2,4", or a single index. Throws ConfigError on anything else.
std::vector<int> parse_levels(const std::string& text);

// Fixed-format float with the given number of significant digits; used for
// the deterministic CSV/JSON emission (10 digits) and tables (6 digits).
std::string format_sig(double value, int digits);

// Full command-line entry point; returns the process exit code
// (0 success / table fully matched, 1 table cell mismatch, 2 bad
// configuration, 3 solver failure).
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sturm::cli
