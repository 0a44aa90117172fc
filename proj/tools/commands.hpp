#pragma once
// Command implementations behind the `rdf` tool. Each command writes its
// table or report to `out` and returns the process exit code:
//   0  success / all checks pass
//   1  a verification check failed
//   2  usage, configuration or solver error (message on `err`)

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdf/radial.hpp"

namespace rdf::cli {

enum class Format { Csv, Json };

struct RunConfig {
  double alpha = 0.0072973525693;
  int Z = 1;
  int n = 1;
  int kappa = -1;
  double mj = 0.5;
  // grid bounds in Bohr units 1/(Z alpha); r_max defaults to 40 n
  double r_min = 1e-4;
  std::optional<double> r_max;
  std::size_t points = kDefaultGridPoints;
  double tol = 1e-8;
  std::string out; // empty: stdout
  Format format = Format::Csv;

  PhysParams params() const { return PhysParams{alpha, Z}; }
  StateLabel label() const;
  GridPtr grid() const; // for the configured state
  GridPtr grid_for(int n_state) const;
};

// Throws rdf::Error subclasses on invalid configurations.
void validate(const RunConfig &config);

// Tabular output: '#'-prefixed metadata lines, a header row, data rows.
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_table(const Table &table, Format format, std::ostream &out);

// %.17g, so a parsed value reproduces the double exactly.
std::string format_number(double v);

struct CheckResult {
  std::string check;
  double value = 0.0; // NaN when the check could not be evaluated
  double threshold = 0.0;
  bool pass = false;
  std::string error;
};

void write_report(const std::vector<CheckResult> &checks, Format format, std::ostream &out);

struct Sample {
  double r, theta, phi, x0;
};

// Parses "r,theta,phi,x0".
std::optional<Sample> parse_sample(const std::string &text);

Table levels_table(const RunConfig &config, int n_max);
Table radial_table(const RunConfig &config);
Table phi_table(const RunConfig &config, const std::vector<Sample> &samples);
Table selfpot_table(const RunConfig &config);
std::vector<CheckResult> run_checks(const RunConfig &config);

int cmd_levels(const RunConfig &config, int n_max, std::ostream &out, std::ostream &err);
int cmd_radial(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_phi(const RunConfig &config, const std::vector<Sample> &samples, std::ostream &out,
            std::ostream &err);
int cmd_selfpot(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_verify(const RunConfig &config, std::ostream &out, std::ostream &err);

// Full command-line entry point (argument parsing, --out handling).
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rdf::cli
