#pragma once

#include "rows.hpp"

#include "cha/tables.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cha::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolverFailure = 2, kVerifyFailure = 3 };

struct RunRequest {
  std::string command;
  int n = 1;
  int l = 0;
  std::optional<int> m; // scan: all |m| <= l when absent
  double Z = 1.0;
  std::optional<double> rc;
  std::vector<double> rc_list;
  std::vector<double> z_list;
  std::string preset;
  std::string format = "csv";
  std::string out_path;
  std::string config_path;
  std::string verify_level = "fast";
  SolverConfig solver;
};

/// Sorts, deduplicates and checks positivity. Throws InvalidArgument.
std::vector<double> normalize_list(std::vector<double> values, const char *what);

ResultRow cmd_solve(const RunRequest &req);

/// Rows ordered by (|m|, Z, r_c). A point that fails keeps its place with
/// the error recorded in the row.
std::vector<ResultRow> cmd_scan(const RunRequest &req);

/// One row per |m| <= l unless m is given.
std::vector<ResultRow> cmd_free(const RunRequest &req);

struct PresetResult {
  TablePreset preset;
  std::vector<ResultRow> rows; // ordered by state, then r_c
};

PresetResult compute_preset(const std::string &name, const SolverConfig &solver);

/// Text rendering in the layout of the benchmark tables; numbers are cut to
/// the printed precision of the reference where one exists.
std::string render_table(const PresetResult &result);

struct Check {
  std::string name;
  bool passed = true;
  int count = 0;      // instances examined
  double worst = 0.0; // largest deviation seen
  double limit = 0.0;
  std::string where;  // instance with the largest deviation
};

std::vector<Check> cmd_verify(const RunRequest &req);

/// Writes u(r) on the collocation grid and P(p) on the momentum quadrature,
/// each as two-column CSV.
void cmd_dump(const RunRequest &req, std::ostream &r_out, std::ostream &p_out);

/// Full front end: parses arguments, runs, writes output; returns the exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace cha::cli
