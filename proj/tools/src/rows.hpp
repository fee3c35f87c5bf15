#pragma once

// One output record per (state, r_c, Z), and its CSV / JSON encodings.

#include "cha/fisher.hpp"

#include <json.hpp>

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cha::cli {

struct ResultRow {
  int n = 0;
  int l = 0;
  int m = 0;
  double Z = 1.0;
  double r_c = 0.0;
  double E = 0.0;
  double I_r = 0.0;
  double I_p = 0.0;
  double I_t = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double r_m2 = 0.0;
  double r_m1 = 0.0;
  double r_p2 = 0.0;
  double p_p2 = 0.0;
  double p_m2 = 0.0;
  double norm_deficit = 0.0;
  int grid_size_used = 0;
  std::string error; // empty unless this point failed
};

ResultRow make_row(const Evaluation &ev);
ResultRow make_row(const FisherReport &report, double norm_deficit, int grid_size);

/// Row for a point that could not be computed: quantum numbers kept,
/// numbers set to NaN, the message in `error`.
ResultRow failed_row(const QuantumState &state, std::string message);

/// Closed-form row for the unconfined atom (r_c = inf, no grid).
ResultRow free_row(const QuantumState &state);

/// Column names in output order.
std::span<const std::string_view> row_fields();

/// 12 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double value);

void write_csv(std::ostream &out, std::span<const ResultRow> rows);
std::vector<ResultRow> read_csv(std::istream &in);

nlohmann::json to_json(std::span<const ResultRow> rows, const SolverConfig &config,
                       std::string_view version);
std::vector<ResultRow> rows_from_json(const nlohmann::json &doc);

} // namespace cha::cli
