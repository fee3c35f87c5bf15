#include "rows.hpp"

#include "cha/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>

namespace cha::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Field {
  std::string_view name;
  double ResultRow::*real = nullptr;
  int ResultRow::*integer = nullptr;
};

constexpr Field kFields[] = {
    {"n", nullptr, &ResultRow::n},
    {"l", nullptr, &ResultRow::l},
    {"m", nullptr, &ResultRow::m},
    {"Z", &ResultRow::Z},
    {"r_c", &ResultRow::r_c},
    {"E", &ResultRow::E},
    {"I_r", &ResultRow::I_r},
    {"I_p", &ResultRow::I_p},
    {"I_t", &ResultRow::I_t},
    {"lower_bound", &ResultRow::lower_bound},
    {"upper_bound", &ResultRow::upper_bound},
    {"r_m2", &ResultRow::r_m2},
    {"r_m1", &ResultRow::r_m1},
    {"r_p2", &ResultRow::r_p2},
    {"p_p2", &ResultRow::p_p2},
    {"p_m2", &ResultRow::p_m2},
    {"norm_deficit", &ResultRow::norm_deficit},
    {"grid_size_used", nullptr, &ResultRow::grid_size_used},
};

constexpr std::string_view kErrorField = "error";

const std::vector<std::string_view> &all_fields() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto &f : kFields) {
      v.push_back(f.name);
    }
    v.push_back(kErrorField);
    return v;
  }();
  return names;
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("bad number '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("bad integer '" + std::string(text) + "'");
  }
  return value;
}

std::string csv_quote(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

// JSON has no literal for NaN or infinity; those travel as strings.
nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) {
    return format_number(v);
  }
  return parse_real(format_number(v));
}

double json_real(const nlohmann::json &j) {
  if (j.is_string()) {
    return parse_real(j.get<std::string>());
  }
  return j.get<double>();
}

} // namespace

ResultRow make_row(const Evaluation &ev) {
  return make_row(ev.report, ev.momentum.norm_deficit, ev.radial.grid_size());
}

ResultRow make_row(const FisherReport &r, double norm_deficit, int grid_size) {
  ResultRow row;
  row.n = r.state.n;
  row.l = r.state.l;
  row.m = r.state.m;
  row.Z = r.state.Z;
  row.r_c = r.state.r_c;
  row.E = r.energy;
  row.I_r = r.I_r;
  row.I_p = r.I_p;
  row.I_t = r.I_t;
  row.lower_bound = r.lower_bound;
  row.upper_bound = r.upper_bound;
  row.r_m2 = r.expectations.r_m2;
  row.r_m1 = r.expectations.r_m1;
  row.r_p2 = r.expectations.r_p2;
  row.p_p2 = r.expectations.p_p2;
  row.p_m2 = r.expectations.p_m2;
  row.norm_deficit = norm_deficit;
  row.grid_size_used = grid_size;
  return row;
}

ResultRow failed_row(const QuantumState &state, std::string message) {
  ResultRow row;
  row.n = state.n;
  row.l = state.l;
  row.m = state.m;
  row.Z = state.Z;
  row.r_c = state.r_c;
  for (const auto &f : kFields) {
    if (f.real != nullptr && f.name != "Z" && f.name != "r_c") {
      row.*f.real = kNaN;
    }
  }
  row.error = message.empty() ? "failed" : std::move(message);
  return row;
}

ResultRow free_row(const QuantumState &state) {
  QuantumState s = state;
  s.r_c = std::numeric_limits<double>::infinity();
  s.validate();
  const double n = s.n;
  const double l = s.l;
  const double z = s.Z;
  // Hydrogenic closed forms.
  ExpectationSet e;
  e.r_m2 = z * z / (n * n * n * (l + 0.5));
  e.r_m1 = z / (n * n);
  e.r_p2 = n * n / (2.0 * z * z) * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0));
  e.p_p2 = z * z / (n * n);
  e.p_m2 = n * n * (8.0 * n - 6.0 * l - 3.0) / ((2.0 * l + 1.0) * z * z);
  const FreeFisher f = free_atom_fisher(s);
  const FisherBounds b = fisher_bounds(e);
  ResultRow row;
  row.n = s.n;
  row.l = s.l;
  row.m = s.m;
  row.Z = z;
  row.r_c = s.r_c;
  row.E = -z * z / (2.0 * n * n);
  row.I_r = f.I_r;
  row.I_p = f.I_p;
  row.I_t = f.I_r * f.I_p;
  row.lower_bound = b.lower;
  row.upper_bound = b.upper;
  row.r_m2 = e.r_m2;
  row.r_m1 = e.r_m1;
  row.r_p2 = e.r_p2;
  row.p_p2 = e.p_p2;
  row.p_m2 = e.p_m2;
  return row;
}

std::span<const std::string_view> row_fields() { return all_fields(); }

std::string format_number(double value) { return fmt::format("{:.12g}", value == 0.0 ? 0.0 : value); }

void write_csv(std::ostream &out, std::span<const ResultRow> rows) {
  const auto &names = all_fields();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i ? "," : "") << names[i];
  }
  out << '\n';
  for (const auto &row : rows) {
    for (const auto &f : kFields) {
      if (&f != kFields) {
        out << ',';
      }
      if (f.real != nullptr) {
        out << format_number(row.*f.real);
      } else {
        out << row.*f.integer;
      }
    }
    out << ',' << csv_quote(row.error) << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidArgument("read_csv: empty input");
  }
  const auto header = csv_split(line);
  const auto &names = all_fields();
  if (header.size() != names.size()) {
    throw InvalidArgument("read_csv: unexpected header");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (header[i] != names[i]) {
      throw InvalidArgument("read_csv: unexpected column '" + header[i] + "'");
    }
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto cells = csv_split(line);
    if (cells.size() != names.size()) {
      throw InvalidArgument("read_csv: row has " + std::to_string(cells.size()) + " cells");
    }
    ResultRow row;
    for (std::size_t i = 0; i < std::size(kFields); ++i) {
      if (kFields[i].real != nullptr) {
        row.*kFields[i].real = parse_real(cells[i]);
      } else {
        row.*kFields[i].integer = parse_int(cells[i]);
      }
    }
    row.error = cells.back();
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(std::span<const ResultRow> rows, const SolverConfig &config,
                       std::string_view version) {
  nlohmann::json doc;
  doc["meta"]["version"] = std::string(version);
  doc["meta"]["config"] = {{"grid_size", config.grid_size},
                           {"grid_max", config.grid_max},
                           {"energy_rtol", config.energy_rtol},
                           {"quadrature_rtol", config.quadrature_rtol}};
  doc["rows"] = nlohmann::json::array();
  for (const auto &row : rows) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto &f : kFields) {
      if (f.real != nullptr) {
        j[std::string(f.name)] = json_number(row.*f.real);
      } else {
        j[std::string(f.name)] = row.*f.integer;
      }
    }
    j[std::string(kErrorField)] = row.error;
    doc["rows"].push_back(std::move(j));
  }
  return doc;
}

std::vector<ResultRow> rows_from_json(const nlohmann::json &doc) {
  std::vector<ResultRow> rows;
  for (const auto &j : doc.at("rows")) {
    ResultRow row;
    for (const auto &f : kFields) {
      const auto &v = j.at(std::string(f.name));
      if (f.real != nullptr) {
        row.*f.real = json_real(v);
      } else {
        row.*f.integer = v.get<int>();
      }
    }
    row.error = j.at(std::string(kErrorField)).get<std::string>();
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace cha::cli
