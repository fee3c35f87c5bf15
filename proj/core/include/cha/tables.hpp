#pragma once

// Benchmark table presets: which states and radii make up each table, and
// the benchmark reference values with their printed precision.

#include "cha/state.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cha {

inline constexpr std::array<double, 7> kTableRadii{0.1, 0.3, 0.5, 1.0, 2.5, 5.0, 10.0};

enum class Quantity { I_r, I_p, I_t, lower_bound };

std::string_view quantity_name(Quantity q);

/// One printed number. `m` is |m|; ignored for lower bounds, which do not
/// depend on m.
struct ReferenceCell {
  int n = 0;
  int l = 0;
  int m = 0;
  double r_c = 0.0;
  Quantity quantity = Quantity::I_r;
  std::string_view printed;
};

/// Value and acceptance tolerance of a printed number: 1e-6 relative when it
/// has at least 10 significant digits, otherwise half a unit in the last
/// printed place.
struct PrintedValue {
  double value = 0.0;
  int significant_digits = 0;
  int decimals = 0;
  double tolerance = 0.0; // absolute
};

PrintedValue parse_printed(std::string_view printed);

struct TablePreset {
  std::string_view name;
  std::string_view title;
  bool gated = false; // reference values available
};

std::span<const TablePreset> table_presets();
std::optional<TablePreset> find_preset(std::string_view name);

/// The (n, l, |m|) combinations of a preset at Z = 1, without r_c.
std::vector<QuantumState> preset_states(std::string_view name);

/// Reference cells of a preset; empty for ungated presets.
std::vector<ReferenceCell> reference_cells(std::string_view name);

/// Printed reference for one cell, if the preset has one.
std::optional<ReferenceCell> find_reference(std::string_view name, int n, int l, int m, double r_c,
                                            Quantity q);

} // namespace cha
