#pragma once

#include <iosfwd>
#include <limits>
#include <string>

namespace cha {

/// Labels one state of a hydrogen-like atom in a hard spherical cavity.
/// `r_c` is in bohr; +infinity denotes the free atom.
struct QuantumState {
  int n = 1;
  int l = 0;
  int m = 0;
  double Z = 1.0;
  double r_c = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool is_free() const { return r_c == std::numeric_limits<double>::infinity(); }

  /// Throws InvalidArgument unless 0 <= l < n, |m| <= l, Z > 0 and r_c > 0.
  void validate() const;

  /// Spectroscopic label such as "2p" or "10k".
  [[nodiscard]] std::string label() const;
};

/// Spectroscopic letter for l (s, p, d, f, g, h, i, k, l, m, ...).
char orbital_letter(int l);

struct SolverConfig {
  int grid_size = 128;          // initial number of Lobatto nodes
  int grid_max = 1024;          // largest grid tried by the doubling loop
  double energy_rtol = 1e-11;   // |dE| between successive grids
  double quadrature_rtol = 1e-10; // relative change of <r^-2>, <r^2> between grids
  bool converge = true;         // false: single solve at grid_size

  void validate() const;
};

/// Reads `key = value` lines (blank lines and '#' comments allowed) on top
/// of the defaults. Unknown keys and malformed values throw InvalidArgument.
SolverConfig parse_solver_config(std::istream &in);
SolverConfig load_solver_config(const std::string &path);

} // namespace cha
