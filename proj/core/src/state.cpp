#include "cha/state.hpp"

#include "cha/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>

namespace cha {

void QuantumState::validate() const {
  if (n < 1) {
    throw InvalidArgument("n must be a positive integer");
  }
  if (l < 0 || l > n - 1) {
    throw InvalidArgument("l must satisfy 0 <= l <= n-1");
  }
  if (std::abs(m) > l) {
    throw InvalidArgument("m must satisfy |m| <= l");
  }
  if (!(Z > 0.0) || !std::isfinite(Z)) {
    throw InvalidArgument("Z must be a positive finite number");
  }
  if (!(r_c > 0.0)) {
    throw InvalidArgument("r_c must be positive");
  }
}

char orbital_letter(int l) {
  // j is skipped in the spectroscopic sequence.
  static constexpr std::string_view letters = "spdfghiklmnoqrtuvwxyz";
  if (l < 0 || l >= static_cast<int>(letters.size())) {
    return '?';
  }
  return letters[static_cast<std::size_t>(l)];
}

std::string QuantumState::label() const { return std::to_string(n) + orbital_letter(l); }

void SolverConfig::validate() const {
  if (grid_size < 16) {
    throw InvalidArgument("grid_size must be at least 16");
  }
  if (grid_max < grid_size) {
    throw InvalidArgument("grid_max must be >= grid_size");
  }
  if (!(energy_rtol > 0.0) || !(quadrature_rtol > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T> T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("config: bad value for '" + std::string(key) + "': '" +
                          std::string(text) + "'");
  }
  return value;
}

} // namespace

SolverConfig parse_solver_config(std::istream &in) {
  SolverConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key == "grid_size") {
      cfg.grid_size = parse_number<int>(key, value);
    } else if (key == "grid_max") {
      cfg.grid_max = parse_number<int>(key, value);
    } else if (key == "energy_rtol") {
      cfg.energy_rtol = parse_number<double>(key, value);
    } else if (key == "quadrature_rtol") {
      cfg.quadrature_rtol = parse_number<double>(key, value);
    } else {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": unknown key '" +
                            std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SolverConfig load_solver_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot open config file '" + path + "'");
  }
  return parse_solver_config(in);
}

} // namespace cha
