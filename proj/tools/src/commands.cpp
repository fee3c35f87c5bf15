#include "commands.hpp"

#include "cha/error.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#ifndef CHA_VERSION
#define CHA_VERSION "0.0.0"
#endif

namespace cha::cli {

namespace {

// Runs f(0..count-1) on a few threads; results keep their index order and
// the first exception (by index) is rethrown.
template <class F> auto parallel_map(std::size_t count, F f) {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t threads = std::min(count, hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    worker();
  }
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) {
      std::rethrow_exception(errors[i]);
    }
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// The radial and momentum functions do not depend on m, so one solve serves
// every |m| of an (n, l, Z, r_c) family.
struct Family {
  QuantumState base; // m = 0
  std::optional<Evaluation> ev;
  std::string error;

  [[nodiscard]] FisherReport report(int m) const {
    QuantumState s = base;
    s.m = m;
    return make_report(s, ev->radial.energy, ev->report.expectations);
  }

  [[nodiscard]] ResultRow row(int m) const {
    if (!ev) {
      QuantumState s = base;
      s.m = m;
      return failed_row(s, error);
    }
    try {
      return make_row(report(m), ev->momentum.norm_deficit, ev->radial.grid_size());
    } catch (const std::exception &e) {
      QuantumState s = base;
      s.m = m;
      return failed_row(s, e.what());
    }
  }
};

Family solve_family(QuantumState base, const SolverConfig &solver, bool keep_going) {
  base.m = 0;
  Family f{base, std::nullopt, {}};
  try {
    f.ev = evaluate(base, solver);
  } catch (const InvalidArgument &) {
    throw;
  } catch (const std::exception &e) {
    if (!keep_going) {
      throw;
    }
    f.error = e.what();
  }
  return f;
}

std::vector<Family> solve_families(const std::vector<QuantumState> &bases,
                                   const SolverConfig &solver, bool keep_going) {
  return parallel_map(bases.size(),
                      [&](std::size_t i) { return solve_family(bases[i], solver, keep_going); });
}

QuantumState request_state(const RunRequest &req, double r_c) {
  QuantumState s{req.n, req.l, req.m.value_or(0), req.Z, r_c};
  s.validate();
  return s;
}

double require_rc(const RunRequest &req) {
  if (!req.rc) {
    throw InvalidArgument(req.command + ": --rc is required");
  }
  if (!(*req.rc > 0.0) || !std::isfinite(*req.rc)) {
    throw InvalidArgument("--rc must be positive and finite");
  }
  return *req.rc;
}

std::string rc_text(double r_c) { return fmt::format("{:g}", r_c); }

} // namespace

std::vector<double> normalize_list(std::vector<double> values, const char *what) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + " entries must be positive and finite");
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

ResultRow cmd_solve(const RunRequest &req) {
  const QuantumState s = request_state(req, require_rc(req));
  return make_row(evaluate(s, req.solver));
}

std::vector<ResultRow> cmd_scan(const RunRequest &req) {
  std::vector<double> radii = req.rc_list;
  if (req.rc) {
    radii.push_back(*req.rc);
  }
  if (radii.empty()) {
    throw InvalidArgument("scan: --rc-list is required");
  }
  radii = normalize_list(radii, "--rc-list");
  const std::vector<double> charges =
      req.z_list.empty() ? std::vector<double>{req.Z} : normalize_list(req.z_list, "--z-list");
  request_state(req, radii.front());

  std::vector<QuantumState> bases;
  for (double z : charges) {
    for (double rc : radii) {
      bases.push_back({req.n, req.l, 0, z, rc});
    }
  }
  const auto families = solve_families(bases, req.solver, true);

  std::vector<int> ms;
  if (req.m) {
    ms.push_back(*req.m);
  } else {
    for (int m = 0; m <= req.l; ++m) {
      ms.push_back(m);
    }
  }
  std::vector<ResultRow> rows;
  for (int m : ms) {
    for (const auto &f : families) {
      rows.push_back(f.row(m));
    }
  }
  return rows;
}

std::vector<ResultRow> cmd_free(const RunRequest &req) {
  QuantumState s{req.n, req.l, req.m.value_or(0), req.Z};
  s.validate();
  if (req.m) {
    return {free_row(s)};
  }
  std::vector<ResultRow> rows;
  for (s.m = 0; s.m <= req.l; ++s.m) {
    rows.push_back(free_row(s));
  }
  return rows;
}

PresetResult compute_preset(const std::string &name, const SolverConfig &solver) {
  const auto preset = find_preset(name);
  if (!preset) {
    throw InvalidArgument("unknown preset '" + name + "' (expected 2p, 3d, 4f, 5g or n10m1)");
  }
  const auto states = preset_states(name);
  // Distinct (n, l) families; states of one family differ only in m.
  std::vector<QuantumState> bases;
  for (const auto &s : states) {
    const bool seen = std::any_of(bases.begin(), bases.end(),
                                  [&](const QuantumState &b) { return b.n == s.n && b.l == s.l; });
    if (!seen) {
      for (double rc : kTableRadii) {
        bases.push_back({s.n, s.l, 0, 1.0, rc});
      }
    }
  }
  const auto families = solve_families(bases, solver, false);
  PresetResult result{*preset, {}};
  for (const auto &s : states) {
    for (const auto &f : families) {
      if (f.base.n == s.n && f.base.l == s.l) {
        result.rows.push_back(f.row(s.m));
      }
    }
  }
  return result;
}

namespace {

// Cuts (does not round) to the given number of decimals.
std::string cut_decimals(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals + 6);
  s.resize(s.size() - 6);
  if (decimals == 0 && !s.empty() && s.back() == '.') {
    s.pop_back();
  }
  return s;
}

std::string render_cell(std::string_view preset, const ResultRow &row, Quantity q, double value) {
  if (const auto ref = find_reference(preset, row.n, row.l, row.m, row.r_c, q)) {
    return cut_decimals(value, parse_printed(ref->printed).decimals);
  }
  return fmt::format("{:.10g}", value);
}

} // namespace

std::string render_table(const PresetResult &result) {
  const std::string_view name = result.preset.name;
  const bool by_l = name == "n10m1";
  std::ostringstream out;
  out << result.preset.title << ", Z = 1" << (result.preset.gated ? "" : " (no reference values)")
      << "\n";
  const auto header = [&](std::string_view label) {
    out << fmt::format("{:<6}", label);
    for (double rc : kTableRadii) {
      out << fmt::format(" {:>16}", "r_c=" + rc_text(rc));
    }
    out << "\n";
  };
  const auto block = [&](Quantity q, double ResultRow::*field) {
    out << "\n" << quantity_name(q) << "\n";
    header(by_l ? "l" : "|m|");
    std::map<int, std::vector<const ResultRow *>> lines;
    for (const auto &row : result.rows) {
      lines[by_l ? row.l : row.m].push_back(&row);
    }
    for (const auto &[key, rows] : lines) {
      out << fmt::format("{:<6}", key);
      for (const auto *row : rows) {
        const std::string cell = row->error.empty() ? render_cell(name, *row, q, row->*field) : "failed";
        out << fmt::format(" {:>16}", cell);
      }
      out << "\n";
    }
  };
  block(Quantity::I_r, &ResultRow::I_r);
  block(Quantity::I_p, &ResultRow::I_p);
  if (!by_l) {
    block(Quantity::I_t, &ResultRow::I_t);
    out << "\nlower bound (all |m|)\n";
    header("");
    out << fmt::format("{:<6}", "");
    for (const auto &row : result.rows) {
      if (row.m == 0) {
        const std::string cell =
            row.error.empty() ? render_cell(name, row, Quantity::lower_bound, row.lower_bound) : "failed";
        out << fmt::format(" {:>16}", cell);
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

struct Tally {
  Check c;

  Tally(std::string name, double limit) {
    c.name = std::move(name);
    c.limit = limit;
    c.worst = -std::numeric_limits<double>::infinity();
  }

  // `where` names the worst instance while all pass, else the first failure.
  void see(bool ok, double deviation, const std::string &where) {
    ++c.count;
    if (c.passed && (!ok || deviation > c.worst)) {
      c.where = where;
    }
    c.worst = std::max(c.worst, deviation);
    c.passed = c.passed && ok;
  }

  void fail(const std::string &where) {
    ++c.count;
    if (c.passed) {
      c.where = where;
    }
    c.passed = false;
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string where(const QuantumState &s) {
  return fmt::format("{} m={} Z={:g} r_c={:g}", s.label(), s.m, s.Z, s.r_c);
}

} // namespace

std::vector<Check> cmd_verify(const RunRequest &req) {
  if (req.verify_level != "fast" && req.verify_level != "full") {
    throw InvalidArgument("--verify-level must be fast or full");
  }
  const bool full = req.verify_level == "full";
  const SolverConfig &solver = req.solver;

  Tally bounds("bound_chain", 0.0);
  Tally collapse("m0_equals_upper_bound", 0.0);
  Tally strict("m_nonzero_below_upper_bound", 0.0);
  Tally parseval("parseval_norm_deficit", 1e-8);
  Tally cross("cross_space_p2", 1e-7);
  Tally nodes("node_count", 0.0);
  Tally norm("radial_norm", 1e-10);
  Tally oracle("gradient_oracle", 1e-4);
  Tally analytic("analytic_energy_root", 1e-9);
  Tally m_order("m_ordering", 0.0);
  Tally rc_order("rc_monotonicity", 0.0);
  Tally scaling("z_scaling", 1e-7);
  Tally closed("free_closed_form", 0.0);

  std::vector<std::string> sets{"2p", "3d"};
  if (full) {
    sets.emplace_back("n10m1");
  }
  for (const auto &name : sets) {
    const bool tables_1_2 = name != "n10m1";
    std::vector<QuantumState> bases;
    std::vector<int> max_m;
    for (const auto &s : preset_states(name)) {
      const bool seen = std::any_of(bases.begin(), bases.end(),
                                    [&](const QuantumState &b) { return b.n == s.n && b.l == s.l; });
      if (!seen) {
        for (double rc : kTableRadii) {
          bases.push_back({s.n, s.l, 0, 1.0, rc});
        }
      }
    }
    const auto families = solve_families(bases, solver, true);
    std::map<std::pair<int, int>, std::vector<double>> ir_by_rc;
    std::map<std::pair<int, int>, std::vector<double>> ip_by_rc;
    for (const auto &f : families) {
      if (!f.ev) {
        bounds.fail(where(f.base) + ": " + f.error);
        continue;
      }
      const RadialSolution &sol = f.ev->radial;
      const QuantumState &b = f.base;
      const int want = b.n - b.l - 1;
      const int got = count_nodes(sol);
      nodes.see(got == want, std::abs(got - want), where(b));
      norm.see(sol.norm_residual <= 1e-10, sol.norm_residual, where(b));
      parseval.see(f.ev->momentum.norm_deficit < 1e-8, f.ev->momentum.norm_deficit, where(b));
      const double p2_r = 2.0 * (sol.energy + b.Z * f.ev->report.expectations.r_m1);
      const double d = rel(f.ev->report.expectations.p_p2, p2_r);
      cross.see(d <= 1e-7, d, where(b));
      if (sol.energy < 0.0) {
        try {
          const double root = analytic_energy_root_near(b, sol.energy);
          const double de = std::abs(root - sol.energy);
          analytic.see(de <= 1e-9, de, where(b));
        } catch (const std::exception &e) {
          analytic.fail(where(b) + ": " + e.what());
        }
      }
      double prev_ir = std::numeric_limits<double>::infinity();
      double prev_ip = std::numeric_limits<double>::infinity();
      const int m_lo = name == "n10m1" ? 1 : 0;
      const int m_hi = name == "n10m1" ? 1 : b.l;
      for (int m = m_lo; m <= m_hi; ++m) {
        FisherReport r;
        QuantumState s = b;
        s.m = m;
        try {
          r = f.report(m);
        } catch (const std::exception &e) {
          bounds.fail(where(s) + ": " + e.what());
          continue;
        }
        const double viol = std::max(r.lower_bound - r.I_t, r.I_t - r.upper_bound) / r.I_t;
        bounds.see(r.lower_ok && r.upper_ok, viol, where(s));
        if (m == 0) {
          const bool exact = r.I_t == r.upper_bound && r.I_r == 4.0 * r.expectations.p_p2 &&
                             r.I_p == 4.0 * r.expectations.r_p2;
          collapse.see(exact, std::abs(r.I_t - r.upper_bound), where(s));
        } else {
          strict.see(r.I_t < r.upper_bound, (r.I_t - r.upper_bound) / r.upper_bound, where(s));
          if (m > m_lo) {
            m_order.see(r.I_r < prev_ir && r.I_p < prev_ip, 0.0, where(s));
          }
        }
        prev_ir = r.I_r;
        prev_ip = r.I_p;
        ir_by_rc[{b.l, m}].push_back(r.I_r);
        ip_by_rc[{b.l, m}].push_back(r.I_p);
        if (tables_1_2) {
          const double direct = direct_fisher_oracle(sol, s);
          const double dev = rel(direct, r.I_r);
          oracle.see(dev <= 1e-4, dev, where(s));
        }
      }
    }
    for (const auto &[key, ir] : ir_by_rc) {
      const auto &ip = ip_by_rc[key];
      bool ok = ir.size() == kTableRadii.size();
      for (std::size_t i = 1; ok && i < ir.size(); ++i) {
        ok = ir[i] < ir[i - 1] && ip[i] > ip[i - 1];
      }
      rc_order.see(ok, 0.0, fmt::format("{} l={} m={}", name, key.first, key.second));
    }
  }

  // Direct solve at (Z, r_c) against the Z = 1 solve at Z r_c.
  std::vector<std::pair<double, double>> points{{3.0, 1.0}};
  if (full) {
    points = {{2.0, 0.5}, {2.0, 1.0}, {2.0, 5.0}, {3.0, 0.5}, {3.0, 1.0}, {3.0, 5.0}};
  }
  for (const auto &[z, rc] : points) {
    for (int m = 0; m <= 1; ++m) {
      const QuantumState direct{2, 1, m, z, rc};
      const QuantumState base{2, 1, m, 1.0, z * rc};
      try {
        const FisherReport a = evaluate(direct, solver).report;
        const FisherReport b = z_scale(evaluate(base, solver).report, z);
        const double dev = std::max(rel(b.I_r, a.I_r), rel(b.I_p, a.I_p));
        scaling.see(dev <= 1e-7, dev, where(direct));
      } catch (const std::exception &e) {
        scaling.fail(where(direct) + ": " + e.what());
      }
    }
  }

  const FreeFisher f2p = free_atom_fisher({2, 1, 0});
  const FreeFisher f1s = free_atom_fisher({1, 0, 0});
  closed.see(f2p.I_r == 1.0 && f2p.I_p == 120.0, std::abs(f2p.I_p - 120.0), "2p m=0");
  closed.see(f1s.I_r == 4.0 && f1s.I_p == 12.0, std::abs(f1s.I_p - 12.0), "1s");

  std::vector<Check> checks{bounds.c, collapse.c, strict.c, parseval.c, cross.c,  nodes.c,   norm.c,
                            oracle.c, analytic.c, m_order.c, rc_order.c, scaling.c, closed.c};

  if (full) {
    Tally free_limit("free_atom_limit", 1e-4);
    std::vector<QuantumState> bases;
    for (int n = 1; n <= 3; ++n) {
      for (int l = 0; l < n; ++l) {
        bases.push_back({n, l, 0, 1.0, 50.0 * n});
      }
    }
    for (const auto &fam : solve_families(bases, solver, true)) {
      for (int m = 0; m <= fam.base.l; ++m) {
        QuantumState s = fam.base;
        s.m = m;
        if (!fam.ev) {
          free_limit.fail(where(s) + ": " + fam.error);
          continue;
        }
        const FisherReport r = fam.report(m);
        const FreeFisher ref = free_atom_fisher(s);
        const double dev = std::max(rel(r.I_r, ref.I_r), rel(r.I_p, ref.I_p));
        free_limit.see(dev <= 1e-4, dev, where(s));
      }
    }
    checks.push_back(free_limit.c);

    // Shape of the r_c curves of 10k and of the Z dependence of 2p.
    Tally fig1("10k_rc_monotonicity", 0.0);
    const std::vector<double> radii{0.1, 0.3, 0.5, 1.0, 2.5, 5.0, 10.0, 20.0, 50.0, 100.0};
    bases.clear();
    for (double rc : radii) {
      bases.push_back({10, 7, 0, 1.0, rc});
    }
    const auto k_states = solve_families(bases, solver, true);
    for (int m = 0; m <= 7; ++m) {
      bool ok = true;
      double prev_ir = std::numeric_limits<double>::infinity();
      double prev_ip = 0.0;
      for (const auto &fam : k_states) {
        if (!fam.ev) {
          ok = false;
          break;
        }
        const FisherReport r = fam.report(m);
        ok = ok && r.I_r < prev_ir && r.I_p > prev_ip;
        prev_ir = r.I_r;
        prev_ip = r.I_p;
      }
      fig1.see(ok, 0.0, fmt::format("10k m={}", m));
    }
    checks.push_back(fig1.c);

    Tally fig2("2p_z_ordering", 0.0);
    bases.clear();
    const std::vector<double> z_values{2.0, 3.0, 4.0, 5.0, 6.0};
    for (double rc : kTableRadii) {
      for (double z : z_values) {
        bases.push_back({2, 1, 0, z, rc});
      }
    }
    const auto z_states = solve_families(bases, solver, true);
    for (int m = 0; m <= 1; ++m) {
      for (std::size_t i = 0; i < kTableRadii.size(); ++i) {
        int broken = 0; // Z steps out of order
        for (std::size_t j = 1; j < z_values.size(); ++j) {
          const auto &lo = z_states[i * z_values.size() + j - 1];
          const auto &hi = z_states[i * z_values.size() + j];
          if (!lo.ev || !hi.ev) {
            ++broken;
            continue;
          }
          const FisherReport a = lo.report(m);
          const FisherReport b = hi.report(m);
          broken += !(b.I_r > a.I_r && b.I_p < a.I_p);
        }
        fig2.see(broken == 0, broken, fmt::format("2p m={} r_c={:g}", m, kTableRadii[i]));
      }
    }
    checks.push_back(fig2.c);
  }
  return checks;
}

void cmd_dump(const RunRequest &req, std::ostream &r_out, std::ostream &p_out) {
  const QuantumState s = request_state(req, require_rc(req));
  const Evaluation ev = evaluate(s, req.solver);
  r_out << "r,u\n";
  for (int i = 0; i < ev.radial.grid_size(); ++i) {
    r_out << format_number(ev.radial.r()(i)) << ',' << format_number(ev.radial.u(i)) << '\n';
  }
  p_out << "p,P\n";
  for (std::size_t i = 0; i < ev.momentum.p.size(); ++i) {
    p_out << format_number(ev.momentum.p[i]) << ',' << format_number(ev.momentum.values[i]) << '\n';
  }
}

namespace {

void write_rows(const RunRequest &req, std::span<const ResultRow> rows, std::ostream &out) {
  if (req.format == "json") {
    out << to_json(rows, req.solver, CHA_VERSION).dump(2) << '\n';
  } else {
    write_csv(out, rows);
  }
}

void write_checks(const RunRequest &req, const std::vector<Check> &checks, std::ostream &out) {
  // A check that saw no instance has no worst value.
  const auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string(); };
  if (req.format == "json") {
    nlohmann::json doc;
    doc["meta"]["version"] = CHA_VERSION;
    doc["meta"]["verify_level"] = req.verify_level;
    doc["checks"] = nlohmann::json::array();
    bool all = true;
    for (const auto &c : checks) {
      all = all && c.passed;
      doc["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"count", c.count},
                               {"worst", std::isfinite(c.worst) ? nlohmann::json(c.worst) : nlohmann::json()},
                               {"limit", c.limit},
                               {"where", c.where}});
    }
    doc["passed"] = all;
    out << doc.dump(2) << '\n';
    return;
  }
  out << "check,status,count,worst,limit,where\n";
  for (const auto &c : checks) {
    out << c.name << ',' << (c.passed ? "pass" : "FAIL") << ',' << c.count << ',' << num(c.worst)
        << ',' << num(c.limit) << ",\"" << c.where << "\"\n";
  }
}

// Writes to --out when given, otherwise to `fallback`.
template <class Body> void emit(const RunRequest &req, std::ostream &fallback, Body body) {
  if (req.out_path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(req.out_path, std::ios::binary);
  if (!file) {
    throw InvalidArgument("cannot write '" + req.out_path + "'");
  }
  body(file);
  if (!file) {
    throw InvalidArgument("write to '" + req.out_path + "' failed");
  }
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Fisher information of a hydrogen-like atom in a hard spherical cavity"};
  app.set_version_flag("--version", std::string(CHA_VERSION));
  app.require_subcommand(1);

  RunRequest req;
  std::optional<int> m_opt;
  std::optional<double> rc_opt;

  const auto state_options = [&](CLI::App *sub) {
    sub->add_option("--n", req.n, "principal quantum number")->check(CLI::PositiveNumber);
    sub->add_option("--l", req.l, "azimuthal quantum number")->check(CLI::NonNegativeNumber);
    sub->add_option("--m", m_opt, "magnetic quantum number");
    sub->add_option("--Z", req.Z, "nuclear charge")->check(CLI::PositiveNumber);
  };
  const auto output_options = [&](CLI::App *sub) {
    sub->add_option("--format", req.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", req.out_path, "output file (default: stdout)");
    sub->add_option("--config", req.config_path, "solver config file (key = value)");
  };

  auto *solve = app.add_subcommand("solve", "one state at one confinement radius");
  state_options(solve);
  solve->add_option("--rc", rc_opt, "confinement radius (bohr)")->required();
  output_options(solve);

  auto *scan = app.add_subcommand("scan", "sweep over radii and charges");
  state_options(scan);
  scan->add_option("--rc", rc_opt, "single confinement radius");
  scan->add_option("--rc-list", req.rc_list, "comma-separated radii")->delimiter(',');
  scan->add_option("--z-list", req.z_list, "comma-separated charges")->delimiter(',');
  output_options(scan);

  auto *table = app.add_subcommand("table", "benchmark table preset");
  table->add_option("--preset", req.preset, "2p, 3d, 4f, 5g or n10m1")->required();
  output_options(table);

  auto *free = app.add_subcommand("free", "closed forms for the unconfined atom");
  state_options(free);
  output_options(free);

  auto *verify = app.add_subcommand("verify", "run the invariant checks");
  verify->add_option("--verify-level", req.verify_level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  output_options(verify);

  auto *dump = app.add_subcommand("dump", "write u(r) and P(p) grids");
  state_options(dump);
  dump->add_option("--rc", rc_opt, "confinement radius (bohr)")->required();
  dump->add_option("--out", req.out_path, "file prefix: writes PREFIX.r.csv and PREFIX.p.csv");
  dump->add_option("--config", req.config_path, "solver config file (key = value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << CHA_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    if (const auto *sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kUsage;
  }

  req.command = app.get_subcommands().front()->get_name();
  req.m = m_opt;
  req.rc = rc_opt;

  try {
    if (!req.config_path.empty()) {
      req.solver = load_solver_config(req.config_path);
    }
    if (req.command == "solve") {
      const ResultRow row = cmd_solve(req);
      emit(req, out, [&](std::ostream &o) { write_rows(req, std::span(&row, 1), o); });
    } else if (req.command == "scan") {
      const auto rows = cmd_scan(req);
      emit(req, out, [&](std::ostream &o) { write_rows(req, rows, o); });
      // Every row is written; failed points still make the run a failure.
      const auto failed = std::count_if(rows.begin(), rows.end(), [](const ResultRow &r) { return !r.error.empty(); });
      if (failed > 0) {
        err << "solver failure: " << failed << " of " << rows.size() << " scan points failed\n";
        return kSolverFailure;
      }
    } else if (req.command == "free") {
      const auto rows = cmd_free(req);
      emit(req, out, [&](std::ostream &o) { write_rows(req, rows, o); });
    } else if (req.command == "table") {
      const PresetResult result = compute_preset(req.preset, req.solver);
      out << render_table(result);
      if (!req.out_path.empty()) {
        emit(req, out, [&](std::ostream &o) { write_rows(req, result.rows, o); });
      }
    } else if (req.command == "verify") {
      const auto checks = cmd_verify(req);
      emit(req, out, [&](std::ostream &o) { write_checks(req, checks, o); });
      const bool all = std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
      return all ? kOk : kVerifyFailure;
    } else if (req.command == "dump") {
      if (req.out_path.empty()) {
        std::ostringstream r_text;
        std::ostringstream p_text;
        cmd_dump(req, r_text, p_text);
        out << r_text.str() << '\n' << p_text.str();
      } else {
        std::ofstream r_file(req.out_path + ".r.csv", std::ios::binary);
        std::ofstream p_file(req.out_path + ".p.csv", std::ios::binary);
        if (!r_file || !p_file) {
          throw InvalidArgument("cannot write '" + req.out_path + ".{r,p}.csv'");
        }
        cmd_dump(req, r_file, p_file);
      }
    }
  } catch (const InvalidArgument &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception &e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}

} // namespace cha::cli
