#include "cha/radial.hpp"

#include "cha/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace cha {

RadialHamiltonian build_hamiltonian(int l, double Z, double r_c, int n_points) {
  if (n_points < 16) {
    throw InvalidArgument("build_hamiltonian: need at least 16 grid points");
  }
  if (!(r_c > 0.0) || !std::isfinite(r_c)) {
    throw InvalidArgument("build_hamiltonian: r_c must be positive and finite");
  }
  if (l < 0 || Z < 0.0) {
    throw InvalidArgument("build_hamiltonian: need l >= 0 and Z >= 0");
  }
  auto grid = std::make_shared<const CollocationGrid>(make_collocation_grid(n_points, r_c));
  const int n = grid->size();
  const int m = n - 2;

  // For interior rows, w_i (D^2)_{ij} = -(D^T W D)_{ij} holds exactly on a
  // Lobatto grid, so the sqrt(w)-similarity transform of the collocation
  // kinetic operator is the stiffness form below, symmetric by construction.
  const Eigen::MatrixXd &d = grid->diff;
  const Eigen::MatrixXd stiffness = d.transpose() * grid->weights.asDiagonal() * d;
  const Eigen::VectorXd inv_sqrt_w = grid->weights.cwiseSqrt().cwiseInverse();

  RadialHamiltonian h;
  h.grid = grid;
  h.matrix = 0.5 * inv_sqrt_w.segment(1, m).asDiagonal() * stiffness.block(1, 1, m, m) *
             inv_sqrt_w.segment(1, m).asDiagonal();
  const double centrifugal = 0.5 * l * (l + 1);
  for (int i = 0; i < m; ++i) {
    const double r = grid->r(i + 1);
    h.matrix(i, i) += centrifugal / (r * r) - Z / r;
  }
  // Remove round-off asymmetry from the triple product.
  h.matrix = 0.5 * (h.matrix + h.matrix.transpose()).eval();
  return h;
}

namespace {

int count_sign_changes(const Eigen::VectorXd &u) {
  const double peak = u.cwiseAbs().maxCoeff();
  const double floor = 1e-8 * peak;
  int changes = 0;
  int last_sign = 0;
  for (int i = 1; i + 1 < u.size(); ++i) {
    if (std::abs(u(i)) <= floor) {
      continue;
    }
    const int s = u(i) > 0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) {
      ++changes;
    }
    last_sign = s;
  }
  return changes;
}

RadialSolution solve_on_grid(const QuantumState &state, int n_points) {
  const RadialHamiltonian h = build_hamiltonian(state.l, state.Z, state.r_c, n_points);
  const SymEigResult eig = sym_eig(h.matrix);
  const int index = state.n - state.l - 1;
  if (index >= eig.values.size()) {
    throw NumericalFailure("solve_state: grid too small for requested state");
  }
  const CollocationGrid &grid = *h.grid;
  const int n = grid.size();

  RadialSolution sol;
  sol.state = state;
  sol.energy = eig.values(index);
  sol.grid = h.grid;
  sol.u = Eigen::VectorXd::Zero(n);
  for (int i = 1; i + 1 < n; ++i) {
    sol.u(i) = eig.vectors(i - 1, index) / std::sqrt(grid.weights(i));
  }
  // Sign convention: u > 0 next to the origin.
  const double peak = sol.u.cwiseAbs().maxCoeff();
  for (int i = 1; i + 1 < n; ++i) {
    if (std::abs(sol.u(i)) > 1e-3 * peak) {
      if (sol.u(i) < 0) {
        sol.u = -sol.u;
      }
      break;
    }
  }
  const double norm = grid.weights.dot(sol.u.cwiseAbs2());
  sol.u /= std::sqrt(norm);
  sol.norm_residual = std::abs(grid.weights.dot(sol.u.cwiseAbs2()) - 1.0);
  return sol;
}

double relative_change(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), 1e-300);
}

} // namespace

RadialSolution solve_state(const QuantumState &state, const SolverConfig &config) {
  state.validate();
  config.validate();
  if (state.is_free()) {
    throw InvalidArgument("solve_state: r_c must be finite (use free_atom_fisher or a large r_c)");
  }
  int n_points = config.grid_size;
  RadialSolution sol = solve_on_grid(state, n_points);
  if (config.converge) {
    // Free-atom binding energy sets the absolute scale near E = 0.
    const double energy_scale = state.Z * state.Z / (2.0 * state.n * state.n);
    while (true) {
      const int next = 2 * n_points;
      if (next > config.grid_max) {
        std::ostringstream msg;
        msg << "solve_state: " << state.label() << " at r_c=" << state.r_c << " not converged by N="
            << n_points;
        if (n_points > config.grid_size) {
          msg << " (last |dE|=" << sol.energy_change << ")";
        } else {
          msg << " (grid_max leaves no room to refine)";
        }
        throw NumericalFailure(msg.str());
      }
      RadialSolution finer = solve_on_grid(state, next);
      finer.energy_change = std::abs(finer.energy - sol.energy);
      const bool energy_ok =
          finer.energy_change <= config.energy_rtol * std::max(std::abs(finer.energy), energy_scale);
      const bool quad_ok =
          relative_change(expectation_r(finer, -2), expectation_r(sol, -2)) <= config.quadrature_rtol &&
          relative_change(expectation_r(finer, 2), expectation_r(sol, 2)) <= config.quadrature_rtol;
      sol = std::move(finer);
      n_points = next;
      if (energy_ok && quad_ok) {
        break;
      }
    }
  }
  const int expected_nodes = state.n - state.l - 1;
  if (const int nodes = count_nodes(sol); nodes != expected_nodes) {
    throw ConsistencyFailure("solve_state: " + state.label() + " has " + std::to_string(nodes) +
                             " radial nodes, expected " + std::to_string(expected_nodes));
  }
  return sol;
}

int count_nodes(const RadialSolution &sol) { return count_sign_changes(sol.u); }

double expectation_r(const RadialSolution &sol, int k) {
  if (k != -2 && k != -1 && k != 1 && k != 2) {
    throw InvalidArgument("expectation_r: k must be one of -2, -1, 1, 2");
  }
  const CollocationGrid &grid = *sol.grid;
  const int n = grid.size();
  double sum = 0.0;
  for (int i = 1; i < n; ++i) {
    const double r = grid.r(i);
    sum += grid.weights(i) * sol.u(i) * sol.u(i) * std::pow(r, k);
  }
  // u^2 / r^2 tends to u'(0)^2 at the origin.
  if (k == -2) {
    const double du0 = grid.diff.row(0).dot(sol.u);
    sum += grid.weights(0) * du0 * du0;
  }
  return sum;
}

double analytic_wavefunction(const QuantumState &state, double energy, double r) {
  if (!(energy < 0.0)) {
    throw InvalidArgument("analytic_wavefunction: closed form requires E < 0");
  }
  if (r < 0.0) {
    throw InvalidArgument("analytic_wavefunction: r must be non-negative");
  }
  const double kappa = std::sqrt(-2.0 * energy);
  const double x = 2.0 * kappa * r;
  const int l = state.l;
  const double a = l + 1.0 - state.Z / kappa;
  return std::pow(x, l) * kummer_1f1(a, 2.0 * l + 2.0, x) * std::exp(-kappa * r);
}

namespace {

// Sign-carrying part of the closed form at the wall; the remaining factors
// are positive for r_c > 0.
double wall_value(const QuantumState &state, double energy) {
  const double kappa = std::sqrt(-2.0 * energy);
  const int l = state.l;
  return kummer_1f1(l + 1.0 - state.Z / kappa, 2.0 * l + 2.0, 2.0 * kappa * state.r_c);
}

} // namespace

double analytic_energy_root(const QuantumState &state, double e_lo, double e_hi,
                            const RootConfig &config) {
  state.validate();
  if (state.is_free()) {
    throw InvalidArgument("analytic_energy_root: r_c must be finite");
  }
  if (e_lo > e_hi) {
    std::swap(e_lo, e_hi);
  }
  if (!(e_hi < 0.0)) {
    throw BracketFailure("analytic_energy_root: bracket must lie at E < 0");
  }
  double f_lo = wall_value(state, e_lo);
  double f_hi = wall_value(state, e_hi);
  if (f_lo == 0.0) {
    return e_lo;
  }
  if (f_hi == 0.0) {
    return e_hi;
  }
  if ((f_lo > 0) == (f_hi > 0)) {
    throw BracketFailure("analytic_energy_root: no sign change in [" + std::to_string(e_lo) +
                         ", " + std::to_string(e_hi) + "]");
  }
  int iter = 0;
  // Bisection to a narrow bracket.
  while (e_hi - e_lo > 1e-6 * std::max(1.0, std::abs(e_lo)) && iter < config.max_iterations) {
    const double mid = 0.5 * (e_lo + e_hi);
    const double f_mid = wall_value(state, mid);
    if (f_mid == 0.0) {
      return mid;
    }
    if ((f_mid > 0) == (f_lo > 0)) {
      e_lo = mid;
      f_lo = f_mid;
    } else {
      e_hi = mid;
      f_hi = f_mid;
    }
    ++iter;
  }
  // False position with the Illinois correction; a plain secant stagnates on
  // one side because the wall value grows exponentially with the energy.
  int side = 0;
  while (iter < config.max_iterations) {
    if (e_hi - e_lo < config.abs_tol) {
      return std::abs(f_lo) < std::abs(f_hi) ? e_lo : e_hi;
    }
    double next = e_hi - f_hi * (e_hi - e_lo) / (f_hi - f_lo);
    if (!(next > e_lo && next < e_hi)) {
      next = 0.5 * (e_lo + e_hi);
    }
    const double f_next = wall_value(state, next);
    if (f_next == 0.0) {
      return next;
    }
    if ((f_next > 0) == (f_lo > 0)) {
      e_lo = next;
      f_lo = f_next;
      if (side == -1) {
        f_hi *= 0.5;
      }
      side = -1;
    } else {
      e_hi = next;
      f_hi = f_next;
      if (side == 1) {
        f_lo *= 0.5;
      }
      side = 1;
    }
    ++iter;
  }
  throw NumericalFailure("analytic_energy_root: no convergence after " +
                         std::to_string(config.max_iterations) + " iterations");
}

double analytic_energy_root_near(const QuantumState &state, double guess,
                                 const RootConfig &config) {
  if (!(guess < 0.0)) {
    throw BracketFailure("analytic_energy_root_near: guess must be negative");
  }
  double delta = 1e-9 * std::max(1.0, std::abs(guess));
  for (int k = 0; k < 60; ++k) {
    const double lo = guess - delta;
    const double hi = std::min(guess + delta, 0.5 * guess);
    const double f_lo = wall_value(state, lo);
    const double f_hi = wall_value(state, hi);
    if ((f_lo > 0) != (f_hi > 0) || f_lo == 0.0 || f_hi == 0.0) {
      return analytic_energy_root(state, lo, hi, config);
    }
    delta *= 2.0;
    if (hi >= 0.5 * guess && delta > std::abs(guess)) {
      break;
    }
  }
  throw BracketFailure("analytic_energy_root_near: no sign change around E=" +
                       std::to_string(guess));
}

} // namespace cha
