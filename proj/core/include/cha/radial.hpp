#pragma once

// Confined radial Schroedinger problem
//   [-1/2 d^2/dr^2 + l(l+1)/(2 r^2) - Z/r] u = E u,   u(0) = u(r_c) = 0,
// for the reduced radial function u(r) = r R(r), discretized by Lobatto
// collocation (generalized pseudospectral method).

#include "cha/numerics.hpp"
#include "cha/state.hpp"

#include <Eigen/Dense>

#include <memory>

namespace cha {

struct RadialHamiltonian {
  std::shared_ptr<const CollocationGrid> grid;
  /// Symmetric operator on the interior nodes 1..N-2, in the basis
  /// y_i = sqrt(w_i) u_i. Its spectrum is that of the collocation operator.
  Eigen::MatrixXd matrix;
};

/// Discretizes the radial Hamiltonian for angular momentum l and nuclear
/// charge Z >= 0 on an N-point grid over [0, r_c]. Requires N >= 16.
RadialHamiltonian build_hamiltonian(int l, double Z, double r_c, int n_points);

struct RadialSolution {
  QuantumState state;
  double energy = 0.0; // hartree
  std::shared_ptr<const CollocationGrid> grid;
  Eigen::VectorXd u;          // u(r) = r R(r) at grid nodes, unit norm
  double norm_residual = 0.0; // |sum w u^2 - 1|
  double energy_change = 0.0; // |E(N) - E(N/2)| from the last doubling, 0 if none

  [[nodiscard]] int grid_size() const { return grid->size(); }
  [[nodiscard]] const Eigen::VectorXd &r() const { return grid->r; }
  [[nodiscard]] const Eigen::VectorXd &weights() const { return grid->weights; }

  /// u interpolated at an arbitrary radius in [0, r_c].
  [[nodiscard]] double u_at(double radius) const { return grid->interpolate(u, radius); }
  /// du/dr at the grid nodes.
  [[nodiscard]] Eigen::VectorXd du() const { return grid->diff * u; }
};

/// Solves for the state (n, l) at finite r_c. The eigenvalue is selected as
/// the (n-l)-th in ascending order; the node count is then checked. With
/// `config.converge`, the grid is doubled until successive energies and
/// <r^-2>, <r^2> agree to the configured tolerances.
RadialSolution solve_state(const QuantumState &state, const SolverConfig &config = {});

/// Number of sign changes of u over the interior nodes, ignoring samples
/// below 1e-8 of the peak magnitude.
int count_nodes(const RadialSolution &sol);

/// <r^k> = integral of u^2 r^k dr, k in {-2, -1, 1, 2}.
double expectation_r(const RadialSolution &sol, int k);

/// Unnormalized closed-form bound-state radial function
///   (2 kappa r)^l 1F1(l + 1 - Z/kappa; 2l + 2; 2 kappa r) exp(-kappa r),
/// kappa = sqrt(-2E). Defined for E < 0 only.
double analytic_wavefunction(const QuantumState &state, double energy, double r);

struct RootConfig {
  double abs_tol = 1e-13;
  int max_iterations = 400;
};

/// Root of the closed-form radial function at r = r_c inside [e_lo, e_hi]
/// (both negative, with a sign change), by bisection and false position.
double analytic_energy_root(const QuantumState &state, double e_lo, double e_hi,
                            const RootConfig &config = {});

/// Widens a bracket around `guess` until the wall value changes sign, then
/// calls analytic_energy_root. Throws BracketFailure if no negative-energy
/// bracket is found.
double analytic_energy_root_near(const QuantumState &state, double guess,
                                 const RootConfig &config = {});

} // namespace cha
