#pragma once

// Fisher information of position and momentum densities for a central-field
// state, from radial expectation values.

#include "cha/momentum.hpp"
#include "cha/radial.hpp"

namespace cha {

struct ExpectationSet {
  double r_m2 = 0.0; // <r^-2>
  double r_m1 = 0.0; // <r^-1>
  double r_p2 = 0.0; // <r^2>
  double p_p2 = 0.0; // <p^2>
  double p_m2 = 0.0; // <p^-2>
};

/// r-space values from the collocation quadrature and p-space values from
/// the momentum transform.
ExpectationSet expectations(const RadialSolution &sol, const MomentumSolution &msol);

/// I_r = 4<p^2> - 2(2l+1)|m| <r^-2>. Throws ConsistencyFailure if not positive.
double fisher_r(const ExpectationSet &exp, const QuantumState &state);

/// The same quantity with <p^2> replaced by 2(E + Z<r^-1>). Throws
/// ConsistencyFailure when it differs from fisher_r by more than `rtol`.
double fisher_r_from_energy(const ExpectationSet &exp, const QuantumState &state, double energy,
                            double rtol = 1e-9);

/// I_p = 4<r^2> - 2(2l+1)|m| <p^-2>. Throws ConsistencyFailure if not positive.
double fisher_p(const ExpectationSet &exp, const QuantumState &state);

struct FisherBounds {
  double lower = 0.0; // 81 / (<r^2><p^2>)
  double upper = 0.0; // 16 <r^2><p^2>
};

FisherBounds fisher_bounds(const ExpectationSet &exp);

struct FisherReport {
  QuantumState state;
  double energy = 0.0;
  double I_r = 0.0;
  double I_p = 0.0;
  double I_t = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool lower_ok = false; // lower_bound <= I_t
  bool upper_ok = false; // I_t <= upper_bound
  ExpectationSet expectations;
};

/// Assembles the report; the energy is only used for the consistency check
/// of fisher_r_from_energy.
FisherReport make_report(const QuantumState &state, double energy, const ExpectationSet &exp);

struct FreeFisher {
  double I_r = 0.0;
  double I_p = 0.0;
};

/// Closed forms for the unconfined atom:
///   I_r = 4 Z^2/n^2 (1 - |m|/n),
///   I_p = 2 n^2/Z^2 [(5n^2 + 1 - 3l(l+1)) - |m|(8n - 6l - 3)].
FreeFisher free_atom_fisher(const QuantumState &state);

/// Maps a report for charge 1 at radius r_c to charge Z at radius r_c / Z,
/// the exact hydrogenic scaling under a hard wall: lengths shrink by Z,
/// momenta grow by Z. I_r gains Z^2, I_p loses Z^2, I_t and the bounds are
/// unchanged. Throws InvalidArgument for Z <= 0 or a base with charge != 1.
FisherReport z_scale(const FisherReport &base, double Z);

/// Integral of |grad rho|^2 / rho over space, with rho = (u/r)^2 |Theta_lm|^2 / (2 pi),
/// split into a radial term (4 R'^2 from the collocation derivative of u)
/// and <r^-2> times a polar term (quadrature avoiding 1e-8 neighbourhoods of
/// the zeros of Theta). Independent of the expectation-value route.
double direct_fisher_oracle(const RadialSolution &sol, const QuantumState &state);

/// Polar part of the oracle: integral of (g')^2/g sin(theta) over [0, pi],
/// g = Theta_lm^2. Equals 4l(l+1) - 2(2l+1)|m| analytically.
double angular_fisher(int l, int m);

struct Evaluation {
  RadialSolution radial;
  MomentumSolution momentum;
  FisherReport report;
};

/// Solve, transform and evaluate one confined state.
Evaluation evaluate(const QuantumState &state, const SolverConfig &solver = {},
                    const MomentumConfig &momentum = {});

} // namespace cha
