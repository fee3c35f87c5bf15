#pragma once

// Momentum-space radial function of a confined state,
//   P(p) = sqrt(2/pi) * integral_0^{r_c} u(r) r j_l(p r) dr,
// the radial part of the 3D Fourier transform once the angular integrals
// are done in closed form. The (-i)^l phase is dropped: only P^2 is used.

#include "cha/radial.hpp"

#include <complex>
#include <vector>

namespace cha {

/// Large-p expansion of F(p) = sqrt(pi/2) p P(p), obtained from the
/// endpoint expansion of the radial integral. The wall at r_c, where u
/// vanishes with non-zero slope, contributes an oscillating series and, for
/// l = 0, the Coulomb cusp at the origin a non-oscillating one:
///   F(p) ~ Re[exp(i (p r_c - (l+1) pi/2)) sum_n wall[n] p^-n] + sum_n origin[n] p^-n.
/// Used to add the integral beyond p_max in closed form.
struct MomentumTail {
  int l = 0;
  double r_c = 0.0;
  std::vector<std::complex<double>> wall; // index n: coefficient of p^-n
  std::vector<double> origin;

  void scale(double factor);
};

/// Highest powers kept: the wall series is complete through p^-6 (relative
/// order p^-4), the origin series through p^-9.
inline constexpr int kTailWallOrder = 6;
inline constexpr int kTailOriginOrder = 9;

/// Builds the expansion from the wall slope u'(r_c), the Taylor coefficients
/// of u at the origin, the energy and the potential.
MomentumTail momentum_tail(const RadialSolution &sol);

/// Integral over [p_max, inf) of (2/pi) F_a(p) F_b(p) p^power, keeping wall
/// terms up to p^-wall_order and origin terms up to p^-origin_order.
double tail_integral(const MomentumTail &a, const MomentumTail &b, int power, double p_max,
                     int wall_order = kTailWallOrder, int origin_order = kTailOriginOrder);

struct MomentumConfig {
  double norm_tol = 1e-8;       // |1 - integral P^2 p^2| before renormalization
  double tail_tol = 1e-10;      // bound on the neglected part of the tail
  double p_max_cap = 1e7;       // give up beyond this cutoff
  int panel_order = 10;         // Gauss-Legendre points per panel
};

struct MomentumSolution {
  QuantumState state;
  std::vector<double> p;        // quadrature nodes on [0, p_max]
  std::vector<double> weights;  // quadrature weights
  std::vector<double> values;   // P(p) at the nodes, normalized
  double p_max = 0.0;
  double norm_deficit = 0.0;    // |1 - norm| before renormalization
  double tail_error = 0.0;      // estimated error of the closed-form tail (norm units)
  MomentumTail tail;
};

/// Transforms a normalized radial solution. p_max starts at
/// max(20, 10 sqrt(2|E| + Z^2)) and is doubled until the estimated error of
/// the closed-form tail is below `tail_tol` and the norm deficit below
/// `norm_tol`. Throws NumericalFailure with the achieved deficit otherwise.
MomentumSolution transform(const RadialSolution &sol, const MomentumConfig &config = {});

/// P(p) for a single momentum, using the same radial quadrature as
/// `transform` with the given cutoff. Not renormalized.
double momentum_amplitude(const RadialSolution &sol, double p, double p_max);

/// <p^k> = integral P^2 p^{2+k} dp, k in {-2, 2}, including the tail.
double expectation_p(const MomentumSolution &msol, int k);

/// integral P_a P_b p^2 dp for two states of equal l and r_c; `b` is
/// evaluated on the quadrature of `a`.
double momentum_overlap(const MomentumSolution &a, const RadialSolution &b);

} // namespace cha
