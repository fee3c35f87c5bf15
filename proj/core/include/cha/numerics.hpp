#pragma once

// Quadrature, collocation and special-function kernels shared by the
// radial, momentum and Fisher-information code.

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace cha {

struct QuadratureRule {
  std::vector<double> nodes;   // ascending, in [-1, 1]
  std::vector<double> weights; // positive, sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact to degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// n-point Legendre-Gauss-Lobatto rule on [-1, 1] (endpoints included);
/// exact to degree 2n-3.
QuadratureRule gauss_lobatto(int n);

/// Gauss-Legendre rule of the given order replicated on each panel
/// [breaks[i], breaks[i+1]]. Nodes and weights are in the caller's units.
QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int order);

/// Lobatto collocation grid mapped linearly onto [0, r_max].
///
/// Cardinal functions are the Lagrange polynomials through the nodes, so
/// `diff` applied to nodal samples of a polynomial of degree < size()
/// reproduces its derivative, and `weights` is the Lobatto rule rescaled to
/// the interval.
struct CollocationGrid {
  double r_max = 0.0;
  Eigen::VectorXd r;       // mapped nodes, r(0) = 0, r(N-1) = r_max
  Eigen::VectorXd weights; // integration weights in units of length
  Eigen::MatrixXd diff;    // d/dr at the nodes
  Eigen::VectorXd bary;    // barycentric interpolation weights (scaled)

  [[nodiscard]] int size() const { return static_cast<int>(r.size()); }

  /// Evaluates the interpolating polynomial through (r, values) at x.
  [[nodiscard]] double interpolate(const Eigen::VectorXd &values, double x) const;
};

/// Builds the N-point Lobatto grid on [0, r_max]. Requires N >= 3.
CollocationGrid make_collocation_grid(int n_points, double r_max);

/// Confluent hypergeometric function 1F1(a; b; x) for real a, b and x >= 0,
/// summed as an ascending series with compensated summation. A non-positive
/// integer `a` gives a terminating polynomial.
double kummer_1f1(double a, double b, double x);

/// Spherical Bessel function of the first kind j_l(x), 0 <= l <= 30, x >= 0.
double spherical_bessel_j(int l, double x);

/// Fills out[k] = j_k(x) for k = 0..out.size()-1.
void spherical_bessel_j_array(double x, std::span<double> out);

/// Normalized polar factor Theta_{l,m}(theta): the integral of Theta^2 sin(theta)
/// over [0, pi] is 1. Sign convention is that of P_l^{|m|}(cos theta).
double polar_amplitude(int l, int m, double theta);

/// d Theta_{l,m} / d theta. Singular only in the limit theta -> 0, pi when
/// computed through the recurrence; callers stay away from the poles.
double polar_amplitude_derivative(int l, int m, double theta);

/// |Theta_{l,m}(theta)|^2. Multiply by 1/(2 pi) for the full angular density.
double assoc_legendre_density(int l, int m, double theta);

struct SymEigResult {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors; // orthonormal columns
};

/// Dense symmetric eigendecomposition.
SymEigResult sym_eig(const Eigen::MatrixXd &h);

} // namespace cha
