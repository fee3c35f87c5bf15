#include "cha/fisher.hpp"

#include "cha/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace cha {

ExpectationSet expectations(const RadialSolution &sol, const MomentumSolution &msol) {
  ExpectationSet e;
  e.r_m2 = expectation_r(sol, -2);
  e.r_m1 = expectation_r(sol, -1);
  e.r_p2 = expectation_r(sol, 2);
  e.p_p2 = expectation_p(msol, 2);
  e.p_m2 = expectation_p(msol, -2);
  return e;
}

namespace {

double angular_weight(const QuantumState &s) { return 2.0 * (2 * s.l + 1) * std::abs(s.m); }

void require_positive(double value, const char *what, const QuantumState &s) {
  if (!(value > 0.0)) {
    throw ConsistencyFailure(std::string(what) + " is not positive for " + s.label() +
                             " m=" + std::to_string(s.m) + " at r_c=" + std::to_string(s.r_c));
  }
}

} // namespace

double fisher_r(const ExpectationSet &exp, const QuantumState &state) {
  const double value = 4.0 * exp.p_p2 - angular_weight(state) * exp.r_m2;
  require_positive(value, "I_r", state);
  return value;
}

double fisher_r_from_energy(const ExpectationSet &exp, const QuantumState &state, double energy,
                            double rtol) {
  const double value = 8.0 * energy + 8.0 * state.Z * exp.r_m1 - angular_weight(state) * exp.r_m2;
  const double direct = fisher_r(exp, state);
  if (std::abs(value - direct) > rtol * std::abs(direct)) {
    throw ConsistencyFailure("I_r from the energy (" + std::to_string(value) +
                             ") disagrees with 4<p^2> form (" + std::to_string(direct) + ") for " +
                             state.label() + " at r_c=" + std::to_string(state.r_c));
  }
  return value;
}

double fisher_p(const ExpectationSet &exp, const QuantumState &state) {
  const double value = 4.0 * exp.r_p2 - angular_weight(state) * exp.p_m2;
  require_positive(value, "I_p", state);
  return value;
}

FisherBounds fisher_bounds(const ExpectationSet &exp) {
  const double product = exp.r_p2 * exp.p_p2;
  return {81.0 / product, 16.0 * product};
}

FisherReport make_report(const QuantumState &state, double energy, const ExpectationSet &exp) {
  FisherReport r;
  r.state = state;
  r.energy = energy;
  r.expectations = exp;
  r.I_r = fisher_r(exp, state);
  fisher_r_from_energy(exp, state, energy);
  r.I_p = fisher_p(exp, state);
  r.I_t = r.I_r * r.I_p;
  const FisherBounds b = fisher_bounds(exp);
  r.lower_bound = b.lower;
  r.upper_bound = b.upper;
  r.lower_ok = b.lower <= r.I_t;
  r.upper_ok = r.I_t <= b.upper;
  return r;
}

FreeFisher free_atom_fisher(const QuantumState &state) {
  QuantumState s = state;
  s.r_c = std::numeric_limits<double>::infinity();
  s.validate();
  const double n = s.n;
  const double l = s.l;
  const double m = std::abs(s.m);
  const double z2 = s.Z * s.Z;
  FreeFisher f;
  f.I_r = 4.0 * z2 / (n * n) * (1.0 - m / n);
  f.I_p = 2.0 * n * n / z2 * ((5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0)) - m * (8.0 * n - 6.0 * l - 3.0));
  return f;
}

FisherReport z_scale(const FisherReport &base, double Z) {
  if (!(Z > 0.0) || !std::isfinite(Z)) {
    throw InvalidArgument("z_scale: Z must be positive");
  }
  if (base.state.Z != 1.0) {
    throw InvalidArgument("z_scale: base report must be for Z = 1");
  }
  const double z2 = Z * Z;
  FisherReport r = base;
  r.state.Z = Z;
  r.state.r_c = base.state.r_c / Z;
  r.energy = base.energy * z2;
  r.expectations.r_m2 *= z2;
  r.expectations.r_m1 *= Z;
  r.expectations.r_p2 /= z2;
  r.expectations.p_p2 *= z2;
  r.expectations.p_m2 /= z2;
  r.I_r = base.I_r * z2;
  r.I_p = base.I_p / z2;
  r.I_t = base.I_t;
  return r;
}

double angular_fisher(int l, int m) {
  if (l < 0 || std::abs(m) > l) {
    throw InvalidArgument("angular_fisher: need |m| <= l");
  }
  constexpr double pi = std::numbers::pi;
  constexpr double exclude = 1e-8;
  // Zeros of Theta: the poles for m != 0 and the sign changes in between.
  std::vector<double> zeros;
  if (m != 0) {
    zeros.push_back(0.0);
  }
  constexpr int scan = 4000;
  double prev_t = 0.0;
  double prev_v = polar_amplitude(l, m, 1e-6);
  for (int i = 1; i <= scan; ++i) {
    const double t = pi * i / scan - (i == scan ? 1e-6 : 0.0);
    const double v = polar_amplitude(l, m, t);
    if ((v > 0) != (prev_v > 0) && v != 0.0) {
      double a = prev_t;
      double b = t;
      const bool a_positive = prev_v > 0;
      for (int k = 0; k < 200 && b - a > 1e-15; ++k) {
        const double mid = 0.5 * (a + b);
        if ((polar_amplitude(l, m, mid) > 0) == a_positive) {
          a = mid;
        } else {
          b = mid;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_v = v;
  }
  if (m != 0) {
    zeros.push_back(pi);
  }

  std::vector<double> edges{0.0};
  for (double z : zeros) {
    if (z > 0.0) {
      edges.push_back(z - exclude);
    }
    if (z < pi) {
      edges.push_back(z + exclude);
    }
  }
  edges.push_back(pi);
  if (m != 0) {
    // The poles were both zeros; drop the empty pieces at the ends.
    edges.erase(edges.begin());
    edges.pop_back();
  }

  const QuadratureRule rule = gauss_legendre(24);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); k += 2) {
    const double a = edges[k];
    const double b = edges[k + 1];
    constexpr int panels = 16;
    for (int p = 0; p < panels; ++p) {
      const double pa = a + (b - a) * p / panels;
      const double pb = a + (b - a) * (p + 1) / panels;
      const double half = 0.5 * (pb - pa);
      const double mid = 0.5 * (pa + pb);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = mid + half * rule.nodes[i];
        const double theta = polar_amplitude(l, m, t);
        const double g = theta * theta;
        const double dg = 2.0 * theta * polar_amplitude_derivative(l, m, t);
        if (g > 0.0) {
          sum += half * rule.weights[i] * dg * dg / g * std::sin(t);
        }
      }
    }
  }
  if (!std::isfinite(sum)) {
    throw NumericalFailure("angular_fisher: quadrature did not produce a finite value");
  }
  return sum;
}

double direct_fisher_oracle(const RadialSolution &sol, const QuantumState &state) {
  const CollocationGrid &grid = *sol.grid;
  const Eigen::VectorXd du = sol.du();
  // rho'^2 / rho = 4 R'^2 with R = u/r, written without dividing by rho so the
  // far tail of a weakly confined state does not amplify round-off. The r^2
  // volume factor turns 4 R'^2 r^2 into 4 (u' - u/r)^2; the origin term vanishes.
  double radial = 0.0;
  for (int i = 1; i < grid.size(); ++i) {
    const double g = du(i) - sol.u(i) / grid.r(i);
    radial += grid.weights(i) * 4.0 * g * g;
  }

  return radial + expectation_r(sol, -2) * angular_fisher(state.l, state.m);
}

Evaluation evaluate(const QuantumState &state, const SolverConfig &solver,
                    const MomentumConfig &momentum) {
  Evaluation ev{solve_state(state, solver), {}, {}};
  ev.momentum = transform(ev.radial, momentum);
  ev.report = make_report(state, ev.radial.energy, expectations(ev.radial, ev.momentum));
  return ev;
}

} // namespace cha
