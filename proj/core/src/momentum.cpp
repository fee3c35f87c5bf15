#include "cha/momentum.hpp"

#include "cha/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>

namespace cha {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

// integral_P^inf p^-s exp(i omega p) dp, asymptotic in 1/(omega P).
std::complex<double> oscillatory_tail(double s, double omega, double P) {
  const std::complex<double> i_omega(0.0, omega);
  const std::complex<double> phase = std::polar(1.0, omega * P);
  std::complex<double> sum = 0.0;
  double poch = 1.0; // (s)_k
  double last = std::numeric_limits<double>::infinity();
  std::complex<double> denom = i_omega;
  for (int k = 0; k < 12; ++k) {
    const std::complex<double> term = -poch * std::pow(P, -s - k) * phase / denom;
    if (std::abs(term) > last) {
      break; // the asymptotic series started to diverge
    }
    sum += term;
    last = std::abs(term);
    if (last < 1e-18 * std::abs(sum)) {
      break;
    }
    poch *= (s + k);
    denom *= i_omega;
  }
  return sum;
}

double flat_tail(double s, double P) { return std::pow(P, 1.0 - s) / (s - 1.0); }

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Radial quadrature for the transform at momenta up to p_max: composite
// Gauss-Legendre with panels no wider than half a period of j_l(p_max r),
// resolved by the ten-point rule on each panel.
struct RadialKernel {
  int l = 0;
  std::vector<double> r;
  std::vector<double> coef; // w_i u(r_i) r_i

  double amplitude(double p) const {
    std::array<double, 31> jl{};
    double sum = 0.0;
    const std::span<double> out(jl.data(), static_cast<std::size_t>(l + 1));
    for (std::size_t i = 0; i < r.size(); ++i) {
      spherical_bessel_j_array(p * r[i], out);
      sum += coef[i] * jl[static_cast<std::size_t>(l)];
    }
    return kSqrt2OverPi * sum;
  }
};

// Radius beyond which |u| stays below 1e-14 of its peak.
double effective_extent(const RadialSolution &sol) {
  const double peak = sol.u.cwiseAbs().maxCoeff();
  const int n = sol.grid_size();
  for (int i = n - 1; i > 0; --i) {
    if (std::abs(sol.u(i)) > 1e-14 * peak) {
      return sol.r()(std::min(i + 1, n - 1));
    }
  }
  return sol.r()(n - 1);
}

RadialKernel make_kernel(const RadialSolution &sol, double p_max, int order) {
  const double extent = effective_extent(sol);
  const double width = std::min(kPi / p_max, extent / 16.0);
  const int panels = static_cast<int>(std::ceil(extent / width));
  std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
  for (int i = 0; i <= panels; ++i) {
    breaks[static_cast<std::size_t>(i)] = extent * i / panels;
  }
  const QuadratureRule rule = composite_gauss_legendre(breaks, order);
  RadialKernel k;
  k.l = sol.state.l;
  k.r = rule.nodes;
  k.coef.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    k.coef[i] = rule.weights[i] * sol.u_at(x) * x;
  }
  return k;
}

// p quadrature on [0, p_max]: panels of half a period of the wall
// oscillation, with geometric refinement toward p = 0.
QuadratureRule momentum_rule(double p_max, double extent, int order) {
  const double width = std::min(kPi / extent, p_max / 8.0);
  std::vector<double> breaks{0.0};
  double b = width / 16.0;
  while (b < width && b < p_max) {
    breaks.push_back(b);
    b *= 2.0;
  }
  const double start = breaks.back();
  const int panels = std::max(1, static_cast<int>(std::ceil((p_max - start) / width)));
  for (int i = 1; i <= panels; ++i) {
    breaks.push_back(start + (p_max - start) * i / panels);
  }
  return composite_gauss_legendre(breaks, order);
}

} // namespace

void MomentumTail::scale(double factor) {
  for (auto &w : wall) {
    w *= factor;
  }
  for (auto &o : origin) {
    o *= factor;
  }
}

MomentumTail momentum_tail(const RadialSolution &sol) {
  constexpr int kMaxOrder = kTailWallOrder;
  const QuantumState &st = sol.state;
  const int l = st.l;
  const double R = st.r_c;
  const double Z = st.Z;
  const double E = sol.energy;
  const Eigen::VectorXd du = sol.du();

  MomentumTail t;
  t.l = l;
  t.r_c = R;
  t.wall.assign(kMaxOrder + 1, 0.0);
  t.origin.assign(kTailOriginOrder + 1, 0.0);

  // Wall derivatives of u from u'' = V u, V = l(l+1)/r^2 - 2Z/r - 2E, u(R) = 0.
  const double c = l * (l + 1.0);
  const double v0 = c / (R * R) - 2.0 * Z / R - 2.0 * E;
  const double v1 = -2.0 * c / (R * R * R) + 2.0 * Z / (R * R);
  const double v2 = 6.0 * c / (R * R * R * R) - 4.0 * Z / (R * R * R);
  const double s = du(du.size() - 1);
  const std::array<double, 6> uj{0.0, s, 0.0, v0 * s, 2.0 * v1 * s, (3.0 * v2 + v0 * v0) * s};

  // Hankel polynomial: x j_l(x) = Re[(-i)^{l+1} e^{ix} q(x)],
  // q(x) = sum_k ck (i/(2x))^k, ck = (l+k)! / (k! (l-k)!).
  const std::complex<double> I(0.0, 1.0);
  std::vector<std::complex<double>> qcoef(static_cast<std::size_t>(l) + 1);
  for (int k = 0; k <= l; ++k) {
    const double ck = std::exp(std::lgamma(l + k + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(l - k + 1.0));
    qcoef[static_cast<std::size_t>(k)] = ck * std::pow(0.5 * I, k);
  }
  // Endpoint series: sum_K (-1)^K g^(K)(R) / (i p)^{K+1}, g(r) = u(r) q(p r),
  // g^(K) = sum_j C(K, j) u^(j) p^{K-j} q^(K-j); with K = j + m.
  for (int j = 1; j < static_cast<int>(uj.size()); ++j) {
    if (uj[static_cast<std::size_t>(j)] == 0.0) {
      continue;
    }
    for (int m = 0; j + 1 + m <= kMaxOrder; ++m) {
      const std::complex<double> pref = binomial(m + j, j) * std::pow(-1.0, m + j) /
                                        std::pow(I, m + j + 1);
      for (int k = 0; k <= l && j + 1 + k + m <= kMaxOrder; ++k) {
        double poch = 1.0; // (k)_m from differentiating x^-k m times, sign below
        for (int i = 0; i < m; ++i) {
          poch *= (k + i);
        }
        if (poch == 0.0) {
          continue;
        }
        const std::complex<double> dq = qcoef[static_cast<std::size_t>(k)] * std::pow(-1.0, m) *
                                        poch * std::pow(R, -k - m);
        t.wall[static_cast<std::size_t>(j + 1 + k + m)] += uj[static_cast<std::size_t>(j)] * pref * dq;
      }
    }
  }
  // Origin series from u = sum_k v_k r^k, k >= l+1, with
  // (k(k-1) - l(l+1)) v_k = -2Z v_{k-1} - 2E v_{k-2}. Term by term,
  // integral_0^inf r^k (p r) j_l(p r) dr = M_k p^-(k+1) (Abel-regularized), and
  // M_k = sqrt(pi) 2^k Gamma((l+k+2)/2) / Gamma((l-k+1)/2) vanishes unless k - l is even.
  if (l + 3 <= kTailOriginOrder) {
    Eigen::VectorXd deriv = sol.u;
    double fact = 1.0;
    for (int k = 1; k <= l + 1; ++k) {
      deriv = sol.grid->diff * deriv;
      fact *= k;
    }
    std::array<double, kTailOriginOrder + 1> v{};
    v[static_cast<std::size_t>(l + 1)] = deriv(0) / fact;
    for (int k = l + 2; k <= kTailOriginOrder; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      v[uk] = (-2.0 * Z * v[uk - 1] - 2.0 * E * v[uk - 2]) / (k * (k - 1.0) - c);
    }
    for (int k = l + 2; k + 1 <= kTailOriginOrder; k += 2) {
      const double g = 0.5 * (l - k + 1); // negative half-integer
      const double mk = std::sqrt(kPi) * std::pow(2.0, k) * std::tgamma(0.5 * (l + k + 2)) /
                        std::tgamma(g);
      t.origin[static_cast<std::size_t>(k + 1)] = v[static_cast<std::size_t>(k)] * mk;
    }
  }
  return t;
}

double tail_integral(const MomentumTail &a, const MomentumTail &b, int power, double p_max,
                     int wall_order, int origin_order) {
  if (a.l != b.l || a.r_c != b.r_c) {
    throw InvalidArgument("tail_integral: expansions belong to different l or r_c");
  }
  const double R = a.r_c;
  const std::complex<double> phase0 = std::pow(std::complex<double>(0.0, -1.0), a.l + 1);
  const auto coef = [](const auto &v, int n, int limit) {
    using T = std::decay_t<decltype(v[0])>;
    return n <= limit && n < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(n)] : T{};
  };
  const int top = std::max(wall_order, origin_order);
  double sum = 0.0;
  for (int n = 2; n <= top; ++n) {
    for (int m = 2; m <= top; ++m) {
      const double s = n + m - power;
      const std::complex<double> wa = coef(a.wall, n, wall_order);
      const std::complex<double> wb = coef(b.wall, m, wall_order);
      const double oa = coef(a.origin, n, origin_order);
      const double ob = coef(b.origin, m, origin_order);
      // Re[X] Re[Y] = (Re[X Y] + Re[X conj(Y)]) / 2
      if (wa != 0.0 && wb != 0.0) {
        sum += 0.5 * (phase0 * phase0 * wa * wb * oscillatory_tail(s, 2.0 * R, p_max)).real();
        sum += 0.5 * (wa * std::conj(wb)).real() * flat_tail(s, p_max);
      }
      if (wa != 0.0 && ob != 0.0) {
        sum += ob * (phase0 * wa * oscillatory_tail(s, R, p_max)).real();
      }
      if (wb != 0.0 && oa != 0.0) {
        sum += oa * (phase0 * wb * oscillatory_tail(s, R, p_max)).real();
      }
      if (oa != 0.0 && ob != 0.0) {
        sum += oa * ob * flat_tail(s, p_max);
      }
    }
  }
  return 2.0 / kPi * sum;
}

double momentum_amplitude(const RadialSolution &sol, double p, double p_max) {
  return make_kernel(sol, std::max(p, p_max), 10).amplitude(p);
}

MomentumSolution transform(const RadialSolution &sol, const MomentumConfig &config) {
  const QuantumState &s = sol.state;
  const double extent = effective_extent(sol);
  const MomentumTail tail = momentum_tail(sol);
  double p_max = std::max(20.0, 10.0 * std::sqrt(2.0 * std::abs(sol.energy) + s.Z * s.Z));
  p_max = std::max(p_max, 20.0 / extent);

  while (true) {
    const RadialKernel kernel = make_kernel(sol, p_max, config.panel_order);
    const QuadratureRule rule = momentum_rule(p_max, extent, config.panel_order);
    std::vector<double> values(rule.nodes.size());
    double norm = 0.0;
    double p2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double p = rule.nodes[i];
      values[i] = kernel.amplitude(p);
      const double d = rule.weights[i] * values[i] * values[i] * p * p;
      norm += d;
      p2 += d * p * p;
    }
    const double norm_tail = tail_integral(tail, tail, 0, p_max);
    const double p2_tail = tail_integral(tail, tail, 2, p_max);
    norm += norm_tail;
    p2 += p2_tail;
    // The last retained term of each series bounds what was dropped.
    const auto shorter = [&](int power) {
      return tail_integral(tail, tail, power, p_max, kTailWallOrder - 1, kTailOriginOrder - 2);
    };
    const double est0 = std::abs(norm_tail - shorter(0));
    const double est2 = std::abs(p2_tail - shorter(2)) / p2;
    const double tail_error = std::max(est0, est2);
    const double deficit = std::abs(1.0 - norm);

    if ((deficit < config.norm_tol && tail_error < config.tail_tol) ||
        2.0 * p_max > config.p_max_cap) {
      if (deficit >= config.norm_tol || tail_error >= config.tail_tol) {
        throw NumericalFailure("transform: " + s.label() + " at r_c=" + std::to_string(s.r_c) +
                               " reached p_max=" + std::to_string(p_max) +
                               " with norm deficit " + std::to_string(deficit) +
                               " and tail error " + std::to_string(tail_error));
      }
      MomentumSolution out;
      out.state = s;
      out.p = rule.nodes;
      out.weights = rule.weights;
      const double scale = 1.0 / std::sqrt(norm);
      out.values.resize(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        out.values[i] = values[i] * scale;
      }
      out.p_max = p_max;
      out.norm_deficit = deficit;
      out.tail_error = tail_error;
      out.tail = tail;
      out.tail.scale(scale);
      return out;
    }
    p_max *= 2.0;
  }
}

double expectation_p(const MomentumSolution &msol, int k) {
  if (k != -2 && k != 2) {
    throw InvalidArgument("expectation_p: k must be -2 or 2");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < msol.p.size(); ++i) {
    const double p = msol.p[i];
    const double v = msol.values[i];
    sum += msol.weights[i] * v * v * std::pow(p, 2 + k);
  }
  return sum + tail_integral(msol.tail, msol.tail, k, msol.p_max);
}

double momentum_overlap(const MomentumSolution &a, const RadialSolution &b) {
  if (a.state.l != b.state.l || a.state.r_c != b.state.r_c) {
    throw InvalidArgument("momentum_overlap: states must share l and r_c");
  }
  const RadialKernel kernel = make_kernel(b, a.p_max, 10);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    const double p = a.p[i];
    sum += a.weights[i] * a.values[i] * kernel.amplitude(p) * p * p;
  }
  return sum + tail_integral(a.tail, momentum_tail(b), 0, a.p_max);
}

} // namespace cha
