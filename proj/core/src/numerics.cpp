#include "cha/numerics.hpp"

#include "cha/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cha {

namespace {

// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre_pair(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    return {1.0, 0.0};
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr int kMaxBesselOrder = 30;

} // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 2) {
    throw InvalidArgument("gauss_legendre: need n >= 2, got " + std::to_string(n));
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, pm1] = legendre_pair(n, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const auto [p, pm1] = legendre_pair(n, x);
    dp = n * (x * p - pm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureRule gauss_lobatto(int n) {
  if (n < 3) {
    throw InvalidArgument("gauss_lobatto: need n >= 3, got " + std::to_string(n));
  }
  const int deg = n - 1;
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Interior nodes are the roots of P'_deg; the Newton step below drives
  // x P_deg - P_{deg-1} (proportional to (1-x^2) P'_deg) to zero.
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * i / deg);
    if (i > 0 && i < deg) {
      for (int iter = 0; iter < 100; ++iter) {
        const auto [p, pm1] = legendre_pair(deg, x);
        const double dx = (x * p - pm1) / (n * p);
        x -= dx;
        if (std::abs(dx) < 1e-16) {
          break;
        }
      }
    }
    const double p = legendre_pair(deg, x).first;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / (deg * n * p * p);
  }
  // Enforce exact symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int order) {
  if (breaks.size() < 2) {
    throw InvalidArgument("composite_gauss_legendre: need at least one panel");
  }
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve((breaks.size() - 1) * order);
  rule.weights.reserve((breaks.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p + 1] + breaks[p]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + half * base.nodes[i]);
      rule.weights.push_back(half * base.weights[i]);
    }
  }
  return rule;
}

CollocationGrid make_collocation_grid(int n_points, double r_max) {
  if (!(r_max > 0.0)) {
    throw InvalidArgument("make_collocation_grid: r_max must be positive");
  }
  const QuadratureRule lob = gauss_lobatto(n_points);
  const int n = n_points;
  const int deg = n - 1;
  const double scale = 0.5 * r_max;

  CollocationGrid grid;
  grid.r_max = r_max;
  grid.r.resize(n);
  grid.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    grid.r(i) = scale * (lob.nodes[i] + 1.0);
    grid.weights(i) = scale * lob.weights[i];
  }
  grid.r(0) = 0.0;
  grid.r(n - 1) = r_max;

  Eigen::VectorXd pn(n);
  for (int i = 0; i < n; ++i) {
    pn(i) = legendre_pair(deg, lob.nodes[i]).first;
  }
  grid.diff.resize(n, n);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      const double d = pn(i) / (pn(j) * (lob.nodes[i] - lob.nodes[j]));
      grid.diff(i, j) = d;
      row_sum += d;
    }
    grid.diff(i, i) = -row_sum;
  }
  grid.diff /= scale;

  // Barycentric weights 1/prod(x_j - x_k), accumulated in logs because the
  // raw products under/overflow for a few hundred nodes.
  Eigen::VectorXd log_mag(n);
  Eigen::VectorXd sign(n);
  for (int j = 0; j < n; ++j) {
    double lm = 0.0;
    double s = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) {
        continue;
      }
      const double d = lob.nodes[j] - lob.nodes[k];
      lm -= std::log(std::abs(d));
      if (d < 0) {
        s = -s;
      }
    }
    log_mag(j) = lm;
    sign(j) = s;
  }
  const double ref = log_mag.maxCoeff();
  grid.bary.resize(n);
  for (int j = 0; j < n; ++j) {
    grid.bary(j) = sign(j) * std::exp(log_mag(j) - ref);
  }
  return grid;
}

double CollocationGrid::interpolate(const Eigen::VectorXd &values, double x) const {
  double num = 0.0;
  double den = 0.0;
  for (int j = 0; j < r.size(); ++j) {
    const double d = x - r(j);
    if (d == 0.0) {
      return values(j);
    }
    const double t = bary(j) / d;
    num += t * values(j);
    den += t;
  }
  return num / den;
}

double kummer_1f1(double a, double b, double x) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw InvalidArgument("kummer_1f1: b must not be a non-positive integer");
  }
  if (x < 0.0) {
    throw InvalidArgument("kummer_1f1: only x >= 0 is supported");
  }
  if (x == 0.0) {
    return 1.0;
  }
  const bool terminating = a <= 0.0 && a == std::floor(a);
  constexpr int kMaxTerms = 100000;
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  int small_run = 0;
  for (int k = 0; k < kMaxTerms; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1));
    if (term == 0.0) {
      return sum.value();
    }
    sum.add(term);
    if (terminating) {
      continue;
    }
    const double s = sum.value();
    if (std::abs(term) < 1e-17 * std::abs(s)) {
      if (++small_run == 3) {
        return s;
      }
    } else {
      small_run = 0;
    }
  }
  throw NumericalFailure("kummer_1f1: series did not converge for a=" + std::to_string(a) +
                         " b=" + std::to_string(b) + " x=" + std::to_string(x) +
                         " after 1e5 terms; partial sum " + std::to_string(sum.value()));
}

void spherical_bessel_j_array(double x, std::span<double> out) {
  if (out.empty()) {
    return;
  }
  const int lmax = static_cast<int>(out.size()) - 1;
  if (lmax > kMaxBesselOrder) {
    throw InvalidArgument("spherical_bessel_j: order above 30");
  }
  if (!(x >= 0.0)) {
    throw InvalidArgument("spherical_bessel_j: x must be non-negative");
  }
  if (x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double j0 = s / x;
  if (lmax == 0) {
    out[0] = j0;
    return;
  }
  if (x > lmax) {
    // Upward recurrence is stable once x exceeds the order.
    out[0] = j0;
    out[1] = (j0 - c) / x;
    for (int k = 1; k < lmax; ++k) {
      out[k + 1] = (2 * k + 1) / x * out[k] - out[k - 1];
    }
    return;
  }
  // Miller: run the recurrence downward from well above lmax, then fix the
  // scale against the closed form of j0 (or j1 near a zero of j0).
  const int start = lmax + 20 + static_cast<int>(std::sqrt(40.0 * lmax));
  double f_next = 0.0;
  double f = 1e-30;
  double f0 = 0.0;
  double f1 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double f_prev = (2 * k + 1) / x * f - f_next;
    f_next = f;
    f = f_prev;
    // f now holds the unnormalized j_{k-1}; f_next holds j_k.
    if (k - 1 <= lmax) {
      out[k - 1] = f;
    }
    if (k <= lmax) {
      out[k] = f_next;
    }
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      for (int i = k - 1; i <= lmax; ++i) {
        out[i] *= 1e-250;
      }
    }
  }
  f0 = out[0];
  f1 = out[1];
  const double j1 = (j0 - c) / x;
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / f0 : j1 / f1;
  for (double &v : out) {
    v *= scale;
  }
}

double spherical_bessel_j(int l, double x) {
  if (l < 0 || l > kMaxBesselOrder) {
    throw InvalidArgument("spherical_bessel_j: order must be in [0, 30]");
  }
  double buf[kMaxBesselOrder + 1];
  spherical_bessel_j_array(x, std::span<double>(buf, l + 1));
  return buf[l];
}

namespace {

void check_lm(int l, int m) {
  if (l < 0 || std::abs(m) > l) {
    throw InvalidArgument("polar factor: need |m| <= l, got l=" + std::to_string(l) +
                          " m=" + std::to_string(m));
  }
}

// Unnormalized P_l^m(x) and P_{l-1}^m(x), m >= 0, no Condon-Shortley phase.
std::pair<double, double> assoc_legendre_pair(int l, int m, double x) {
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) {
    pmm *= (2 * k - 1) * sin_t;
  }
  if (l == m) {
    return {pmm, 0.0};
  }
  double prev = pmm;
  double cur = x * (2 * m + 1) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double next = ((2 * k - 1) * x * cur - (k + m - 1) * prev) / (k - m);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

double polar_norm(int l, int m) {
  return std::exp(0.5 * (std::log(0.5 * (2 * l + 1)) + std::lgamma(l - m + 1.0) -
                         std::lgamma(l + m + 1.0)));
}

} // namespace

double polar_amplitude(int l, int m, double theta) {
  check_lm(l, m);
  const int am = std::abs(m);
  return polar_norm(l, am) * assoc_legendre_pair(l, am, std::cos(theta)).first;
}

double polar_amplitude_derivative(int l, int m, double theta) {
  check_lm(l, m);
  const int am = std::abs(m);
  constexpr double kPoleGuard = 1e-12;
  theta = std::clamp(theta, kPoleGuard, std::numbers::pi - kPoleGuard);
  const double x = std::cos(theta);
  const auto [p, pm1] = assoc_legendre_pair(l, am, x);
  // dP/dtheta = (l x P_l^m - (l+m) P_{l-1}^m) / sin(theta)
  const double dp = (l * x * p - (l + am) * pm1) / std::sin(theta);
  return polar_norm(l, am) * dp;
}

double assoc_legendre_density(int l, int m, double theta) {
  const double t = polar_amplitude(l, m, theta);
  return t * t;
}

SymEigResult sym_eig(const Eigen::MatrixXd &h) {
  if (h.rows() != h.cols()) {
    throw InvalidArgument("sym_eig: matrix is not square");
  }
  const double scale = h.cwiseAbs().maxCoeff();
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1e-300)) {
    throw InvalidArgument("sym_eig: matrix is not symmetric (relative asymmetry " +
                          std::to_string(asym / scale) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("sym_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace cha
