#include "cha/error.hpp"
#include "cha/radial.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("state validation and labels") {
  CHECK_NOTHROW(cha::QuantumState{3, 2, -2, 1.0, 1.0}.validate());
  CHECK_THROWS_AS((cha::QuantumState{2, 2, 0, 1.0, 1.0}.validate()), cha::InvalidArgument);
  CHECK_THROWS_AS((cha::QuantumState{2, 1, 2, 1.0, 1.0}.validate()), cha::InvalidArgument);
  CHECK_THROWS_AS((cha::QuantumState{2, 1, 0, 0.0, 1.0}.validate()), cha::InvalidArgument);
  CHECK_THROWS_AS((cha::QuantumState{2, 1, 0, 1.0, -1.0}.validate()), cha::InvalidArgument);
  CHECK(cha::QuantumState{2, 1}.label() == "2p");
  CHECK(cha::QuantumState{10, 7}.label() == "10k");
  CHECK(cha::QuantumState{10, 9}.label() == "10m");
  CHECK(cha::orbital_letter(6) == 'i');
}

TEST_CASE("solver config parsing") {
  std::istringstream ok("# tighter\ngrid_size = 64\n\n  energy_rtol=1e-12  \n");
  const auto cfg = cha::parse_solver_config(ok);
  CHECK(cfg.grid_size == 64);
  CHECK(cfg.energy_rtol == 1e-12);
  CHECK(cfg.grid_max == cha::SolverConfig{}.grid_max);

  std::istringstream unknown("grid_sise = 64\n");
  CHECK_THROWS_AS(cha::parse_solver_config(unknown), cha::InvalidArgument);
  std::istringstream malformed("grid_size = 6x4\n");
  CHECK_THROWS_AS(cha::parse_solver_config(malformed), cha::InvalidArgument);
  std::istringstream no_equals("grid_size 64\n");
  CHECK_THROWS_AS(cha::parse_solver_config(no_equals), cha::InvalidArgument);
  std::istringstream too_small("grid_size = 8\n");
  CHECK_THROWS_AS(cha::parse_solver_config(too_small), cha::InvalidArgument);
  CHECK_THROWS_AS(cha::load_solver_config("/nonexistent/cha.cfg"), cha::InvalidArgument);
}

TEST_CASE("free particle in a sphere: eigenvalues are Bessel zeros") {
  const double R = 1.7;
  for (int l = 0; l <= 4; ++l) {
    const auto h = cha::build_hamiltonian(l, 0.0, R, 96);
    const auto eig = cha::sym_eig(h.matrix);
    for (int k = 1; k <= 4; ++k) {
      const double x = oracle::bessel_zero(l, k);
      INFO("l=" << l << " k=" << k);
      CHECK_THAT(eig.values(k - 1), WithinRel(x * x / (2.0 * R * R), 1e-11));
    }
  }
}

TEST_CASE("energies and moments agree with the power-series solution") {
  struct Case {
    int n, l;
    double r_c;
  };
  for (const auto &[n, l, rc] : {Case{1, 0, 1.0}, Case{2, 0, 2.0}, Case{2, 1, 0.5}, Case{2, 1, 5.0},
                                 Case{3, 2, 1.0}, Case{3, 1, 8.0}, Case{10, 5, 1.0}}) {
    const cha::QuantumState s{n, l, 0, 1.0, rc};
    const auto sol = cha::solve_state(s);
    const auto e = oracle::series_energy(n, l, 1.0, rc, sol.energy);
    const oracle::RadialSeries u(l, 1.0, e, rc);
    INFO(s.label() << " r_c=" << rc);
    // Absolute scale of the free level, as E itself may be close to zero.
    CHECK_THAT(sol.energy,
               WithinAbs(static_cast<double>(e), 1e-11 * std::max(std::abs(sol.energy), 0.5 / (n * n))));
    CHECK_THAT(cha::expectation_r(sol, -2), WithinRel(u.expect_r(-2), 1e-10));
    CHECK_THAT(cha::expectation_r(sol, -1), WithinRel(u.expect_r(-1), 1e-10));
    CHECK_THAT(cha::expectation_r(sol, 1), WithinRel(u.expect_r(1), 1e-10));
    CHECK_THAT(cha::expectation_r(sol, 2), WithinRel(u.expect_r(2), 1e-10));
    CHECK(cha::count_nodes(sol) == n - l - 1);
    CHECK(sol.norm_residual < 1e-12);
    // Same function, up to sign and normalization.
    const double scale = sol.u_at(0.37 * rc) / u.value(0.37 * rc);
    for (double f : {0.1, 0.5, 0.9}) {
      CHECK_THAT(sol.u_at(f * rc), WithinAbs(scale * u.value(f * rc), 1e-9));
    }
  }
}

TEST_CASE("ground state in a unit sphere") {
  const auto sol = cha::solve_state({1, 0, 0, 1.0, 1.0});
  CHECK_THAT(sol.energy, WithinAbs(2.373990866, 1e-9));
}

TEST_CASE("large cavity recovers the free-atom spectrum") {
  for (int n = 1; n <= 3; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto sol = cha::solve_state({n, l, 0, 1.0, 40.0 * n});
      CHECK_THAT(sol.energy, WithinAbs(-0.5 / (n * n), 1e-11));
    }
  }
}

TEST_CASE("closed-form wall condition reproduces bound energies") {
  for (const auto &s : {cha::QuantumState{2, 1, 0, 1.0, 6.0}, cha::QuantumState{2, 1, 0, 1.0, 10.0},
                        cha::QuantumState{3, 2, 0, 1.0, 10.0}, cha::QuantumState{3, 0, 0, 2.0, 9.0}}) {
    const double e = cha::solve_state(s).energy;
    REQUIRE(e < 0.0);
    CHECK_THAT(cha::analytic_energy_root_near(s, e), WithinAbs(e, 1e-10));
    CHECK(std::abs(cha::analytic_wavefunction(s, e, s.r_c)) <
          1e-9 * std::abs(cha::analytic_wavefunction(s, e, 0.5 * s.r_c)));
  }
  CHECK_THROWS_AS(cha::analytic_wavefunction({2, 1, 0, 1.0, 1.0}, 0.5, 0.3), cha::InvalidArgument);
  CHECK_THROWS_AS(cha::analytic_energy_root({2, 1, 0, 1.0, 5.0}, -0.2, -0.19), cha::BracketFailure);
}

TEST_CASE("solver rejects bad input and reports non-convergence") {
  CHECK_THROWS_AS(cha::solve_state({2, 1, 0, 1.0}), cha::InvalidArgument);
  CHECK_THROWS_AS(cha::solve_state({1, 1, 0, 1.0, 1.0}), cha::InvalidArgument);
  cha::SolverConfig cfg;
  cfg.grid_size = 16;
  cfg.grid_max = 32;
  CHECK_THROWS_AS(cha::solve_state({10, 1, 0, 1.0, 10.0}, cfg), cha::NumericalFailure);
  CHECK_THROWS_AS(cha::expectation_r(cha::solve_state({1, 0, 0, 1.0, 1.0}), 3), cha::InvalidArgument);
}

TEST_CASE("single solve at a fixed grid") {
  cha::SolverConfig cfg;
  cfg.converge = false;
  cfg.grid_size = 48;
  const auto sol = cha::solve_state({2, 1, 0, 1.0, 2.5}, cfg);
  CHECK(sol.grid_size() == 48);
  CHECK(sol.energy_change == 0.0);
}

TEST_CASE("free well limits of the Hamiltonian") {
  const auto s = cha::sym_eig(cha::build_hamiltonian(0, 0.0, std::numbers::pi, 64).matrix);
  CHECK_THAT(s.values(0), WithinRel(0.5, 1e-12));
  const auto p = cha::sym_eig(cha::build_hamiltonian(1, 0.0, 1.0, 64).matrix);
  const double x = oracle::bessel_zero(1, 1);
  CHECK_THAT(x, WithinAbs(4.493409457909064, 1e-12));
  CHECK_THAT(p.values(0), WithinRel(0.5 * x * x, 1e-12));
  CHECK_THROWS_AS(cha::build_hamiltonian(0, 1.0, 1.0, 12), cha::InvalidArgument);
  CHECK_THROWS_AS(cha::build_hamiltonian(0, 1.0, 0.0, 64), cha::InvalidArgument);
}

TEST_CASE("reference 2p and 3d moments") {
  const auto a = cha::solve_state({2, 1, 0, 1.0, 1.0});
  CHECK_THAT(4.0 * 2.0 * (a.energy + cha::expectation_r(a, -1)), WithinRel(80.94182631, 1e-7));
  CHECK_THAT(cha::expectation_r(a, 2), WithinRel(1.4538574615 / 4.0, 1e-8));
  const auto b = cha::solve_state({2, 1, 0, 1.0, 2.5});
  CHECK_THAT(4.0 * cha::expectation_r(b, 2), WithinRel(8.6256520961, 1e-8));
  const auto c = cha::solve_state({2, 1, 0, 1.0, 0.5});
  CHECK_THAT(2.0 * (c.energy + cha::expectation_r(c, -1)), WithinRel(323.2227616 / 4.0, 1e-7));
  const auto d = cha::solve_state({3, 2, 0, 1.0, 0.1});
  CHECK_THAT(4.0 * 2.0 * (d.energy + cha::expectation_r(d, -1)), WithinRel(13287.04524, 1e-7));
}

TEST_CASE("closed form at the free-atom energies") {
  // a = 0: pure exponential.
  const cha::QuantumState s1{1, 0, 0, 1.0, 50.0};
  const double f0 = cha::analytic_wavefunction(s1, -0.5, 0.0);
  for (double r : {0.5, 2.0, 7.0}) {
    CHECK_THAT(cha::analytic_wavefunction(s1, -0.5, r), WithinRel(f0 * std::exp(-r), 1e-14));
  }
  // a = -1: terminating series with a node at r = 2.
  const cha::QuantumState s2{2, 0, 0, 1.0, 50.0};
  for (double r : {0.5, 2.0, 7.0}) {
    CHECK_THAT(cha::analytic_wavefunction(s2, -0.125, r),
               WithinAbs((1.0 - r / 2.0) * std::exp(-r / 2.0), 1e-15));
  }
}

TEST_CASE("closed form matches the collocation function for 2p at r_c = 10") {
  const cha::QuantumState s{2, 1, 0, 1.0, 10.0};
  const auto sol = cha::solve_state(s);
  REQUIRE(sol.energy < 0.0);
  // Least-squares scale between R(r) = u/r and the closed form on the grid.
  double num = 0.0;
  double den = 0.0;
  std::vector<double> a(sol.grid_size());
  std::vector<double> b(sol.grid_size());
  for (int i = 1; i < sol.grid_size(); ++i) {
    const double r = sol.r()(i);
    a[i] = cha::analytic_wavefunction(s, sol.energy, r);
    b[i] = sol.u(i) / r;
    num += a[i] * b[i];
    den += b[i] * b[i];
  }
  const double c = num / den;
  double worst = 0.0;
  double peak = 0.0;
  for (int i = 1; i < sol.grid_size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - c * b[i]));
    peak = std::max(peak, std::abs(a[i]));
  }
  // The closed form is unnormalized; compare on the scale of its peak.
  CHECK(worst < 1e-8 * peak);
}

TEST_CASE("wall condition roots") {
  for (const auto &s : {cha::QuantumState{2, 1, 0, 1.0, 10.0}, cha::QuantumState{3, 2, 0, 1.0, 10.0}}) {
    const double e = cha::solve_state(s).energy;
    CHECK_THAT(cha::analytic_energy_root_near(s, e), WithinAbs(e, 1e-9));
  }
  const double e1 = cha::analytic_energy_root({1, 0, 0, 1.0, 50.0}, -0.6, -0.4);
  CHECK_THAT(e1, WithinAbs(-0.5, 1e-9));
}

TEST_CASE("free 1s moments and node counts") {
  const auto s = cha::solve_state({1, 0, 0, 1.0, 50.0});
  CHECK_THAT(cha::expectation_r(s, -1), WithinAbs(1.0, 1e-8));
  for (double rc : {1.0, 10.0, 50.0}) {
    CHECK(cha::count_nodes(cha::solve_state({2, 1, 0, 1.0, rc})) == 0);
    CHECK(cha::count_nodes(cha::solve_state({10, 7, 0, 1.0, rc})) == 2);
    CHECK(cha::count_nodes(cha::solve_state({10, 0, 0, 1.0, rc})) == 9);
  }
}

TEST_CASE("energy ordering in n and monotonic decrease with r_c") {
  for (double rc : {0.3, 2.5, 10.0}) {
    for (int l = 0; l <= 3; ++l) {
      double prev = -1e300;
      for (int n = l + 1; n <= l + 4; ++n) {
        const double e = cha::solve_state({n, l, 0, 1.0, rc}).energy;
        CHECK(e > prev);
        prev = e;
      }
    }
  }
  double prev = 1e300;
  for (double rc : {0.1, 0.3, 0.5, 1.0, 2.5, 5.0, 10.0}) {
    const double e = cha::solve_state({2, 1, 0, 1.0, rc}).energy;
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("charge scaling of energies and moments") {
  for (const auto &[n, l] : {std::pair{1, 0}, std::pair{2, 1}, std::pair{3, 2}, std::pair{4, 1}}) {
    for (double z : {2.0, 3.0, 5.5}) {
      for (double rc : {0.5, 1.0, 5.0}) {
        const auto a = cha::solve_state({n, l, 0, z, rc});
        const auto b = cha::solve_state({n, l, 0, 1.0, z * rc});
        INFO("n=" << n << " l=" << l << " Z=" << z << " r_c=" << rc);
        const double scale = std::max(std::abs(a.energy), 0.5 * z * z / (n * n));
        CHECK_THAT(a.energy, WithinAbs(z * z * b.energy, 1e-9 * scale));
        CHECK_THAT(cha::expectation_r(a, 2), WithinRel(cha::expectation_r(b, 2) / (z * z), 1e-10));
        CHECK_THAT(cha::expectation_r(a, -2), WithinRel(cha::expectation_r(b, -2) * z * z, 1e-10));
      }
    }
  }
}
