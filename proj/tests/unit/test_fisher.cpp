#include "cha/error.hpp"
#include "cha/fisher.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("free-atom closed forms at hand-computed points") {
  const auto p0 = cha::free_atom_fisher({2, 1, 0});
  CHECK(p0.I_r == 1.0);
  CHECK(p0.I_p == 120.0);
  const auto p1 = cha::free_atom_fisher({2, 1, 1});
  CHECK(p1.I_r == 0.5);
  CHECK(p1.I_p == 64.0);
  const auto s1 = cha::free_atom_fisher({1, 0, 0});
  CHECK(s1.I_r == 4.0);
  CHECK(s1.I_p == 12.0);
  // 3d, m = 2: I_r = 4/9 * 1/3, I_p = 18 * (46 - 18 - 2 * 9).
  const auto d2 = cha::free_atom_fisher({3, 2, -2});
  CHECK_THAT(d2.I_r, WithinRel(4.0 / 27.0, 1e-15));
  CHECK(d2.I_p == 180.0);
  // Charge scaling.
  const auto z = cha::free_atom_fisher({2, 1, 0, 3.0});
  CHECK_THAT(z.I_r, WithinRel(9.0, 1e-15));
  CHECK_THAT(z.I_p, WithinRel(120.0 / 9.0, 1e-15));
}

TEST_CASE("Fisher assembly from expectation values") {
  cha::ExpectationSet e;
  e.r_m2 = 1.0;
  e.r_m1 = 1.5;
  e.r_p2 = 2.0;
  e.p_p2 = 5.0;
  e.p_m2 = 0.25;
  const cha::QuantumState s{3, 2, 1, 1.0, 1.0};
  CHECK(cha::fisher_r(e, s) == 20.0 - 10.0 * 1.0);
  CHECK(cha::fisher_p(e, s) == 8.0 - 10.0 * 0.25);
  const auto b = cha::fisher_bounds(e);
  CHECK(b.lower == 81.0 / 10.0);
  CHECK(b.upper == 160.0);
  e.r_m2 = 1.5;
  CHECK_THROWS_AS(cha::fisher_r(e, {3, 2, 2, 1.0, 1.0}), cha::ConsistencyFailure);
  e.p_m2 = 1.0;
  CHECK_THROWS_AS(cha::fisher_p(e, {3, 2, 2, 1.0, 1.0}), cha::ConsistencyFailure);
}

TEST_CASE("energy route to I_r rejects inconsistent input") {
  const auto ev = cha::evaluate({2, 1, 1, 1.0, 1.0});
  const auto &x = ev.report.expectations;
  CHECK_THAT(cha::fisher_r_from_energy(x, ev.report.state, ev.radial.energy),
             WithinRel(ev.report.I_r, 1e-9));
  CHECK_THROWS_AS(cha::fisher_r_from_energy(x, ev.report.state, ev.radial.energy * (1 + 1e-6)),
                  cha::ConsistencyFailure);
}

TEST_CASE("report of an m = 0 state saturates the upper bound") {
  for (double rc : {0.3, 2.5, 10.0}) {
    const auto r = cha::evaluate({3, 2, 0, 1.0, rc}).report;
    CHECK(r.I_t == r.upper_bound);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
  }
}

TEST_CASE("Fisher information agrees with the series solution") {
  struct Case {
    int n, l, m;
    double r_c;
  };
  for (const auto &[n, l, m, rc] : {Case{2, 1, 0, 0.1}, Case{2, 1, 1, 1.0}, Case{2, 1, 1, 10.0},
                                    Case{3, 2, 2, 0.5}, Case{3, 2, 1, 5.0}, Case{10, 5, 1, 1.0},
                                    Case{10, 1, 1, 10.0}}) {
    const auto ev = cha::evaluate({n, l, m, 1.0, rc});
    const auto ref = oracle::series_fisher(n, l, m, 1.0, rc, ev.radial.energy);
    INFO(ev.report.state.label() << " m=" << m << " r_c=" << rc);
    CHECK_THAT(ev.report.I_r, WithinRel(ref.I_r, 1e-9));
    CHECK_THAT(ev.report.I_p, WithinRel(ref.I_p, 1e-9));
    CHECK_THAT(ev.report.expectations.p_m2, WithinRel(ref.p_m2, 1e-9));
    CHECK_THAT(ev.report.expectations.r_m1, WithinRel(ref.r_m1, 1e-10));
  }
}

TEST_CASE("angular Fisher term") {
  for (int l = 0; l <= 9; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double exact = 4.0 * l * (l + 1) - 2.0 * (2 * l + 1) * std::abs(m);
      // The excluded neighbourhoods of the zeros of Theta each drop a sliver
      // of order 1e-8 * Theta'^2, which sets the attainable accuracy.
      CHECK_THAT(cha::angular_fisher(l, m), WithinAbs(exact, 1e-6 * (1.0 + std::abs(exact))));
    }
  }
}

TEST_CASE("gradient of the density reproduces I_r for nodeless states") {
  for (int l : {1, 2, 4}) {
    for (double rc : {0.1, 1.0, 10.0}) {
      for (int m = 0; m <= l; ++m) {
        const auto ev = cha::evaluate({l + 1, l, m, 1.0, rc});
        CHECK_THAT(cha::direct_fisher_oracle(ev.radial, ev.report.state), WithinRel(ev.report.I_r, 1e-6));
      }
    }
  }
}

TEST_CASE("charge scaling of a report") {
  const auto base = cha::evaluate({2, 1, 1, 1.0, 3.0}).report;
  const auto scaled = cha::z_scale(base, 3.0);
  CHECK(scaled.state.Z == 3.0);
  CHECK_THAT(scaled.state.r_c, WithinRel(1.0, 1e-15));
  CHECK_THAT(scaled.energy, WithinRel(9.0 * base.energy, 1e-15));
  CHECK_THAT(scaled.I_r, WithinRel(9.0 * base.I_r, 1e-15));
  CHECK_THAT(scaled.I_p, WithinRel(base.I_p / 9.0, 1e-15));
  CHECK_THAT(scaled.I_t, WithinRel(base.I_t, 1e-12));
  CHECK_THAT(scaled.lower_bound, WithinRel(base.lower_bound, 1e-12));
  CHECK_THAT(scaled.upper_bound, WithinRel(base.upper_bound, 1e-12));

  const auto direct = cha::evaluate({2, 1, 1, 3.0, 1.0}).report;
  CHECK_THAT(direct.I_r, WithinRel(scaled.I_r, 1e-9));
  CHECK_THAT(direct.I_p, WithinRel(scaled.I_p, 1e-9));

  CHECK_THROWS_AS(cha::z_scale(base, 0.0), cha::InvalidArgument);
  CHECK_THROWS_AS(cha::z_scale(scaled, 2.0), cha::InvalidArgument);
}

TEST_CASE("large cavity approaches the free atom") {
  for (int m = 0; m <= 1; ++m) {
    const auto r = cha::evaluate({2, 1, m, 1.0, 80.0}).report;
    const auto f = cha::free_atom_fisher({2, 1, m});
    CHECK_THAT(r.I_r, WithinRel(f.I_r, 1e-9));
    CHECK_THAT(r.I_p, WithinRel(f.I_p, 1e-9));
  }
}

namespace {

cha::FisherReport report(int n, int l, int m, double rc) { return cha::evaluate({n, l, m, 1.0, rc}).report; }

} // namespace

TEST_CASE("reference position Fisher values") {
  CHECK_THAT(report(2, 1, 0, 0.1).I_r, WithinRel(8076.456640, 1e-6));
  CHECK_THAT(report(3, 2, 2, 10.0).I_r, WithinRel(0.6590879, 1e-6));
  CHECK_THAT(report(10, 1, 1, 0.1).I_r, WithinRel(337317.31464, 1e-6));
}

TEST_CASE("reference momentum Fisher values") {
  CHECK_THAT(report(2, 1, 0, 10.0).I_p, WithinRel(87.12258908648, 1e-6));
  CHECK_THAT(report(3, 2, 1, 1.0).I_p, WithinRel(1.312436, 1e-5));
  CHECK_THAT(report(10, 9, 1, 5.0).I_p, WithinRel(58.33161, 1e-5));
  CHECK_THAT(report(3, 2, 2, 2.5).I_p, WithinRel(5.40526, 1e-5));
  // Printed to four significant digits.
  CHECK_THAT(report(2, 1, 1, 0.5).I_p, WithinAbs(0.2462, 5e-5));
}

TEST_CASE("reference bounds") {
  CHECK_THAT(report(2, 1, 0, 0.1).lower_bound, WithinRel(10.739845, 1e-5));
  const auto r = report(2, 1, 0, 5.0);
  CHECK_THAT(r.upper_bound, WithinRel(107.9994264835, 1e-9));
  CHECK_THAT(r.I_t, WithinRel(107.9994264835, 1e-9));
  CHECK_THAT(report(3, 2, 0, 10.0).lower_bound, WithinRel(6.1991776, 1e-5));
}

TEST_CASE("charge scaling special cases") {
  const auto base = report(3, 2, 1, 2.5);
  const auto same = cha::z_scale(base, 1.0);
  CHECK(same.I_r == base.I_r);
  CHECK(same.I_p == base.I_p);
  CHECK(same.state.r_c == base.state.r_c);

  const auto f1 = cha::free_atom_fisher({2, 1, 0, 1.0});
  const auto f2 = cha::free_atom_fisher({2, 1, 0, 2.0});
  CHECK_THAT(f2.I_r, WithinRel(4.0 * f1.I_r, 1e-15));
  CHECK_THAT(f2.I_p, WithinRel(30.0, 1e-15));
  CHECK_THAT(f2.I_r * f2.I_p, WithinRel(120.0, 1e-15));
}

TEST_CASE("gradient oracle at reference points") {
  const auto a = cha::evaluate({1, 0, 0, 1.0, 50.0});
  CHECK_THAT(cha::direct_fisher_oracle(a.radial, a.report.state), WithinRel(4.0, 1e-5));
  const auto b = cha::evaluate({2, 1, 0, 1.0, 1.0});
  CHECK_THAT(cha::direct_fisher_oracle(b.radial, b.report.state), WithinRel(80.94182631, 1e-4));
  const auto c = cha::evaluate({3, 2, 1, 1.0, 2.5});
  CHECK_THAT(cha::direct_fisher_oracle(c.radial, c.report.state), WithinRel(16.469367, 1e-4));
}

TEST_CASE("m ordering and confinement monotonicity for 2p and 3d") {
  for (int l : {1, 2}) {
    double prev_ir = 1e300;
    for (double rc : {0.1, 0.3, 0.5, 1.0, 2.5, 5.0, 10.0}) {
      double prev_m = 1e300;
      for (int m = 0; m <= l; ++m) {
        const auto r = report(l + 1, l, m, rc);
        INFO("l=" << l << " m=" << m << " r_c=" << rc);
        CHECK(r.I_r < prev_m);
        prev_m = r.I_r;
        if (m == 0) {
          CHECK(r.I_r < prev_ir);
          prev_ir = r.I_r;
        }
      }
    }
  }
}
