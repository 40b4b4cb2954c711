#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kzldt/errors.hpp"
#include "kzldt/model.hpp"

using namespace kzldt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("model") {

TEST_CASE("linear ramp field values") {
  const QuenchProtocol p = QuenchProtocol::linear_ramp(10.0);
  CHECK(field_at(p, 0.0) == doctest::Approx(1.0));
  CHECK(field_at(p, 10.0) == doctest::Approx(0.0));
  CHECK(field_at(p, -30.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(field_at(p, 10.5), std::domain_error);
  CHECK_THROWS_AS(field_at(p, -30.5), std::domain_error);
}

TEST_CASE("protocol invariants under defaults") {
  const QuenchProtocol p = QuenchProtocol::linear_ramp(7.0);
  CHECK(field_at(p, p.t_start) > p.g_c);  // starts above critical
  CHECK(field_at(p, p.t_end) == doctest::Approx(0.0));
  CHECK_THROWS_AS(QuenchProtocol::linear_ramp(0.0), std::domain_error);
  QuenchProtocol bad = p;
  bad.t_start = bad.t_end;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("momentum grid") {
  const MomentumGrid grid = MomentumGrid::for_sites(8);
  REQUIRE(grid.positive_modes.size() == 4);
  for (std::size_t i = 0; i < grid.positive_modes.size(); ++i) {
    const double k = grid.positive_modes[i];
    CHECK(k > 0.0);
    CHECK(k < kPi);
    CHECK(k == doctest::Approx((2.0 * i + 1.0) * kPi / 8.0));
    if (i > 0)
      CHECK(k - grid.positive_modes[i - 1] == doctest::Approx(2.0 * kPi / 8.0));
  }
  CHECK_THROWS_AS(MomentumGrid::for_sites(7), std::domain_error);
  CHECK_THROWS_AS(MomentumGrid::for_sites(0), std::domain_error);
}

TEST_CASE("short-range pairing is sin k") {
  const PairingSpec sr = PairingSpec::short_range();
  CHECK(pairing_function(sr, kPi / 2) == doctest::Approx(1.0));
  CHECK(sr.slope() == 1.0);
  CHECK_FALSE(sr.is_long_range());
}

TEST_CASE("long-range coupling table wraps at half the chain") {
  const LongRangeSpec spec = LongRangeSpec::make(3.0, 12);
  REQUIRE(spec.coupling_table.size() == 11);
  for (int l = 1; l <= 6; ++l)
    CHECK(spec.coupling_table[l - 1] == doctest::Approx(std::pow(l, -3.0)));
  for (int l = 7; l <= 11; ++l)
    CHECK(spec.coupling_table[l - 1] == doctest::Approx(std::pow(12 - l, -3.0)));
  CHECK_THROWS_AS(LongRangeSpec::make(1.9, 12), unsupported_regime_error);
  CHECK_THROWS_AS(PairingSpec::long_range(1.5, 100), unsupported_regime_error);
}

TEST_CASE("pairing function is odd on the grid") {
  const PairingSpec lr = PairingSpec::long_range(3.0, 1000);
  const MomentumGrid grid = MomentumGrid::for_sites(1000);
  for (std::size_t i = 0; i < grid.positive_modes.size(); i += 37) {
    const double k = grid.positive_modes[i];
    CHECK(pairing_function(lr, k) + pairing_function(lr, -k) == 0.0);
  }
}

TEST_CASE("large alpha converges to the short-range pairing") {
  for (int n : {100, 256}) {
    const PairingSpec lr = PairingSpec::long_range(50.0, n);
    const MomentumGrid grid = MomentumGrid::for_sites(n);
    for (double k : grid.positive_modes)
      CHECK(std::abs(pairing_function(lr, k) - std::sin(k)) < 1e-10);
  }
}

TEST_CASE("small-k slope of the alpha = 3 pairing") {
  const PairingSpec lr = PairingSpec::long_range(3.0, 1000);
  const double k1 = kPi / 1000;
  // The fitted slope is the pairing at the first grid momentum by
  // construction; it approaches zeta(2) with O(k1) and O(1/N) corrections.
  CHECK(lr.slope() == doctest::Approx(pairing_function(lr, k1) / k1));
  CHECK(std::abs(lr.slope() - 1.6449340668482264) < 5e-3);

  // Linearity at the third grid momentum: f(3 k1)/(3 k1) stays within 1%
  // of the fitted slope (the quadratic term of f is small there).
  const double k3 = 3.0 * kPi / 1000;
  CHECK(pairing_function(lr, k3) / (k3 * lr.slope()) ==
        doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("alpha = 2 slope is scale dependent (marginal log regime)") {
  // At alpha = 2 the continuum pairing behaves like k(1 - ln k): the slope
  // fitted at the smallest grid momentum overshoots the slope seen a few
  // modes up by more than the 1% linearity that holds for alpha >= 3.
  // Characterize the actual ratio instead of asserting linearity.
  const PairingSpec lr = PairingSpec::long_range(2.0, 1000);
  const double k1 = kPi / 1000;
  const double k3 = 3.0 * kPi / 1000;
  const double ratio = pairing_function(lr, k3) / (k3 * lr.slope());
  CHECK(ratio < 0.99);  // visibly below the linear prediction
  CHECK(ratio > 0.75);
  // The fit itself is still the grid-momentum slope.
  CHECK(lr.slope() == doctest::Approx(pairing_function(lr, k1) / k1));
}

TEST_CASE("bogoliubov angle from the defining cosine and sine") {
  const double theta1 = bogoliubov_angle(0.0, kPi / 2, 1.0);
  CHECK(std::cos(theta1) == doctest::Approx(0.0));
  CHECK(std::sin(theta1) == doctest::Approx(1.0));

  // Paramagnetic alignment: drive dominates.
  CHECK(bogoliubov_angle(2.0, 0.05, 1e-9) == doctest::Approx(0.0).epsilon(1e-6));

  const double theta3 = bogoliubov_angle(1.0, kPi / 3, std::sin(kPi / 3));
  CHECK(std::cos(theta3) == doctest::Approx(0.5));

  CHECK_THROWS_AS(bogoliubov_angle(std::cos(0.3), 0.3, 0.0),
                  degenerate_point_error);
}

TEST_CASE("spectrum values and gap bound") {
  CHECK(spectrum(0.0, kPi / 2, 1.0) == doctest::Approx(2.0));
  CHECK(spectrum(4.0, kPi / 7, std::sin(kPi / 7)) ==
        doctest::Approx(2.0 * std::sqrt(17.0 - 8.0 * std::cos(kPi / 7))));
  // Gap closes linearly at the critical point.
  CHECK(spectrum(1.0, 1e-4, std::sin(1e-4)) ==
        doctest::Approx(2.0 * 1e-4).epsilon(1e-6));
  // Near k = 0 the spectrum is bounded below by 2J|g - 1|.
  for (double g : {0.0, 0.5, 1.0, 1.5, 4.0})
    for (double k = 1e-3; k < 0.5; k += 0.021)
      CHECK(spectrum(g, k, std::sin(k)) >= 2.0 * std::abs(g - 1.0) - 1e-12);
}

TEST_CASE("mode Hamiltonian is Hermitian and traceless across the window") {
  const QuenchProtocol p = QuenchProtocol::linear_ramp(3.0);
  const MomentumGrid grid = MomentumGrid::for_sites(16);
  for (double k : grid.positive_modes) {
    for (double t = p.t_start; t <= p.t_end; t += 0.7 * p.tau_q) {
      const double g = field_at(p, t);
      const Eigen::Matrix2cd h = mode_hamiltonian(g, k, std::sin(k));
      CHECK((h - h.adjoint()).norm() == doctest::Approx(0.0));
      CHECK(std::abs(h.trace()) == doctest::Approx(0.0));
      // tr(h^2) = 2 epsilon_k^2 pins the eigenvalues at +-epsilon_k.
      const double eps = spectrum(g, k, std::sin(k));
      CHECK((h * h).trace().real() == doctest::Approx(2.0 * eps * eps));
    }
  }
}

}  // TEST_SUITE
