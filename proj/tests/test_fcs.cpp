#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "kzldt/fcs.hpp"
#include "kzldt/special.hpp"

using namespace kzldt;

namespace {

constexpr double kPi = std::numbers::pi;

ExcitationProfile profile_from(const std::vector<double>& ps, double tau_q = 0.0,
                               int n_sites = 0) {
  ExcitationProfile prof;
  prof.tau_q = tau_q;
  prof.n_sites = n_sites != 0 ? n_sites : 2 * static_cast<int>(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    prof.entries.emplace_back((2.0 * i + 1.0) * kPi / prof.n_sites, ps[i]);
  return prof;
}

// Oracle: brute-force enumeration over all 2^m outcomes.
std::vector<double> enumerate_distribution(const std::vector<double>& ps) {
  const std::size_t m = ps.size();
  std::vector<double> dist(m + 1, 0.0);
  for (std::size_t mask = 0; mask < (1u << m); ++mask) {
    double w = 1.0;
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        w *= ps[i];
        ++count;
      } else {
        w *= 1.0 - ps[i];
      }
    }
    dist[count] += w;
  }
  return dist;
}

std::vector<double> random_probs(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> ps(len(rng));
  for (double& p : ps) p = uni(rng);
  return ps;
}

}  // namespace

TEST_SUITE("fcs") {

TEST_CASE("kink distribution basics") {
  const KinkPairDistribution empty = kink_distribution(profile_from({0.0, 0.0}));
  CHECK(empty.probs[0] == 1.0);
  CHECK(empty.probs[1] == 0.0);
  CHECK(empty.probs[2] == 0.0);

  const KinkPairDistribution half = kink_distribution(profile_from({0.5}));
  CHECK(half.probs[0] == doctest::Approx(0.5));
  CHECK(half.probs[1] == doctest::Approx(0.5));

  const KinkPairDistribution three =
      kink_distribution(profile_from({0.1, 0.2, 0.3}));
  CHECK(three.probs[0] == doctest::Approx(0.504).epsilon(1e-12));
  CHECK(three.probs[1] == doctest::Approx(0.398).epsilon(1e-12));
  CHECK(three.probs[2] == doctest::Approx(0.092).epsilon(1e-12));
  CHECK(three.probs[3] == doctest::Approx(0.006).epsilon(1e-12));
}

TEST_CASE("kink distribution matches brute-force enumeration") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<double> ps = random_probs(rng, 14);
    const std::vector<double> oracle = enumerate_distribution(ps);
    const KinkPairDistribution dist = kink_distribution(profile_from(ps));
    REQUIRE(dist.probs.size() == ps.size() + 1);
    for (std::size_t n = 0; n < oracle.size(); ++n)
      CHECK(std::abs(dist.probs[n] - oracle[n]) < 1e-13);
  }
}

TEST_CASE("distribution normalization and moment identities") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<double> ps = random_probs(rng, 64);
    const ExcitationProfile prof = profile_from(ps);
    const KinkPairDistribution dist = kink_distribution(prof);
    const CumulantSet c = cumulants(prof);

    double total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
      total += dist.probs[n];
      mean += n * dist.probs[n];
      second += double(n) * n * dist.probs[n];
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(std::abs(mean - c.kappa1) < 1e-9);
    CHECK(std::abs(second - mean * mean - c.kappa2) < 1e-9);
  }
}

TEST_CASE("probability floor clamps and flags") {
  // 1024 modes at p = 1/2: P(0) = 2^-1024 < 1e-300 gets floored.
  std::vector<double> ps(1024, 0.5);
  const KinkPairDistribution dist = kink_distribution(profile_from(ps));
  CHECK(dist.floored);
  CHECK(dist.probs[0] == 0.0);
}

TEST_CASE("cumulant formulas") {
  const CumulantSet sym = cumulants(profile_from({0.5}));
  CHECK(sym.kappa1 == doctest::Approx(0.5));
  CHECK(sym.kappa2 == doctest::Approx(0.25));
  CHECK(sym.kappa3 == doctest::Approx(0.0));

  const CumulantSet det = cumulants(profile_from({1.0}));
  CHECK(det.kappa1 == doctest::Approx(1.0));
  CHECK(det.kappa2 == doctest::Approx(0.0));
  CHECK(det.kappa3 == doctest::Approx(0.0));

  // kappa2 <= kappa1 always.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CumulantSet c = cumulants(profile_from(random_probs(rng, 32)));
    CHECK(c.kappa1 >= 0.0);
    CHECK(c.kappa2 >= 0.0);
    CHECK(c.kappa2 <= c.kappa1);
  }
}

TEST_CASE("cumulant ratios of a Gaussian profile reach the universal values") {
  // Closed-form oracle: for p(k) = exp(-c k^2) the ratios are exactly
  // 1 - 1/sqrt(2) and 1 - 3/sqrt(2) + 2/sqrt(3) in the continuum limit.
  const double r21 = 1.0 - 1.0 / std::sqrt(2.0);
  const double r31 = 1.0 - 3.0 / std::sqrt(2.0) + 2.0 / std::sqrt(3.0);

  const QuenchProtocol p = QuenchProtocol::linear_ramp(50.0);
  const MomentumGrid grid = MomentumGrid::for_sites(2000);
  const ExcitationProfile lz = landau_zener_profile(p, grid, 1.0);
  const CumulantSet c = cumulants(lz);
  CHECK(c.kappa2 / c.kappa1 == doctest::Approx(r21).epsilon(0.01));
  CHECK(c.kappa3 / c.kappa1 == doctest::Approx(r31).epsilon(0.03));
  CHECK(c.kappa3 / c.kappa2 == doctest::Approx(r31 / r21).epsilon(0.03));
  // The frozen decimals quoted for these ratios.
  CHECK(r21 == doctest::Approx(0.29289).epsilon(1e-4));
  CHECK(r31 == doctest::Approx(0.03338).epsilon(1e-3));
}

TEST_CASE("mean density") {
  CHECK(mean_density(profile_from({0.0, 0.0, 0.0})) == 0.0);

  // rho_KZM = (1/4pi) sqrt(1/(2 tau)): arithmetic instantiation at tau = 1/2.
  CHECK(rho_kzm_density(0.5) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));

  // Slow quench: the truncation error at k = pi is negligible and the grid
  // sum reproduces the closed-form Gaussian integral.
  {
    const QuenchProtocol p = QuenchProtocol::linear_ramp(0.5);
    const MomentumGrid grid = MomentumGrid::for_sites(2000);
    CHECK(mean_density(landau_zener_profile(p, grid, 1.0)) ==
          doctest::Approx(rho_kzm_density(0.5)).epsilon(1e-4));
  }

  // Fast quench tau = 1/(8 pi^2): the Gaussian no longer fits inside the
  // Brillouin zone; the closed-form truncated sum is (1/2) erf(sqrt(pi)/2),
  // visibly below rho_KZM = 1/2.
  {
    const double tau = 1.0 / (8.0 * kPi * kPi);
    const QuenchProtocol p = QuenchProtocol::linear_ramp(tau);
    const MomentumGrid grid = MomentumGrid::for_sites(4000);
    const double mean = mean_density(landau_zener_profile(p, grid, 1.0));
    CHECK(rho_kzm_density(tau) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mean == doctest::Approx(0.5 * std::erf(0.5 * std::sqrt(kPi)))
                      .epsilon(1e-5));
  }
}

TEST_CASE("finite-N CGF values and derivative") {
  const std::vector<double> thetas = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const ExcitationProfile single = profile_from({0.3}, 0.0, 2);
  const CgfCurve curve = cgf_finite_n(single, thetas);
  CHECK(curve.n_sites == 2);
  for (const auto& [theta, lambda] : curve.samples)
    CHECK(lambda ==
          doctest::Approx(0.5 * std::log1p(std::expm1(theta) * 0.3))
              .epsilon(1e-14));
  CHECK(curve.evaluator(0.0) == 0.0);

  // Symmetric finite difference reproduces kappa1/N.
  std::mt19937 rng(5);
  const ExcitationProfile prof = profile_from(random_probs(rng, 32));
  const CgfCurve c2 = cgf_finite_n(prof, thetas);
  const double h = 1e-5;
  const double deriv = (c2.evaluator(h) - c2.evaluator(-h)) / (2.0 * h);
  CHECK(deriv == doctest::Approx(cumulants(prof).kappa1 / prof.n_sites)
                     .epsilon(1e-7));
}

TEST_CASE("CGF is overflow-safe and linearly bounded") {
  const ExcitationProfile prof = profile_from({1e-12, 0.2, 0.999, 1.0});
  const CgfCurve curve = cgf_finite_n(prof, std::vector<double>{800.0});
  CHECK(std::isfinite(curve.samples[0].second));
  for (double theta : {0.5, 5.0, 50.0, 800.0})
    CHECK(curve.evaluator(theta) <= theta / 2.0 + 1e-12);
}

TEST_CASE("CGF curves are convex along samples") {
  const std::vector<double> thetas = default_theta_grid();
  std::mt19937 rng(13);
  const CgfCurve finite = cgf_finite_n(profile_from(random_probs(rng, 48)), thetas);
  const CgfCurve poly = cgf_polylog(20.0, thetas);
  for (const CgfCurve* curve : {&finite, &poly}) {
    for (std::size_t i = 1; i + 1 < curve->samples.size(); ++i) {
      const double second = curve->samples[i - 1].second -
                            2.0 * curve->samples[i].second +
                            curve->samples[i + 1].second;
      CHECK(second >= -1e-9);
    }
  }
}

TEST_CASE("distribution/CGF duality") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> ps = random_probs(rng, 32);
    const ExcitationProfile prof = profile_from(ps);
    const KinkPairDistribution dist = kink_distribution(prof);
    const CgfCurve curve = cgf_finite_n(prof, std::vector<double>{0.7, -1.3});
    for (const auto& [theta, lambda] : curve.samples) {
      double mgf = 0.0;
      for (std::size_t n = 0; n < dist.probs.size(); ++n)
        mgf += std::exp(theta * n) * dist.probs[n];
      CHECK(std::exp(prof.n_sites * lambda) ==
            doctest::Approx(mgf).epsilon(1e-9));
    }
  }
}

TEST_CASE("integral CGF: zero at zero, Riemann limit of finite N") {
  const std::vector<double> thetas = {-2.0, 0.0, 1.0, 2.0};
  const CgfCurve integral = cgf_integral(20.0, thetas);
  CHECK(integral.samples[1].second == doctest::Approx(0.0).epsilon(1e-12));

  const QuenchProtocol p = QuenchProtocol::linear_ramp(20.0);
  const MomentumGrid grid = MomentumGrid::for_sites(4000);
  const CgfCurve finite = cgf_finite_n(landau_zener_profile(p, grid, 1.0), thetas);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    CHECK(std::abs(finite.samples[i].second - integral.samples[i].second) <
          1e-4);
}

TEST_CASE("polylog CGF: plateau, slope, and agreement with the integral") {
  const std::vector<double> thetas = {0.0};
  const CgfCurve poly = cgf_polylog(20.0, thetas);
  CHECK(poly.samples[0].second == 0.0);

  const double rho = rho_kzm_density(20.0);
  // Slope at zero is the KZM density.
  const double h = 1e-6;
  CHECK((poly.evaluator(h) - poly.evaluator(-h)) / (2.0 * h) ==
        doctest::Approx(rho).epsilon(1e-6));

  // theta -> -inf plateau at -rho_KZM zeta(3/2).
  CHECK(poly.evaluator(-30.0) ==
        doctest::Approx(-rho * zeta_three_halves()).epsilon(1e-6));

  // Slow-quench equivalence with the convergent integral.
  for (double tau : {20.0, 50.0}) {
    const CgfCurve integral = cgf_integral(tau, std::vector<double>{});
    const CgfCurve closed = cgf_polylog(tau, std::vector<double>{});
    for (double theta = -5.0; theta <= 3.0; theta += 0.5)
      CHECK(std::abs(integral.evaluator(theta) - closed.evaluator(theta)) <
            1e-6);
  }
}

TEST_CASE("profile validation") {
  ExcitationProfile bad = profile_from({0.5});
  bad.entries[0].second = 1.5;
  CHECK_THROWS_AS(kink_distribution(bad), std::domain_error);
  ExcitationProfile empty;
  CHECK_THROWS_AS(cumulants(empty), std::domain_error);
  CHECK_THROWS_AS(rho_kzm_density(0.0), std::domain_error);
}

}  // TEST_SUITE
