#include "kzldt/fcs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kzldt/detail/quadrature.hpp"
#include "kzldt/errors.hpp"
#include "kzldt/special.hpp"

namespace kzldt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProbFloor = 1e-300;

void check_profile(const ExcitationProfile& profile) {
  if (profile.entries.empty())
    throw std::domain_error("excitation profile is empty");
  for (const auto& [k, p] : profile.entries)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("excitation probability outside [0, 1]");
}

// ln[1 + (e^theta - 1) p] with the rearrangement
// theta + ln p + ln1p(e^-theta (1-p)/p) once e^theta p dominates.
double log_mgf_term(double theta, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return theta;
  if (theta <= 30.0) return std::log1p(std::expm1(theta) * p);
  const double w = theta + std::log(p);
  if (w > 30.0)
    return w + std::log1p(std::exp(-theta) * (1.0 - p) / p);
  return std::log1p(std::exp(w) - p);
}

}  // namespace

double rho_kzm_density(double tau_q) {
  if (!(tau_q > 0.0)) throw std::domain_error("tau_q must be positive");
  return std::sqrt(1.0 / (2.0 * tau_q)) / (4.0 * kPi);
}

std::vector<double> default_theta_grid() {
  std::vector<double> thetas;
  thetas.reserve(561);
  for (int i = 0; i < 561; ++i) thetas.push_back(-10.0 + 0.025 * i);
  return thetas;
}

KinkPairDistribution kink_distribution(const ExcitationProfile& profile) {
  check_profile(profile);
  KinkPairDistribution dist;
  dist.n_sites = profile.n_sites != 0
                     ? profile.n_sites
                     : 2 * static_cast<int>(profile.entries.size());

  // Fold modes one at a time: P <- P (1-p) + shift(P) p.  Exact in the
  // sense that every coefficient is a sum of nonnegative products.
  std::vector<double>& probs = dist.probs;
  probs.assign(1, 1.0);
  for (const auto& [k, p] : profile.entries) {
    probs.push_back(0.0);
    for (std::size_t n = probs.size() - 1; n > 0; --n)
      probs[n] = probs[n] * (1.0 - p) + probs[n - 1] * p;
    probs[0] *= 1.0 - p;
  }
  for (double& value : probs) {
    if (value != 0.0 && value < kProbFloor) {
      value = 0.0;
      dist.floored = true;
    }
  }
  return dist;
}

CumulantSet cumulants(const ExcitationProfile& profile) {
  check_profile(profile);
  CumulantSet c;
  for (const auto& [k, p] : profile.entries) {
    c.kappa1 += p;
    c.kappa2 += p * (1.0 - p);
    c.kappa3 += p * (1.0 - p) * (1.0 - 2.0 * p);
  }
  return c;
}

double mean_density(const ExcitationProfile& profile) {
  check_profile(profile);
  const int n = profile.n_sites != 0
                    ? profile.n_sites
                    : 2 * static_cast<int>(profile.entries.size());
  return cumulants(profile).kappa1 / n;
}

CgfCurve cgf_finite_n(const ExcitationProfile& profile,
                      std::span<const double> thetas) {
  check_profile(profile);
  const int n = profile.n_sites != 0
                    ? profile.n_sites
                    : 2 * static_cast<int>(profile.entries.size());

  // Copy the probabilities so the evaluator owns its data.
  std::vector<double> ps;
  ps.reserve(profile.entries.size());
  for (const auto& [k, p] : profile.entries) ps.push_back(p);

  auto lambda = [ps, n](double theta) {
    double sum = 0.0;
    for (double p : ps) sum += log_mgf_term(theta, p);
    return sum / n;
  };

  CgfCurve curve;
  curve.form = CgfForm::finite_n;
  curve.rho_kzm = profile.tau_q > 0.0 ? rho_kzm_density(profile.tau_q) : 1.0;
  curve.n_sites = n;
  curve.samples.reserve(thetas.size());
  for (double theta : thetas) curve.samples.emplace_back(theta, lambda(theta));
  curve.evaluator = lambda;
  return curve;
}

CgfCurve cgf_integral(double tau_q, std::span<const double> thetas,
                      double k_max) {
  if (!(tau_q > 0.0)) throw std::domain_error("tau_q must be positive");
  if (!(k_max > 0.0)) throw std::domain_error("k_max must be positive");

  const double rate = 2.0 * kPi * tau_q;
  auto lambda = [rate, k_max](double theta) {
    auto integrand = [rate, theta](double k) {
      return log_mgf_term(theta, std::exp(-rate * k * k));
    };
    // The integrand varies on the scale 1/sqrt(rate); splitting there keeps
    // the adaptive refinement local.
    const double knee = std::min(k_max, 3.0 / std::sqrt(rate));
    const double head =
        detail::gauss_kronrod_adaptive(integrand, 0.0, knee, 0.5e-10 * 2.0 * kPi);
    const double tail =
        knee < k_max ? detail::gauss_kronrod_adaptive(integrand, knee, k_max,
                                                      0.5e-10 * 2.0 * kPi)
                     : 0.0;
    return (head + tail) / (2.0 * kPi);
  };

  CgfCurve curve;
  curve.form = CgfForm::integral;
  curve.rho_kzm = rho_kzm_density(tau_q);
  curve.samples.reserve(thetas.size());
  for (double theta : thetas) curve.samples.emplace_back(theta, lambda(theta));
  curve.evaluator = lambda;
  return curve;
}

CgfCurve cgf_polylog(double tau_q, std::span<const double> thetas) {
  const double rho = rho_kzm_density(tau_q);
  auto lambda = [rho](double theta) {
    // 1 - e^theta <= 1 always; expm1 keeps theta -> 0 exact.
    return -rho * polylog(PolylogOrder::three_halves, -std::expm1(theta));
  };

  CgfCurve curve;
  curve.form = CgfForm::polylog;
  curve.rho_kzm = rho;
  curve.samples.reserve(thetas.size());
  for (double theta : thetas) curve.samples.emplace_back(theta, lambda(theta));
  curve.evaluator = lambda;
  return curve;
}

}  // namespace kzldt
