#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kzldt/evolve.hpp"

namespace kzldt {

/// Exact kink-pair number distribution P(n), n = 0..N/2.
struct KinkPairDistribution {
  std::vector<double> probs;
  int n_sites = 0;
  bool floored = false;  // set when values below 1e-300 were clamped to zero
};

/// First three cumulants of the kink-pair number (extensive).
struct CumulantSet {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
};

enum class CgfForm { finite_n, integral, polylog };

/// Sampled scaled cumulant generating function lambda(theta).  Closed-form
/// curves carry an evaluator so downstream transforms can refine off-grid;
/// finite-N curves record the system size for concentration bounds.
struct CgfCurve {
  std::vector<std::pair<double, double>> samples;  // (theta, lambda)
  CgfForm form = CgfForm::finite_n;
  double rho_kzm = 0.0;
  int n_sites = 0;
  std::function<double(double)> evaluator;
};

/// KZM mean kink-pair density (1/4pi) sqrt(1/(2 tau_q)), tau_q in hbar/J.
double rho_kzm_density(double tau_q);

/// Default theta grid: uniform on [-10, 4] with 561 points.  lambda
/// saturates below theta ~ -5 and grows linearly above.
std::vector<double> default_theta_grid();

/// Exact Poisson-binomial distribution by iterative polynomial folding.
KinkPairDistribution kink_distribution(const ExcitationProfile& profile);

/// kappa1 = sum p, kappa2 = sum p(1-p), kappa3 = sum p(1-p)(1-2p).
CumulantSet cumulants(const ExcitationProfile& profile);

/// kappa1 / N.
double mean_density(const ExcitationProfile& profile);

/// lambda_N(theta) = (1/N) sum_k ln[1 + (e^theta - 1) p_k], overflow-safe.
CgfCurve cgf_finite_n(const ExcitationProfile& profile,
                      std::span<const double> thetas);

/// lambda(theta) = int_0^k_max dk/(2pi) ln[1 + (e^theta - 1) e^(-2 pi tau_q k^2)]
/// by adaptive quadrature (absolute error < 1e-10).
CgfCurve cgf_integral(double tau_q, std::span<const double> thetas,
                      double k_max = 3.14159265358979323846);

/// Slow-quench closed form lambda(theta) = -rho_KZM Li_{3/2}(1 - e^theta).
CgfCurve cgf_polylog(double tau_q, std::span<const double> thetas);

}  // namespace kzldt
