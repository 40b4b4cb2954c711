#pragma once

#include <span>
#include <vector>

#include "kzldt/fcs.hpp"

namespace kzldt {

enum class RateForm { analytic_polylog, finite_n_numeric, clt_reference, classical_kl };

struct RatePoint {
  double rho_bar = 0.0;
  double i_bar = 0.0;
  bool boundary = false;  // supremum hit the edge of the sampled theta range
};

/// Sampled scaled rate function Ibar(rho_bar) = I(rho)/rho_kzm.
struct RateFunctionCurve {
  std::vector<RatePoint> samples;
  RateForm form = RateForm::finite_n_numeric;
  double rho_kzm = 1.0;
};

enum class TailSide { upper, lower };

/// Legendre-Fenchel transform I(rho) = sup_theta [theta rho - lambda(theta)]
/// on a scaled grid rho = rho_bar * curve.rho_kzm.  The grid argmax seeds a
/// bracket that is refined by golden-section maximization (through the
/// curve's evaluator when present, by parabolic interpolation otherwise).
/// Suprema attained at the edge of the sampled range are flagged instead of
/// extrapolated.  Throws std::invalid_argument for non-convex input.
RateFunctionCurve legendre_fenchel(const CgfCurve& curve,
                                   std::span<const double> rho_bar_grid);

/// Saddle point of the universal rate function: solves
///   rho_bar = -(e^t/(e^t - 1)) Li_{1/2}(1 - e^t)
/// by bracketed bisection; residual below 1e-10.  rho_bar must be positive.
double theta_star(double rho_bar);

/// Universal curve Ibar(rho_bar) = theta* rho_bar + Li_{3/2}(1 - e^theta*),
/// with Ibar(0) = zeta(3/2) by continuity.  Independent of the quench time.
RateFunctionCurve analytic_rate_function(std::span<const double> rho_bar_grid);

/// Optimized Chernoff bound: returns the log-probability bound
/// ln P(rho_N > rho) <= -N I(rho) with the supremum restricted to theta > 0
/// (upper tail) or theta < 0 (lower tail).  Requires a finite-N curve.
double chernoff_tail_bound(const CgfCurve& curve, double rho, TailSide side);

/// Equilibrium scaling inputs for the general (classical) KZM scenario.
struct KzmScalingParams {
  double nu = 1.0;         // correlation-length exponent
  double z = 1.0;          // dynamic exponent
  int dim = 1;             // spatial dimension
  double xi0 = 1.0;        // correlation-length amplitude
  double tau0 = 1.0;       // relaxation-time amplitude
  double f_factor = 1.0;   // order-one fudge factor
  double p_success = 0.5;  // defect-formation probability per merging point
  double volume = 1.0;     // V_d

  void validate() const;
};

struct DefectScaling {
  double xi_hat = 0.0;    // nonequilibrium correlation length
  double n_events = 0.0;  // number of defect-formation events
  double rho_kzm = 0.0;   // p N / V_d
};

/// xi_hat = xi0 (tau_q/tau0)^(nu/(1+z nu)), N = V/(f xi_hat^d), rho = p N / V.
DefectScaling kzm_defect_scaling(const KzmScalingParams& params, double tau_q);

/// Bernoulli Kullback-Leibler divergence D(r||p), with the continuity
/// convention 0 ln 0 = 0 and +infinity for p in {0,1} with mismatched r.
double kl_divergence_bernoulli(double r, double p);

/// Exact log binomial pmf ln C(n,k) p^k (1-p)^(n-k).
double binomial_log_pmf(long n, long k, double p);

/// Exact log tail ln P(S >= k) (upper) or ln P(S <= k) (lower).
double binomial_log_tail(long n, long k, double p, TailSide side);

struct BinomialLdp {
  double estimate_log_pmf = 0.0;  // Stirling: -0.5 ln(2 pi r(1-r)N) - N D(r||p)
  double exact_log_pmf = 0.0;
};

/// Stirling large-deviations estimate of ln P(S = round(r N)) next to the
/// exact value.
BinomialLdp binomial_ldp_estimate(long n_trials, double r, double p);

/// Classical-scenario rate function I(rho_bar) = rho_kzm D(rho_bar p || p)/p.
/// Throws std::domain_error when rho_bar p leaves [0, 1].
RateFunctionCurve classical_rate_function(const KzmScalingParams& params,
                                          double tau_q,
                                          std::span<const double> rho_bar_grid);

/// Quadratic CLT reference (rho - kappa1/N)^2 N / (2 kappa2), scaled by
/// rho_kzm_scale like the other curves.
RateFunctionCurve clt_rate_function(const ExcitationProfile& profile,
                                    std::span<const double> rho_bar_grid,
                                    double rho_kzm_scale);

}  // namespace kzldt
