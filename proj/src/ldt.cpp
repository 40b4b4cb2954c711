#include "kzldt/ldt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "kzldt/errors.hpp"
#include "kzldt/special.hpp"

namespace kzldt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_convex(const CgfCurve& curve) {
  if (curve.samples.size() < 3)
    throw std::invalid_argument("CGF curve needs at least three samples");
  double prev_slope = -kInf;
  double scale = 0.0;
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    const auto& [t0, l0] = curve.samples[i - 1];
    const auto& [t1, l1] = curve.samples[i];
    if (!(t1 > t0))
      throw std::invalid_argument("CGF samples must be strictly ascending");
    const double slope = (l1 - l0) / (t1 - t0);
    scale = std::max(scale, std::abs(slope));
    if (slope < prev_slope - 1e-8 * (1.0 + scale))
      throw std::invalid_argument("CGF curve is not convex within tolerance");
    prev_slope = std::max(prev_slope, slope);
  }
}

template <class F>
double golden_max(F&& f, double lo, double hi) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < 200 && b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b));
       ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

// Vertex value of the parabola through three points.
double parabola_peak(double x0, double y0, double x1, double y1, double x2,
                     double y2) {
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double curv = (d2 - d1) / (x2 - x0);  // half the second derivative
  if (curv >= 0.0) return std::max({y0, y1, y2});
  const double xv = 0.5 * (x0 + x1 - d1 / (2.0 * curv));
  return y0 + d1 * (xv - x0) + curv * (xv - x0) * (xv - x1);
}

struct Supremum {
  double value = 0.0;
  bool boundary = false;
};

// sup over [theta_lo, theta_hi] of theta*rho - lambda(theta); the range may
// be clamped below the full sample range for one-sided Chernoff bounds.
Supremum supremum_over(const CgfCurve& curve, double rho, double theta_lo,
                       double theta_hi) {
  const auto& s = curve.samples;
  auto phi_sample = [&](std::size_t i) {
    return s[i].first * rho - s[i].second;
  };

  std::size_t best = 0;
  double best_phi = -kInf;
  std::size_t lo_idx = s.size(), hi_idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].first < theta_lo || s[i].first > theta_hi) continue;
    lo_idx = std::min(lo_idx, i);
    hi_idx = i;
    if (phi_sample(i) > best_phi) {
      best_phi = phi_sample(i);
      best = i;
    }
  }
  if (lo_idx >= s.size())
    throw std::invalid_argument("no CGF samples inside the theta range");

  Supremum result;
  if (best == lo_idx || best == hi_idx) {
    // Clamped edges (one-sided bounds) are genuine suprema at theta -> 0;
    // edges of the sampled range mean the transform ran out of slope.
    result.boundary = (best == lo_idx && s[best].first == s.front().first) ||
                      (best == hi_idx && s[best].first == s.back().first);
    result.value = best_phi;
    if (curve.evaluator) {
      const double a = s[best == lo_idx ? best : best - 1].first;
      const double b = s[best == hi_idx ? best : best + 1].first;
      result.value = golden_max(
          [&](double t) { return t * rho - curve.evaluator(t); },
          std::max(a, theta_lo), std::min(b, theta_hi));
    }
    return result;
  }

  const double a = s[best - 1].first;
  const double b = s[best + 1].first;
  if (curve.evaluator) {
    result.value =
        golden_max([&](double t) { return t * rho - curve.evaluator(t); },
                   std::max(a, theta_lo), std::min(b, theta_hi));
  } else {
    result.value = parabola_peak(a, phi_sample(best - 1), s[best].first,
                                 best_phi, b, phi_sample(best + 1));
  }
  return result;
}

double require_positive(double value, const char* what) {
  if (!(value > 0.0))
    throw std::domain_error(std::string(what) + " must be positive");
  return value;
}

}  // namespace

RateFunctionCurve legendre_fenchel(const CgfCurve& curve,
                                   std::span<const double> rho_bar_grid) {
  check_convex(curve);
  const double scale = curve.rho_kzm > 0.0 ? curve.rho_kzm : 1.0;
  const double theta_lo = curve.samples.front().first;
  const double theta_hi = curve.samples.back().first;

  RateFunctionCurve rate;
  rate.form = curve.form == CgfForm::finite_n ? RateForm::finite_n_numeric
                                              : RateForm::analytic_polylog;
  rate.rho_kzm = scale;
  rate.samples.reserve(rho_bar_grid.size());
  for (double rho_bar : rho_bar_grid) {
    const Supremum sup =
        supremum_over(curve, rho_bar * scale, theta_lo, theta_hi);
    rate.samples.push_back({rho_bar, sup.value / scale, sup.boundary});
  }
  return rate;
}

double theta_star(double rho_bar) {
  if (!(rho_bar > 0.0))
    throw std::domain_error(
        "theta_star requires rho_bar > 0 (rate function divergent below)");

  // Scaled mean of the tilted distribution; strictly increasing in theta.
  auto tilted_mean = [](double theta) {
    if (theta == 0.0) return 1.0;
    const double em = std::expm1(theta);
    return -(std::exp(theta) / em) * polylog(PolylogOrder::half, -em);
  };

  double lo = -1.0, hi = 1.0;
  while (tilted_mean(lo) > rho_bar) {
    lo *= 2.0;
    if (lo < -700.0)
      throw unsupported_regime_error("rho_bar too small for theta_star");
  }
  while (tilted_mean(hi) < rho_bar) {
    hi *= 2.0;
    if (hi > 700.0)
      throw unsupported_regime_error("rho_bar too large for theta_star");
  }
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double residual = tilted_mean(mid) - rho_bar;
    if (std::abs(residual) < 1e-11 * std::max(1.0, rho_bar) &&
        hi - lo < 1e-12 * (1.0 + std::abs(mid)))
      break;
    (residual < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

RateFunctionCurve analytic_rate_function(std::span<const double> rho_bar_grid) {
  RateFunctionCurve rate;
  rate.form = RateForm::analytic_polylog;
  rate.rho_kzm = 1.0;  // already expressed in scaled units
  rate.samples.reserve(rho_bar_grid.size());
  for (double rho_bar : rho_bar_grid) {
    if (rho_bar < 0.0)
      throw std::domain_error("analytic rate function requires rho_bar >= 0");
    if (rho_bar == 0.0) {
      rate.samples.push_back({0.0, zeta_three_halves(), false});
      continue;
    }
    const double ts = theta_star(rho_bar);
    const double value =
        ts * rho_bar + polylog(PolylogOrder::three_halves, -std::expm1(ts));
    rate.samples.push_back({rho_bar, value, false});
  }
  return rate;
}

double chernoff_tail_bound(const CgfCurve& curve, double rho, TailSide side) {
  check_convex(curve);
  if (curve.n_sites <= 0)
    throw std::invalid_argument(
        "Chernoff bound needs a finite-N CGF curve (n_sites > 0)");
  const double theta_lo =
      side == TailSide::upper ? 0.0 : curve.samples.front().first;
  const double theta_hi =
      side == TailSide::upper ? curve.samples.back().first : 0.0;
  const Supremum sup = supremum_over(curve, rho, theta_lo, theta_hi);
  // phi(0) = 0 is always admissible, so the bound never exceeds 1.
  return -static_cast<double>(curve.n_sites) * std::max(sup.value, 0.0);
}

void KzmScalingParams::validate() const {
  require_positive(nu, "nu");
  require_positive(z, "z");
  if (dim < 1) throw std::domain_error("dimension must be at least 1");
  require_positive(xi0, "xi0");
  require_positive(tau0, "tau0");
  require_positive(f_factor, "fudge factor");
  require_positive(volume, "volume");
  if (!(p_success > 0.0 && p_success < 1.0))
    throw std::domain_error("p_success must lie in (0, 1)");
}

DefectScaling kzm_defect_scaling(const KzmScalingParams& params, double tau_q) {
  params.validate();
  require_positive(tau_q, "tau_q");
  DefectScaling out;
  const double exponent = params.nu / (1.0 + params.z * params.nu);
  out.xi_hat = params.xi0 * std::pow(tau_q / params.tau0, exponent);
  out.n_events =
      params.volume / (params.f_factor * std::pow(out.xi_hat, params.dim));
  out.rho_kzm = params.p_success * out.n_events / params.volume;
  return out;
}

double kl_divergence_bernoulli(double r, double p) {
  if (!(r >= 0.0 && r <= 1.0) || !(p >= 0.0 && p <= 1.0))
    throw std::domain_error("Bernoulli parameters must lie in [0, 1]");
  if (p == 0.0) return r == 0.0 ? 0.0 : kInf;
  if (p == 1.0) return r == 1.0 ? 0.0 : kInf;
  double div = 0.0;
  if (r > 0.0) div += r * std::log(r / p);
  if (r < 1.0) div += (1.0 - r) * std::log((1.0 - r) / (1.0 - p));
  return div;
}

double binomial_log_pmf(long n, long k, double p) {
  if (n < 0 || k < 0 || k > n) throw std::domain_error("invalid binomial index");
  if (p == 0.0) return k == 0 ? 0.0 : -kInf;
  if (p == 1.0) return k == n ? 0.0 : -kInf;
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n - k + 1.0);
  return log_choose + k * std::log(p) + (n - k) * std::log1p(-p);
}

double binomial_log_tail(long n, long k, double p, TailSide side) {
  // log-sum-exp over the pmf; n stays small enough that this is exact work.
  double max_term = -kInf;
  std::vector<double> terms;
  const long lo = side == TailSide::upper ? k : 0;
  const long hi = side == TailSide::upper ? n : k;
  terms.reserve(hi - lo + 1);
  for (long j = lo; j <= hi; ++j) {
    terms.push_back(binomial_log_pmf(n, j, p));
    max_term = std::max(max_term, terms.back());
  }
  if (max_term == -kInf) return -kInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  return max_term + std::log(sum);
}

BinomialLdp binomial_ldp_estimate(long n_trials, double r, double p) {
  if (n_trials <= 0) throw std::domain_error("n_trials must be positive");
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("binomial LDP estimate requires r in (0, 1)");
  BinomialLdp out;
  const double n = static_cast<double>(n_trials);
  out.estimate_log_pmf = -0.5 * std::log(2.0 * std::numbers::pi * r * (1.0 - r) * n) -
                         n * kl_divergence_bernoulli(r, p);
  out.exact_log_pmf =
      binomial_log_pmf(n_trials, std::lround(r * n), p);
  return out;
}

RateFunctionCurve classical_rate_function(const KzmScalingParams& params,
                                          double tau_q,
                                          std::span<const double> rho_bar_grid) {
  const DefectScaling scaling = kzm_defect_scaling(params, tau_q);
  RateFunctionCurve rate;
  rate.form = RateForm::classical_kl;
  rate.rho_kzm = scaling.rho_kzm;
  rate.samples.reserve(rho_bar_grid.size());
  for (double rho_bar : rho_bar_grid) {
    const double r = rho_bar * params.p_success;
    if (rho_bar < 0.0 || r > 1.0)
      throw std::domain_error("rho_bar p outside [0, 1]");
    rate.samples.push_back(
        {rho_bar,
         scaling.rho_kzm * kl_divergence_bernoulli(r, params.p_success) /
             params.p_success,
         false});
  }
  return rate;
}

RateFunctionCurve clt_rate_function(const ExcitationProfile& profile,
                                    std::span<const double> rho_bar_grid,
                                    double rho_kzm_scale) {
  require_positive(rho_kzm_scale, "rho_kzm scale");
  const CumulantSet c = cumulants(profile);
  const int n = profile.n_sites != 0
                    ? profile.n_sites
                    : 2 * static_cast<int>(profile.entries.size());
  if (!(c.kappa2 > 0.0))
    throw std::domain_error("CLT reference needs a nonzero variance");

  RateFunctionCurve rate;
  rate.form = RateForm::clt_reference;
  rate.rho_kzm = rho_kzm_scale;
  rate.samples.reserve(rho_bar_grid.size());
  for (double rho_bar : rho_bar_grid) {
    const double rho = rho_bar * rho_kzm_scale;
    const double dev = rho - c.kappa1 / n;
    rate.samples.push_back(
        {rho_bar, dev * dev * n / (2.0 * c.kappa2 * rho_kzm_scale), false});
  }
  return rate;
}

}  // namespace kzldt
