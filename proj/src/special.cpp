#include "kzldt/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "kzldt/detail/quadrature.hpp"
#include "kzldt/errors.hpp"

namespace kzldt {
namespace detail {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;  // Gamma(1/2), exact constant

double order_value(PolylogOrder s) {
  return s == PolylogOrder::half ? 0.5 : 1.5;
}

// Euler-Maclaurin tail for zeta, truncation point M.
double zeta_euler_maclaurin(double s, int m) {
  double sum = 0.0;
  for (int n = 1; n < m; ++n) sum += std::pow(n, -s);
  const double mi = static_cast<double>(m);
  sum += std::pow(mi, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(mi, -s);

  // B_{2j}/(2j)! prefactors for j = 1..6.
  static constexpr double b_over_fact[6] = {
      1.0 / 12.0,                   // B2/2!
      -1.0 / 720.0,                 // B4/4!
      1.0 / 30240.0,                // B6/6!
      -1.0 / 1209600.0,             // B8/8!
      1.0 / 47900160.0,             // B10/10!
      -691.0 / 1307674368000.0};    // B12/12!
  double rising = s;                // s(s+1)...(s+2j-2)
  double mpow = std::pow(mi, -s - 1.0);
  for (int j = 0; j < 6; ++j) {
    sum += b_over_fact[j] * rising * mpow;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    mpow /= mi * mi;
  }
  return sum;
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) return std::numeric_limits<double>::infinity();
  if (s > 30.0) {
    // Direct series is already at machine precision.
    double sum = 1.0;
    for (int n = 2; n < 10; ++n) sum += std::pow(n, -s);
    return sum;
  }
  if (s > 0.0) return zeta_euler_maclaurin(s, 50);
  // Functional equation: zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s).
  const double refl = riemann_zeta(1.0 - s);
  return std::pow(2.0, s) * std::pow(std::numbers::pi, s - 1.0) *
         std::sin(0.5 * std::numbers::pi * s) * std::tgamma(1.0 - s) * refl;
}

double polylog_series(double s, double x) {
  if (std::abs(x) >= 1.0)
    throw unsupported_regime_error("polylog series requires |x| < 1");
  double sum = 0.0;
  double xn = 1.0;
  for (int n = 1; n <= 400; ++n) {
    xn *= x;
    const double term = xn / std::pow(n, s);
    sum += term;
    // Geometric tail bound: remaining terms are dominated by |term| |x|/(1-|x|).
    if (std::abs(term) * std::abs(x) / (1.0 - std::abs(x)) < 1e-17) break;
  }
  return sum;
}

double polylog_integral(double s, double x) {
  if (x >= 1.0)
    throw unsupported_regime_error("polylog integral requires x < 1");
  if (x == 0.0) return 0.0;
  // Li_s(x) = (1/Gamma(s)) int_0^inf t^(s-1) x e^-t / (1 - x e^-t) dt.
  // Substituting t = u^2 removes the integrable endpoint power at t = 0.
  const double gamma_s = (s == 0.5) ? kSqrtPi : 0.5 * kSqrtPi;
  const double u_max =
      std::sqrt(std::log1p(std::abs(x)) + 42.0);
  auto integrand = [&](double u) {
    const double e = std::exp(-u * u);
    const double p = (s == 0.5) ? 1.0 : u * u;
    return 2.0 * p * x * e / (1.0 - x * e);
  };
  return gauss_kronrod_adaptive(integrand, 0.0, u_max, 1e-13) / gamma_s;
}

double polylog_log_expansion(double s, double x) {
  if (x <= 0.0 || x > 1.0)
    throw unsupported_regime_error("polylog log expansion requires 0 < x <= 1");
  // Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_j zeta(s-j) mu^j / j!,
  // convergent for |mu| < 2 pi and noninteger s.
  const double mu = std::log1p(x - 1.0);
  const double gamma_term =
      (s == 0.5) ? kSqrtPi / std::sqrt(-mu) : -2.0 * kSqrtPi * std::sqrt(-mu);
  if (x == 1.0) {
    // mu = 0: only the j = 0 term survives (divergent for s = 1/2).
    return (s == 0.5) ? std::numeric_limits<double>::infinity()
                      : riemann_zeta(s);
  }
  static const auto zeta_cache = [] {
    std::array<std::array<double, 40>, 2> table{};
    for (int j = 0; j < 40; ++j) {
      table[0][j] = riemann_zeta(0.5 - j);
      table[1][j] = riemann_zeta(1.5 - j);
    }
    return table;
  }();
  const int row = (s == 0.5) ? 0 : 1;
  double sum = gamma_term;
  double mu_pow = 1.0;  // mu^j / j!
  for (int j = 0; j < 40; ++j) {
    const double term = zeta_cache[row][j] * mu_pow;
    sum += term;
    if (std::abs(term) < 1e-18 && j > 2) break;
    mu_pow *= mu / (j + 1);
  }
  return sum;
}

}  // namespace detail

double polylog(PolylogOrder order, double x) {
  const double s = detail::order_value(order);
  if (x > 1.0) throw unsupported_regime_error("polylog requires x <= 1");
  if (x == 0.0) return 0.0;
  if (std::abs(x) <= 0.5) return detail::polylog_series(s, x);
  if (x > 0.5) return detail::polylog_log_expansion(s, x);
  return detail::polylog_integral(s, x);
}

double zeta_three_halves() {
  static const double value = detail::riemann_zeta(1.5);
  return value;
}

}  // namespace kzldt
