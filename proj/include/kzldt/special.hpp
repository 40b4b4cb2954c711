#pragma once

namespace kzldt {

/// Polylogarithm orders used by the scaled cumulant generating function
/// and the saddle-point equation.  Only these two are supported.
enum class PolylogOrder { half, three_halves };

/// Li_s(x) for s in {1/2, 3/2} on real x <= 1, absolute error < 1e-12.
///
/// Branches: direct power series for |x| <= 1/2; the Bose-Einstein integral
/// representation for negative and moderate positive arguments; a log-series
/// expansion about x = 1 where the integral representation develops a short
/// length scale.  Throws unsupported_regime_error for x > 1.
double polylog(PolylogOrder s, double x);

/// zeta(3/2) = Li_{3/2}(1), the theta -> -infinity plateau scale of the CGF.
double zeta_three_halves();

namespace detail {

// Individual evaluation branches, exposed for cross-validation.
double polylog_series(double s, double x);         // |x| < 1
double polylog_integral(double s, double x);       // x < 1
double polylog_log_expansion(double s, double x);  // exp(-2) < x <= 1

// Riemann zeta on the real axis away from s = 1 (Euler-Maclaurin for
// s > 0, functional equation for s < 0).  Used for the log expansion.
double riemann_zeta(double s);

}  // namespace detail

}  // namespace kzldt
