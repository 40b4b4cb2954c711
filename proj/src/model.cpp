#include "kzldt/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kzldt/errors.hpp"

namespace kzldt {

namespace {
constexpr double kPi = std::numbers::pi;
}

QuenchProtocol QuenchProtocol::linear_ramp(double tau_q) {
  QuenchProtocol p;
  p.tau_q = tau_q;
  p.t_start = -3.0 * tau_q;
  p.t_end = tau_q;
  p.validate();
  return p;
}

void QuenchProtocol::validate() const {
  if (!(tau_q > 0.0)) throw std::domain_error("tau_q must be positive");
  if (!(t_start < t_end)) throw std::domain_error("t_start must precede t_end");
  if (!(coupling_j > 0.0) || !(hbar > 0.0))
    throw std::domain_error("J and hbar must be positive");
}

double field_at(const QuenchProtocol& protocol, double t) {
  if (t < protocol.t_start || t > protocol.t_end)
    throw std::domain_error("time outside the quench window");
  return protocol.g_c * (1.0 - t / protocol.tau_q);
}

MomentumGrid MomentumGrid::for_sites(int n_sites) {
  if (n_sites <= 0 || n_sites % 2 != 0)
    throw std::domain_error("n_sites must be a positive even integer");
  MomentumGrid grid;
  grid.n_sites = n_sites;
  grid.positive_modes.reserve(n_sites / 2);
  for (int n = 0; n < n_sites / 2; ++n)
    grid.positive_modes.push_back((2.0 * n + 1.0) * kPi / n_sites);
  return grid;
}

LongRangeSpec LongRangeSpec::make(double alpha, int n_sites) {
  if (alpha < 2.0)
    throw unsupported_regime_error(
        "long-range exponent alpha < 2 is not supported");
  if (n_sites <= 0 || n_sites % 2 != 0)
    throw std::domain_error("n_sites must be a positive even integer");

  LongRangeSpec spec;
  spec.alpha = alpha;
  spec.n_sites = n_sites;
  spec.coupling_table.resize(n_sites - 1);
  for (int l = 1; l < n_sites; ++l) {
    const int range = l <= n_sites / 2 ? l : n_sites - l;
    spec.coupling_table[l - 1] = std::pow(range, -alpha);
  }
  return spec;
}

PairingSpec PairingSpec::short_range() { return PairingSpec{}; }

PairingSpec PairingSpec::long_range(double alpha, int n_sites) {
  PairingSpec p;
  p.long_range_ = LongRangeSpec::make(alpha, n_sites);
  // The slope is fitted at the smallest grid momentum k1 = pi/N.  Off-grid
  // momenta see the wrap-around part of the coupling table and are useless
  // for the fit.
  const double k1 = kPi / n_sites;
  p.long_range_.small_k_slope = pairing_function(p, k1) / k1;
  return p;
}

double PairingSpec::slope() const {
  return is_long_range() ? long_range_.small_k_slope : 1.0;
}

double pairing_function(const PairingSpec& pairing, double k) {
  if (!(k > -kPi && k < kPi))
    throw std::domain_error("momentum must lie in (-pi, pi)");
  if (!pairing.is_long_range()) return std::sin(k);

  const LongRangeSpec& spec = pairing.spec();
  double sum = 0.0;
  for (int l = spec.n_sites - 1; l >= 1; --l)
    sum += spec.coupling_table[l - 1] * std::sin(k * l);
  return 0.5 * sum;
}

double bogoliubov_angle(double g, double k, double pairing) {
  const double drive = g - std::cos(k);
  const double gap_sq = drive * drive + pairing * pairing;
  if (gap_sq <= 0.0)
    throw degenerate_point_error(
        "gapless point: Bogoliubov angle undefined");
  return std::atan2(pairing, drive);
}

double spectrum(double g, double k, double pairing, double coupling_j) {
  const double drive = g - std::cos(k);
  return 2.0 * coupling_j * std::hypot(drive, pairing);
}

Eigen::Matrix2cd mode_hamiltonian(double g, double k, double pairing,
                                  double coupling_j) {
  const double drive = g - std::cos(k);
  const std::complex<double> i_unit(0.0, 1.0);
  Eigen::Matrix2cd h;
  h(0, 0) = -2.0 * coupling_j * drive;
  h(1, 1) = 2.0 * coupling_j * drive;
  h(0, 1) = 2.0 * coupling_j * pairing * i_unit;
  h(1, 0) = -2.0 * coupling_j * pairing * i_unit;
  return h;
}

}  // namespace kzldt
