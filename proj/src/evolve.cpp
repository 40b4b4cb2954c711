#include "kzldt/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kzldt/detail/parallel.hpp"
#include "kzldt/errors.hpp"

namespace kzldt {

namespace {

using cd = std::complex<double>;

struct ModeState {
  cd u, v;
};

// Right-hand side of i hbar d/dt psi = H_k psi with
// H_k = 2J [ -(g - cos k) sigma_z - f sigma_y ] in the basis {|0>, |k,-k>}:
//   du/dt = +i a u + b v,   dv/dt = -b u - i a v,
// where a = 2J (g - cos k)/hbar and b = 2J f/hbar.  The flow is exactly
// norm-preserving, which makes the norm drift a clean integrator telltale.
struct ModeRhs {
  double cos_k;
  double b;  // 2 J f / hbar
  double two_j_over_hbar;
  const QuenchProtocol* protocol;

  ModeState operator()(double t, const ModeState& y) const {
    const double g = protocol->g_c * (1.0 - t / protocol->tau_q);
    const double a = two_j_over_hbar * (g - cos_k);
    const cd ia(0.0, a);
    return {ia * y.u + b * y.v, -b * y.u - ia * y.v};
  }
};

ModeState axpy(const ModeState& y, double h, const ModeState& d) {
  return {y.u + h * d.u, y.v + h * d.v};
}

// Dormand-Prince 5(4) with FSAL.  Error is controlled per unit time:
// a step of size h is accepted when the embedded estimate is below
// tol * h / span, so the accumulated error stays near tol.
ModeState integrate_dopri(const ModeRhs& rhs, ModeState y, double t0,
                          double t1, double tol, double k_mode) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const double span = t1 - t0;
  double t = t0;
  ModeState k1 = rhs(t, y);
  // Initial step from the local rotation rate.
  const double rate = std::abs(k1.u) + std::abs(k1.v) + 1.0 / span;
  double h = std::min(0.5 / rate, 0.1 * span);

  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < 1e-14 * span)
      throw integration_error("step size underflow", k_mode, t);

    const ModeState k2 = rhs(t + c2 * h, axpy(y, h * a21, k1));
    ModeState s{k1.u * a31 + k2.u * a32, k1.v * a31 + k2.v * a32};
    const ModeState k3 = rhs(t + c3 * h, axpy(y, h, s));
    s = {k1.u * a41 + k2.u * a42 + k3.u * a43,
         k1.v * a41 + k2.v * a42 + k3.v * a43};
    const ModeState k4 = rhs(t + c4 * h, axpy(y, h, s));
    s = {k1.u * a51 + k2.u * a52 + k3.u * a53 + k4.u * a54,
         k1.v * a51 + k2.v * a52 + k3.v * a53 + k4.v * a54};
    const ModeState k5 = rhs(t + c5 * h, axpy(y, h, s));
    s = {k1.u * a61 + k2.u * a62 + k3.u * a63 + k4.u * a64 + k5.u * a65,
         k1.v * a61 + k2.v * a62 + k3.v * a63 + k4.v * a64 + k5.v * a65};
    const ModeState k6 = rhs(t + h, axpy(y, h, s));
    const ModeState ynew = {
        y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
        y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
    const ModeState k7 = rhs(t + h, ynew);

    const cd err_u = h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u +
                          e6 * k6.u + e7 * k7.u);
    const cd err_v = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v +
                          e6 * k6.v + e7 * k7.v);
    const double err = std::sqrt(std::norm(err_u) + std::norm(err_v));
    const double allowed = tol * h / span;

    if (err <= allowed) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
    }
    const double ratio = allowed / std::max(err, 1e-300);
    h *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 5.0);
  }
  return y;
}

ModeAmplitudes fix_phase(cd u, cd v) {
  cd lead = std::abs(u) > 1e-14 ? u : v;
  const cd phase = lead / std::abs(lead);
  return {u / phase, v / phase};
}

}  // namespace

ModeAmplitudes ground_state(double g, double k, double pairing) {
  const double theta = bogoliubov_angle(g, k, pairing);
  return fix_phase(std::cos(0.5 * theta), cd(0.0, 1.0) * std::sin(0.5 * theta));
}

ModeAmplitudes excited_state(double g, double k, double pairing) {
  const double theta = bogoliubov_angle(g, k, pairing);
  return fix_phase(-std::sin(0.5 * theta), cd(0.0, 1.0) * std::cos(0.5 * theta));
}

ModeAmplitudes evolve_mode(const QuenchProtocol& protocol, double k,
                           double pairing, double tol) {
  protocol.validate();
  if (!(tol > 0.0)) throw std::domain_error("tolerance must be positive");

  const double g0 = field_at(protocol, protocol.t_start);
  const ModeAmplitudes psi0 = ground_state(g0, k, pairing);

  ModeRhs rhs;
  rhs.cos_k = std::cos(k);
  rhs.two_j_over_hbar = 2.0 * protocol.coupling_j / protocol.hbar;
  rhs.b = rhs.two_j_over_hbar * pairing;
  rhs.protocol = &protocol;

  const ModeState final_state = integrate_dopri(
      rhs, {psi0.u, psi0.v}, protocol.t_start, protocol.t_end, tol, k);
  return {final_state.u, final_state.v};
}

double excitation_probability(const ModeAmplitudes& final_state,
                              double g_final, double k, double pairing) {
  const ModeAmplitudes exc = excited_state(g_final, k, pairing);
  const cd overlap =
      std::conj(exc.u) * final_state.u + std::conj(exc.v) * final_state.v;
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

ExcitationProfile landau_zener_profile(const QuenchProtocol& protocol,
                                       const MomentumGrid& grid, double slope) {
  protocol.validate();
  ExcitationProfile profile;
  profile.tau_q = protocol.scaled_tau();
  profile.source = ProfileSource::landau_zener;
  profile.n_sites = grid.n_sites;
  profile.entries.reserve(grid.positive_modes.size());
  const double rate = 2.0 * std::numbers::pi * protocol.scaled_tau() * slope * slope;
  for (double k : grid.positive_modes)
    profile.entries.emplace_back(k, std::exp(-rate * k * k));
  return profile;
}

ExcitationProfile run_quench(const QuenchProtocol& protocol,
                             const MomentumGrid& grid,
                             const PairingSpec& pairing, double tol) {
  protocol.validate();
  const double g_final = field_at(protocol, protocol.t_end);

  std::vector<double> pairings(grid.positive_modes.size());
  for (std::size_t i = 0; i < grid.positive_modes.size(); ++i)
    pairings[i] = pairing_function(pairing, grid.positive_modes[i]);

  ExcitationProfile profile;
  profile.tau_q = protocol.scaled_tau();
  profile.source = ProfileSource::numeric;
  profile.n_sites = grid.n_sites;
  profile.entries.resize(grid.positive_modes.size());

  detail::parallel_for(grid.positive_modes.size(), [&](std::size_t i) {
    const double k = grid.positive_modes[i];
    const ModeAmplitudes final_state = evolve_mode(protocol, k, pairings[i], tol);
    profile.entries[i] = {k, excitation_probability(final_state, g_final, k,
                                                    pairings[i])};
  });
  return profile;
}

}  // namespace kzldt
