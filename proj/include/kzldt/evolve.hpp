#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "kzldt/model.hpp"

namespace kzldt {

/// Two-component state of one momentum mode in the fixed fermionic basis
/// {|0>, |k,-k>}.
struct ModeAmplitudes {
  std::complex<double> u{1.0, 0.0};
  std::complex<double> v{0.0, 0.0};

  double norm_sq() const { return std::norm(u) + std::norm(v); }
};

enum class ProfileSource { numeric, landau_zener };

/// Per-mode excitation probabilities {(k, p_k)} in ascending k.
struct ExcitationProfile {
  std::vector<std::pair<double, double>> entries;
  double tau_q = 0.0;  // in units hbar/J
  ProfileSource source = ProfileSource::numeric;
  int n_sites = 0;
};

/// Lower eigenvector of the mode Hamiltonian, first nonzero component made
/// real positive.  Throws degenerate_point_error at a gapless point.
ModeAmplitudes ground_state(double g, double k, double pairing);

/// Upper eigenvector with the same phase convention.
ModeAmplitudes excited_state(double g, double k, double pairing);

/// Integrates i hbar d/dt psi = H_k[g(t)] psi from the instantaneous ground
/// state at t_start to t_end with a Dormand-Prince 5(4) pair.  The local
/// error per unit time is kept below tol/(t_end - t_start), so the final
/// norm stays within 10*tol of 1.
ModeAmplitudes evolve_mode(const QuenchProtocol& protocol, double k,
                           double pairing, double tol = 1e-10);

/// Overlap-squared of the final state with the excited eigenvector of the
/// mode Hamiltonian at the final field; lies in [0, 1].
double excitation_probability(const ModeAmplitudes& final_state,
                              double g_final, double k, double pairing);

/// Closed-form Landau-Zener profile p_k = exp(-2 pi J tau_Q slope^2 k^2 / hbar).
/// slope = 1 for the short-range chain, xi for a long-range spec.
ExcitationProfile landau_zener_profile(const QuenchProtocol& protocol,
                                       const MomentumGrid& grid, double slope);

/// Full numeric quench: evolves every positive mode in parallel and collects
/// the excitation probabilities in ascending k.  Deterministic for fixed
/// inputs and tolerance; integration failures propagate with mode identity.
ExcitationProfile run_quench(const QuenchProtocol& protocol,
                             const MomentumGrid& grid,
                             const PairingSpec& pairing, double tol = 1e-10);

}  // namespace kzldt
