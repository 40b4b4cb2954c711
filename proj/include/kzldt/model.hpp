#pragma once

#include <Eigen/Core>
#include <vector>

namespace kzldt {

/// Linear ramp g(t) = g_c (1 - t/tau_q) crossing the critical point at t = 0.
/// Times and energies are expressed in units of hbar/J and J; the defaults
/// fix J = hbar = 1 so that tau_q is the dimensionless combination J tau_Q / hbar.
struct QuenchProtocol {
  double g_c = 1.0;
  double tau_q = 1.0;
  double t_start = -3.0;
  double t_end = 1.0;
  double coupling_j = 1.0;
  double hbar = 1.0;

  /// Ramp from g = 4 g_c down to g = 0 over [-3 tau_q, tau_q].
  static QuenchProtocol linear_ramp(double tau_q);

  /// J tau_Q / hbar, the only combination entering the scaling formulas.
  double scaled_tau() const { return coupling_j * tau_q / hbar; }

  void validate() const;
};

/// Instantaneous field; throws std::domain_error outside [t_start, t_end].
double field_at(const QuenchProtocol& protocol, double t);

/// Antiperiodic momenta k = (2n+1) pi / N, n = 0..N/2-1 (positive half grid).
struct MomentumGrid {
  int n_sites = 0;
  std::vector<double> positive_modes;

  static MomentumGrid for_sites(int n_sites);
};

/// Power-law coupling table and the resulting pairing function data for the
/// long-range Kitaev deformation.  Only alpha >= 2 is supported; below that
/// the small-k behaviour turns singular and is out of scope.
struct LongRangeSpec {
  double alpha = 0.0;
  int n_sites = 0;
  std::vector<double> coupling_table;  // kappa_{l,alpha}, l = 1..N-1
  double small_k_slope = 0.0;          // xi with f_k ~ xi k near k = 0

  static LongRangeSpec make(double alpha, int n_sites);
};

/// Pairing term of the mode Hamiltonian: sin k for the short-range chain,
/// the finite coupling sum for a long-range spec.
class PairingSpec {
 public:
  static PairingSpec short_range();
  static PairingSpec long_range(double alpha, int n_sites);

  bool is_long_range() const { return long_range_.n_sites != 0; }
  const LongRangeSpec& spec() const { return long_range_; }

  /// Small-k slope of the pairing function: exactly 1 for the short-range
  /// chain, the fitted xi otherwise.
  double slope() const;

 private:
  PairingSpec() = default;
  LongRangeSpec long_range_;
};

/// f_{alpha k} = (1/2) sum_l kappa_{l,alpha} sin(k l); reduces to sin k for
/// the short-range chain.  Odd in k.  Off-grid momenta are accepted for
/// diagnostics but the wrapped coupling table makes the value physically
/// meaningful only on the antiperiodic grid.
double pairing_function(const PairingSpec& pairing, double k);

/// Bogoliubov angle theta_k with cos theta = (g - cos k)/E, sin theta = f/E.
/// Throws degenerate_point_error at a gapless point.
double bogoliubov_angle(double g, double k, double pairing);

/// Quasiparticle energy 2 J sqrt(f^2 + (g - cos k)^2).
double spectrum(double g, double k, double pairing, double coupling_j = 1.0);

/// Two-level mode Hamiltonian in the fixed fermionic basis {|0>, |k,-k>}:
/// H_k = 2 J [ -(g - cos k) sigma_z - f sigma_y ].  Hermitian and traceless.
Eigen::Matrix2cd mode_hamiltonian(double g, double k, double pairing,
                                  double coupling_j = 1.0);

}  // namespace kzldt
