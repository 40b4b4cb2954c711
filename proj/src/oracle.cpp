#include "kzldt/oracle.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "kzldt/errors.hpp"

namespace kzldt {

namespace {

constexpr int kMaxSites = 12;

void check_sites(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw std::domain_error("n_sites must be even and at least 2");
  if (n_sites > kMaxSites)
    throw resource_error("exact diagonalization capped at N = 12 sites");
}

// Diagonal of the ferromagnetic term -J sum_l z_l z_(l+1) (J = 1), with
// bit l set meaning spin down (z = -1).
Eigen::VectorXd ising_diagonal(int n_sites) {
  const int dim = 1 << n_sites;
  Eigen::VectorXd diag(dim);
  for (int s = 0; s < dim; ++s) {
    const unsigned u = static_cast<unsigned>(s);
    const unsigned rotated =
        ((u >> 1) | (u << (n_sites - 1))) & ((1u << n_sites) - 1);
    const int walls = std::popcount(u ^ rotated);
    diag[s] = -static_cast<double>(n_sites - 2 * walls);
  }
  return diag;
}

void apply_hamiltonian(double g, int n_sites, const Eigen::VectorXd& diag,
                       const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  out = diag.cwiseProduct(in);
  const int dim = 1 << n_sites;
  for (int l = 0; l < n_sites; ++l) {
    const int bit = 1 << l;
    for (int s = 0; s < dim; ++s) out[s] -= g * in[s ^ bit];
  }
}

}  // namespace

Eigen::MatrixXd build_hamiltonian(double g, int n_sites) {
  check_sites(n_sites);
  const int dim = 1 << n_sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  h.diagonal() = ising_diagonal(n_sites);
  for (int l = 0; l < n_sites; ++l) {
    const int bit = 1 << l;
    for (int s = 0; s < dim; ++s) h(s ^ bit, s) -= g;
  }
  return h;
}

std::pair<double, Eigen::VectorXd> spin_ground_state(double g, int n_sites) {
  check_sites(n_sites);
  const int dim = 1 << n_sites;
  const Eigen::VectorXd diag = ising_diagonal(n_sites);

  // Lanczos with full reorthogonalization.  The all-ones start vector has
  // order-one overlap with the ground state (H has nonpositive off-diagonal
  // entries for g > 0, so the ground vector is componentwise nonnegative).
  const int m_max = std::min(dim, 160);
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(m_max);
  std::vector<double> alphas, betas;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(dim) / std::sqrt(double(dim));
  Eigen::VectorXd w(dim);
  basis.push_back(v);
  for (int j = 0; j < m_max; ++j) {
    apply_hamiltonian(g, n_sites, diag, basis[j], w);
    if (j > 0) w -= betas[j - 1] * basis[j - 1];
    const double alpha = basis[j].dot(w);
    alphas.push_back(alpha);
    w -= alpha * basis[j];
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXd& u : basis) w -= u.dot(w) * u;
    const double beta = w.norm();
    if (beta < 1e-13 || j + 1 == m_max) break;
    betas.push_back(beta);
    basis.push_back(w / beta);
  }

  const int m = static_cast<int>(alphas.size());
  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    tri(j, j) = alphas[j];
    if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = betas[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
  const double energy = solver.eigenvalues()[0];
  Eigen::VectorXd ground = Eigen::VectorXd::Zero(dim);
  for (int j = 0; j < m; ++j)
    ground += solver.eigenvectors()(j, 0) * basis[j];
  ground.normalize();

  apply_hamiltonian(g, n_sites, diag, ground, w);
  const double residual = (w - energy * ground).norm();
  if (residual > 1e-9 * std::max(1.0, std::abs(energy)))
    throw integration_error("Lanczos ground state did not converge", 0.0, 0.0);
  return {energy, ground};
}

namespace {

Eigen::VectorXcd strang_evolve(const QuenchProtocol& protocol, int n_sites,
                               const Eigen::VectorXcd& initial, double dt) {
  const int dim = 1 << n_sites;
  const Eigen::VectorXd diag = ising_diagonal(n_sites);
  const double span = protocol.t_end - protocol.t_start;
  const long steps = std::max(1L, std::lround(std::ceil(span / dt)));
  const double h = span / steps;
  const std::complex<double> i_unit(0.0, 1.0);

  Eigen::VectorXcd half_phase(dim);
  for (int s = 0; s < dim; ++s)
    half_phase[s] =
        std::exp(-i_unit * diag[s] * (0.5 * h * protocol.coupling_j / protocol.hbar));

  Eigen::VectorXcd psi = initial;
  for (long step = 0; step < steps; ++step) {
    const double t_mid = protocol.t_start + (step + 0.5) * h;
    const double g_mid = protocol.g_c * (1.0 - t_mid / protocol.tau_q);
    const double angle = protocol.coupling_j * g_mid * h / protocol.hbar;
    const std::complex<double> c = std::cos(angle);
    const std::complex<double> is = i_unit * std::sin(angle);

    psi.array() *= half_phase.array();
    for (int l = 0; l < n_sites; ++l) {
      const int bit = 1 << l;
      for (int s = 0; s < dim; ++s) {
        if (s & bit) continue;
        const std::complex<double> a = psi[s];
        const std::complex<double> b = psi[s | bit];
        psi[s] = c * a + is * b;
        psi[s | bit] = is * a + c * b;
      }
    }
    psi.array() *= half_phase.array();
  }
  return psi;
}

double total_variation(const KinkPairDistribution& a,
                       const KinkPairDistribution& b) {
  double tv = 0.0;
  for (std::size_t n = 0; n < a.probs.size(); ++n)
    tv += std::abs(a.probs[n] - b.probs[n]);
  return 0.5 * tv;
}

}  // namespace

SpinChainState evolve_exact(const QuenchProtocol& protocol, int n_sites,
                            double dt_initial) {
  check_sites(n_sites);
  protocol.validate();

  const double g0 = field_at(protocol, protocol.t_start);
  const Eigen::VectorXcd initial =
      spin_ground_state(g0, n_sites).second.cast<std::complex<double>>();

  double dt = dt_initial > 0.0 ? dt_initial : protocol.tau_q * 1e-4;
  SpinChainState state{strang_evolve(protocol, n_sites, initial, dt), n_sites};
  KinkPairDistribution prev = kink_pair_distribution_exact(state);
  for (int halving = 0; halving < 12; ++halving) {
    dt *= 0.5;
    state.amplitudes = strang_evolve(protocol, n_sites, initial, dt);
    const KinkPairDistribution dist = kink_pair_distribution_exact(state);
    if (total_variation(prev, dist) < 1e-8) return state;
    prev = dist;
  }
  throw integration_error("exact evolution did not converge under dt halving",
                          0.0, protocol.t_end);
}

KinkPairDistribution kink_pair_distribution_exact(const SpinChainState& state) {
  const int n_sites = state.n_sites;
  check_sites(n_sites);
  const int dim = 1 << n_sites;
  if (state.amplitudes.size() != dim)
    throw std::domain_error("state dimension does not match n_sites");
  const double norm = state.amplitudes.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::domain_error("state is not normalized");

  KinkPairDistribution dist;
  dist.n_sites = n_sites;
  dist.probs.assign(n_sites / 2 + 1, 0.0);
  for (int s = 0; s < dim; ++s) {
    const unsigned u = static_cast<unsigned>(s);
    const unsigned rotated =
        ((u >> 1) | (u << (n_sites - 1))) & ((1u << n_sites) - 1);
    const int pairs = std::popcount(u ^ rotated) / 2;
    dist.probs[pairs] += std::norm(state.amplitudes[s]);
  }
  return dist;
}

}  // namespace kzldt
