#include "kzldt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kzldt/errors.hpp"
#include "kzldt/ldt.hpp"
#include "kzldt/oracle.hpp"
#include "kzldt/version.hpp"

namespace kzldt::cli {

namespace {

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 2 || !(hi > lo))
    throw std::domain_error("grid needs at least 2 steps and max > min");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = lo + (hi - lo) * i / (steps - 1);
  return grid;
}

Manifest base_manifest(const std::string& command, const RunConfig& cfg) {
  Manifest m;
  m.emplace_back("artifact", std::string("kzldt ") + kVersion);
  m.emplace_back("command", command);
  m.emplace_back("n_sites", std::to_string(cfg.n_sites));
  std::string taus;
  for (double t : cfg.tau_q_list)
    taus += (taus.empty() ? "" : ",") + format_value(t);
  m.emplace_back("tau_q", taus);
  if (cfg.alpha) m.emplace_back("alpha", format_value(*cfg.alpha));
  m.emplace_back("tol", format_value(cfg.tol));
  return m;
}

void append_theta_grid(Manifest& m, const RunConfig& cfg) {
  m.emplace_back("theta_min", format_value(cfg.theta_min));
  m.emplace_back("theta_max", format_value(cfg.theta_max));
  m.emplace_back("theta_steps", std::to_string(cfg.theta_steps));
}

void append_rho_grid(Manifest& m, const RunConfig& cfg) {
  m.emplace_back("rho_min", format_value(cfg.rho_min));
  m.emplace_back("rho_max", format_value(cfg.rho_max));
  m.emplace_back("rho_steps", std::to_string(cfg.rho_steps));
}

PairingSpec make_pairing(const RunConfig& cfg) {
  return cfg.alpha ? PairingSpec::long_range(*cfg.alpha, cfg.n_sites)
                   : PairingSpec::short_range();
}

}  // namespace

double RunConfig::tau_q() const {
  if (tau_q_list.size() != 1)
    throw std::domain_error("this command takes a single --tau-q value");
  return tau_q_list.front();
}

std::string format_value(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_csv(const std::string& path, const Manifest& manifest,
               const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (const auto& [key, value] : manifest)
    out << "# " << key << "=" << value << "\n";
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_value(row[i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::pair<std::string, std::string>> load_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) entries.emplace_back(key, value);
  }
  return entries;
}

void run_spectrum(const RunConfig& cfg) {
  const double tau = cfg.tau_q();
  const QuenchProtocol protocol = QuenchProtocol::linear_ramp(tau);
  const MomentumGrid grid = MomentumGrid::for_sites(cfg.n_sites);
  const PairingSpec pairing = make_pairing(cfg);

  const ExcitationProfile numeric = run_quench(protocol, grid, pairing, cfg.tol);
  const ExcitationProfile lz = landau_zener_profile(protocol, grid, 1.0);

  Manifest manifest = base_manifest("spectrum", cfg);
  std::string header = "k,p_k_numeric,p_k_lz";
  std::vector<std::vector<double>> rows;
  rows.reserve(numeric.entries.size());
  if (cfg.alpha) {
    manifest.emplace_back("xi", format_value(pairing.slope()));
    header += ",p_k_lz_renorm";
    const ExcitationProfile renorm =
        landau_zener_profile(protocol, grid, pairing.slope());
    for (std::size_t i = 0; i < numeric.entries.size(); ++i)
      rows.push_back({numeric.entries[i].first, numeric.entries[i].second,
                      lz.entries[i].second, renorm.entries[i].second});
  } else {
    for (std::size_t i = 0; i < numeric.entries.size(); ++i)
      rows.push_back({numeric.entries[i].first, numeric.entries[i].second,
                      lz.entries[i].second});
  }
  write_csv(cfg.out, manifest, header, rows);
}

void run_scaling(const RunConfig& cfg) {
  if (cfg.tau_q_list.size() < 3)
    throw std::domain_error("scaling sweep needs at least 3 tau_q points");
  const MomentumGrid grid = MomentumGrid::for_sites(cfg.n_sites);
  const PairingSpec pairing = make_pairing(cfg);

  std::vector<std::vector<double>> rows;
  std::vector<double> log_tau, log_density;
  for (double tau : cfg.tau_q_list) {
    const QuenchProtocol protocol = QuenchProtocol::linear_ramp(tau);
    const ExcitationProfile profile =
        run_quench(protocol, grid, pairing, cfg.tol);
    const CumulantSet c = cumulants(profile);
    const double density = c.kappa1 / cfg.n_sites;
    rows.push_back({tau, density, c.kappa1, c.kappa2, c.kappa3,
                    c.kappa2 / c.kappa1, c.kappa3 / c.kappa1,
                    c.kappa3 / c.kappa2});
    const bool in_window =
        (cfg.fit_min_tau <= 0.0 || tau >= cfg.fit_min_tau) &&
        (cfg.fit_max_tau <= 0.0 || tau <= cfg.fit_max_tau);
    if (in_window && density > 0.0) {
      log_tau.push_back(std::log(tau));
      log_density.push_back(std::log(density));
    }
  }
  if (log_tau.size() < 3)
    throw std::domain_error("fewer than 3 sweep points inside the fit window");

  // Least-squares log-log slope.
  const std::size_t n = log_tau.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += log_tau[i];
    my += log_density[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (log_tau[i] - mx) * (log_density[i] - my);
    sxx += (log_tau[i] - mx) * (log_tau[i] - mx);
  }
  const double slope = sxy / sxx;

  Manifest manifest = base_manifest("scaling", cfg);
  manifest.emplace_back("fit_min_tau", format_value(cfg.fit_min_tau));
  manifest.emplace_back("fit_max_tau", format_value(cfg.fit_max_tau));
  manifest.emplace_back("fit_points", std::to_string(n));
  manifest.emplace_back("loglog_slope", format_value(slope));

  // Local slopes outside the KZM window mark the sweep edges where the
  // power law no longer applies: near the sudden limit the density
  // saturates (slope -> 0), and on a finite chain overlong quenches turn
  // purely adiabatic (slope steepens well past -1/2).
  std::string breakdown;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double local = (std::log(rows[i][1]) - std::log(rows[i - 1][1])) /
                         (std::log(rows[i][0]) - std::log(rows[i - 1][0]));
    if (local > -0.25 || local < -0.75) {
      if (!breakdown.empty()) breakdown += ",";
      breakdown += format_value(rows[i][0]);
    }
  }
  manifest.emplace_back("kzm_window_breakdown_at",
                        breakdown.empty() ? "none" : breakdown);

  write_csv(cfg.out, manifest,
            "tau_q,mean_density,kappa1,kappa2,kappa3,ratio21,ratio31,ratio32",
            rows);
}

void run_rate_function(const RunConfig& cfg) {
  const double tau = cfg.tau_q();
  const QuenchProtocol protocol = QuenchProtocol::linear_ramp(tau);
  const MomentumGrid grid = MomentumGrid::for_sites(cfg.n_sites);
  const PairingSpec pairing = make_pairing(cfg);

  const ExcitationProfile profile = run_quench(protocol, grid, pairing, cfg.tol);
  const std::vector<double> thetas =
      linspace(cfg.theta_min, cfg.theta_max, cfg.theta_steps);
  const std::vector<double> rho_grid =
      linspace(cfg.rho_min, cfg.rho_max, cfg.rho_steps);

  // Long-range runs are scaled by the renormalized KZM density.
  const double scale = rho_kzm_density(tau * pairing.slope() * pairing.slope());
  CgfCurve lambda_n = cgf_finite_n(profile, thetas);
  lambda_n.rho_kzm = scale;

  const RateFunctionCurve numeric = legendre_fenchel(lambda_n, rho_grid);
  const RateFunctionCurve analytic = analytic_rate_function(rho_grid);
  const RateFunctionCurve clt = clt_rate_function(profile, rho_grid, scale);

  Manifest manifest = base_manifest("rate-function", cfg);
  append_theta_grid(manifest, cfg);
  append_rho_grid(manifest, cfg);
  manifest.emplace_back("rho_kzm", format_value(scale));
  if (cfg.alpha) manifest.emplace_back("xi", format_value(pairing.slope()));

  std::vector<std::vector<double>> rows;
  rows.reserve(rho_grid.size());
  for (std::size_t i = 0; i < rho_grid.size(); ++i)
    rows.push_back({rho_grid[i], analytic.samples[i].i_bar,
                    numeric.samples[i].i_bar, clt.samples[i].i_bar});
  write_csv(cfg.out, manifest,
            "rho_bar,I_bar_analytic,I_bar_numeric,I_bar_clt", rows);

  if (!cfg.logp_out.empty()) {
    // Direct -(1/N) ln P at the discrete support, scaled like Ibar.
    const KinkPairDistribution dist = kink_distribution(profile);
    Manifest logp_manifest = manifest;
    logp_manifest.emplace_back("export", "direct_log_probability");
    std::vector<std::vector<double>> logp_rows;
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
      if (dist.probs[n] <= 0.0) continue;
      const double rho_bar = n / (cfg.n_sites * scale);
      logp_rows.push_back(
          {rho_bar, -std::log(dist.probs[n]) / (cfg.n_sites * scale)});
    }
    write_csv(cfg.logp_out, logp_manifest, "rho_bar,I_bar_direct", logp_rows);
  }
}

void run_classical(const RunConfig& cfg) {
  const double tau = cfg.tau_q();
  KzmScalingParams params;
  params.nu = cfg.nu;
  params.z = cfg.z;
  params.dim = cfg.dim;
  params.xi0 = cfg.xi0;
  params.tau0 = cfg.tau0;
  params.f_factor = cfg.fudge;
  params.p_success = cfg.p_defect;
  params.volume = cfg.volume;

  const DefectScaling scaling = kzm_defect_scaling(params, tau);
  const long n_events = std::max(1L, std::lround(scaling.n_events));
  const std::vector<double> rho_grid =
      linspace(cfg.rho_min, cfg.rho_max, cfg.rho_steps);
  const RateFunctionCurve rate = classical_rate_function(params, tau, rho_grid);

  std::vector<std::vector<double>> rows;
  rows.reserve(rho_grid.size());
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    const double rho_bar = rho_grid[i];
    const double r = rho_bar * params.p_success;
    const double kl = kl_divergence_bernoulli(r, params.p_success);
    const double bound_log = -static_cast<double>(n_events) * kl;
    const long k = std::lround(r * n_events);
    const double exact_log = binomial_log_tail(
        n_events, k, params.p_success,
        r >= params.p_success ? TailSide::upper : TailSide::lower);
    rows.push_back({rho_bar, rate.samples[i].i_bar, bound_log, exact_log});
  }

  Manifest manifest = base_manifest("classical", cfg);
  append_rho_grid(manifest, cfg);
  manifest.emplace_back("nu", format_value(params.nu));
  manifest.emplace_back("z", format_value(params.z));
  manifest.emplace_back("dim", std::to_string(params.dim));
  manifest.emplace_back("xi0", format_value(params.xi0));
  manifest.emplace_back("tau0", format_value(params.tau0));
  manifest.emplace_back("fudge", format_value(params.f_factor));
  manifest.emplace_back("p_defect", format_value(params.p_success));
  manifest.emplace_back("volume", format_value(params.volume));
  manifest.emplace_back(
      "scaling_exponent",
      format_value(params.dim * params.nu / (1.0 + params.z * params.nu)));
  manifest.emplace_back("xi_hat", format_value(scaling.xi_hat));
  manifest.emplace_back("n_events", std::to_string(n_events));
  manifest.emplace_back("rho_kzm_classical", format_value(scaling.rho_kzm));

  write_csv(cfg.out, manifest,
            "rho_bar,I_classical,tail_bound_log,exact_binomial_tail_log", rows);
}

void run_oracle_compare(const RunConfig& cfg) {
  const double tau = cfg.tau_q();
  const QuenchProtocol protocol = QuenchProtocol::linear_ramp(tau);
  const MomentumGrid grid = MomentumGrid::for_sites(cfg.n_sites);

  const ExcitationProfile profile =
      run_quench(protocol, grid, PairingSpec::short_range(), cfg.tol);
  const KinkPairDistribution pipeline = kink_distribution(profile);
  const SpinChainState state = evolve_exact(protocol, cfg.n_sites);
  const KinkPairDistribution exact = kink_pair_distribution_exact(state);

  double tv = 0.0;
  std::vector<std::vector<double>> rows;
  for (std::size_t n = 0; n < exact.probs.size(); ++n) {
    const double diff = std::abs(exact.probs[n] - pipeline.probs[n]);
    tv += 0.5 * diff;
    rows.push_back({static_cast<double>(n), exact.probs[n], pipeline.probs[n],
                    diff});
  }

  Manifest manifest = base_manifest("oracle-compare", cfg);
  manifest.emplace_back("tv_distance", format_value(tv));
  write_csv(cfg.out, manifest, "n,P_exact_ed,P_pipeline,abs_diff", rows);
}

}  // namespace kzldt::cli
