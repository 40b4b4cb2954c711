#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kzldt/cli.hpp"
#include "kzldt/errors.hpp"
#include "kzldt/version.hpp"

namespace {

using kzldt::cli::RunConfig;

struct Binding {
  CLI::Option* opt;
  std::string key;
  std::function<void(const std::string&)> set;
};

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < value.size()) {
    const std::size_t comma = value.find(',', pos);
    const std::string tok = value.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::domain_error("empty value list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kzldt: finite-time quenches of the transverse-field Ising chain, "
      "kink counting statistics, and large-deviations rate functions"};
  app.set_version_flag("--version", std::string("kzldt ") + kzldt::kVersion);
  app.require_subcommand(1);
  app.footer(
      "Config file: flat key=value lines (keys match the long flags with "
      "underscores,\ne.g. n_sites, tau_q, theta_min).  Command-line flags "
      "take precedence.");

  RunConfig cfg;
  std::string config_path;
  std::vector<Binding> bindings;

  auto add_common = [&](CLI::App* sub) {
    auto bind = [&](CLI::Option* opt, const char* key,
                    std::function<void(const std::string&)> set) {
      bindings.push_back({opt, key, std::move(set)});
    };
    bind(sub->add_option("--n-sites", cfg.n_sites, "number of spins N (even)"),
         "n_sites", [&](const std::string& v) { cfg.n_sites = std::stoi(v); });
    bind(sub->add_option("--tau-q", cfg.tau_q_list,
                         "quench time(s) in units hbar/J, comma-separated")
             ->delimiter(','),
         "tau_q",
         [&](const std::string& v) { cfg.tau_q_list = parse_double_list(v); });
    bind(sub->add_option("--alpha", cfg.alpha,
                         "long-range decay exponent (>= 2); short-range when "
                         "omitted"),
         "alpha", [&](const std::string& v) { cfg.alpha = std::stod(v); });
    bind(sub->add_option("--tol", cfg.tol, "integration tolerance"), "tol",
         [&](const std::string& v) { cfg.tol = std::stod(v); });
    bind(sub->add_option("--theta-min", cfg.theta_min, "theta grid minimum"),
         "theta_min", [&](const std::string& v) { cfg.theta_min = std::stod(v); });
    bind(sub->add_option("--theta-max", cfg.theta_max, "theta grid maximum"),
         "theta_max", [&](const std::string& v) { cfg.theta_max = std::stod(v); });
    bind(sub->add_option("--theta-steps", cfg.theta_steps, "theta grid points"),
         "theta_steps",
         [&](const std::string& v) { cfg.theta_steps = std::stoi(v); });
    bind(sub->add_option("--rho-min", cfg.rho_min, "rho_bar grid minimum"),
         "rho_min", [&](const std::string& v) { cfg.rho_min = std::stod(v); });
    bind(sub->add_option("--rho-max", cfg.rho_max, "rho_bar grid maximum"),
         "rho_max", [&](const std::string& v) { cfg.rho_max = std::stod(v); });
    bind(sub->add_option("--rho-steps", cfg.rho_steps, "rho_bar grid points"),
         "rho_steps",
         [&](const std::string& v) { cfg.rho_steps = std::stoi(v); });
    bind(sub->add_option("--out", cfg.out, "output CSV path"), "out",
         [&](const std::string& v) { cfg.out = v; });
    sub->add_option("--config", config_path,
                    "key=value config file (flags win)");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "per-mode excitation probabilities vs Landau-Zener");
  add_common(spectrum);

  CLI::App* scaling = app.add_subcommand(
      "scaling", "mean density and cumulants across a tau_q sweep");
  add_common(scaling);
  bindings.push_back(
      {scaling->add_option("--fit-min-tau", cfg.fit_min_tau,
                           "lower tau_q bound of the slope fit window"),
       "fit_min_tau",
       [&](const std::string& v) { cfg.fit_min_tau = std::stod(v); }});
  bindings.push_back(
      {scaling->add_option("--fit-max-tau", cfg.fit_max_tau,
                           "upper tau_q bound of the slope fit window"),
       "fit_max_tau",
       [&](const std::string& v) { cfg.fit_max_tau = std::stod(v); }});

  CLI::App* rate = app.add_subcommand(
      "rate-function", "analytic, finite-N, and CLT rate functions");
  add_common(rate);
  bindings.push_back(
      {rate->add_option("--logp-out", cfg.logp_out,
                        "also export -(1/N) ln P at the discrete support"),
       "logp_out", [&](const std::string& v) { cfg.logp_out = v; }});

  CLI::App* classical = app.add_subcommand(
      "classical", "binomial rate function and tail bounds for the general "
                   "KZM scenario");
  add_common(classical);
  {
    auto bindc = [&](CLI::Option* opt, const char* key, double* field) {
      bindings.push_back(
          {opt, key, [field](const std::string& v) { *field = std::stod(v); }});
    };
    bindc(classical->add_option("--nu", cfg.nu, "correlation-length exponent"),
          "nu", &cfg.nu);
    bindc(classical->add_option("--z", cfg.z, "dynamic exponent"), "z", &cfg.z);
    bindings.push_back(
        {classical->add_option("--dim", cfg.dim, "spatial dimension"), "dim",
         [&](const std::string& v) { cfg.dim = std::stoi(v); }});
    bindc(classical->add_option("--xi0", cfg.xi0, "correlation-length amplitude"),
          "xi0", &cfg.xi0);
    bindc(classical->add_option("--tau0", cfg.tau0, "relaxation-time amplitude"),
          "tau0", &cfg.tau0);
    bindc(classical->add_option("--fudge", cfg.fudge, "order-one fudge factor"),
          "fudge", &cfg.fudge);
    bindc(classical->add_option("--p-defect", cfg.p_defect,
                                "defect probability per merging point"),
          "p_defect", &cfg.p_defect);
    bindc(classical->add_option("--volume", cfg.volume, "system volume V_d"),
          "volume", &cfg.volume);
  }

  CLI::App* oracle = app.add_subcommand(
      "oracle-compare", "exact diagonalization vs free-fermion pipeline (N <= 12)");
  add_common(oracle);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (!config_path.empty()) {
      for (const auto& [key, value] : kzldt::cli::load_config_file(config_path)) {
        bool given_on_cli = false;
        for (const Binding& b : bindings)
          if (b.key == key && b.opt->count() > 0) given_on_cli = true;
        if (given_on_cli) continue;
        bool known = false;
        for (const Binding& b : bindings) {
          if (b.key != key) continue;
          if (!known) b.set(value);
          known = true;
        }
        if (!known)
          throw std::domain_error("unknown config key: " + key);
      }
    }
    if (cfg.out.empty()) throw std::domain_error("--out is required");

    if (spectrum->parsed()) kzldt::cli::run_spectrum(cfg);
    if (scaling->parsed()) kzldt::cli::run_scaling(cfg);
    if (rate->parsed()) kzldt::cli::run_rate_function(cfg);
    if (classical->parsed()) kzldt::cli::run_classical(cfg);
    if (oracle->parsed()) kzldt::cli::run_oracle_compare(cfg);
    return 0;
  } catch (const kzldt::resource_error& e) {
    std::fprintf(stderr, "resource error: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}
