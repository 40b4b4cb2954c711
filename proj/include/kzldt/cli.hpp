#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kzldt::cli {

/// Resolved parameters of one CLI invocation.  Every run echoes the full
/// set into the `#`-prefixed manifest block at the top of the CSV, so a
/// file is reproducible from its own header.
struct RunConfig {
  int n_sites = 1000;
  std::vector<double> tau_q_list = {20.0};
  std::optional<double> alpha;
  double tol = 1e-10;

  double theta_min = -10.0;
  double theta_max = 4.0;
  int theta_steps = 561;

  double rho_min = 0.0;
  double rho_max = 2.5;
  int rho_steps = 251;

  std::string out;
  std::string logp_out;  // optional direct -(1/N) ln P export (rate-function)

  // Fit window for the scaling command (tau_q bounds; 0 = unbounded).
  double fit_min_tau = 0.0;
  double fit_max_tau = 0.0;

  // Classical-scenario scaling parameters.
  double nu = 1.0;
  double z = 1.0;
  int dim = 1;
  double xi0 = 1.0;
  double tau0 = 1.0;
  double fudge = 1.0;
  double p_defect = 0.1;
  double volume = 100.0;

  double tau_q() const;  // scalar commands reject lists
};

using Manifest = std::vector<std::pair<std::string, std::string>>;

/// 17-significant-digit decimal formatting used for every CSV value.
std::string format_value(double value);

/// Writes `# key=value` manifest lines, the header row, then the data rows.
void write_csv(const std::string& path, const Manifest& manifest,
               const std::string& header,
               const std::vector<std::vector<double>>& rows);

/// Key=value config file (lines `key = value`, `#` comments).
std::vector<std::pair<std::string, std::string>> load_config_file(
    const std::string& path);

// Subcommand drivers.  Each writes its CSV (with embedded manifest) and
// throws on failure; exit-code mapping lives in the binary.
void run_spectrum(const RunConfig& config);
void run_scaling(const RunConfig& config);
void run_rate_function(const RunConfig& config);
void run_classical(const RunConfig& config);
void run_oracle_compare(const RunConfig& config);

}  // namespace kzldt::cli
