#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kzldt/cli.hpp"
#include "kzldt/errors.hpp"

using namespace kzldt;

namespace {

namespace fs = std::filesystem;

struct Csv {
  std::vector<std::pair<std::string, std::string>> manifest;
  std::string header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Csv csv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      csv.manifest.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (csv.header.empty()) {
      csv.header = line;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

std::string manifest_value(const Csv& csv, const std::string& key) {
  for (const auto& [k, v] : csv.manifest)
    if (k == key) return v;
  return {};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("value formatting is 17 significant digits") {
  CHECK(cli::format_value(1.0) == "1");
  CHECK(cli::format_value(0.1) == "0.10000000000000001");
  CHECK(cli::format_value(2.612375348685488) == "2.6123753486854882");
}

TEST_CASE("scalar tau_q accessor rejects sweeps") {
  cli::RunConfig cfg;
  cfg.tau_q_list = {1.0, 2.0};
  CHECK_THROWS_AS(cfg.tau_q(), std::domain_error);
  cfg.tau_q_list = {3.0};
  CHECK(cfg.tau_q() == 3.0);
}

TEST_CASE("config file parsing") {
  const fs::path path = temp_file("kzldt_cfg_test.cfg");
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "n_sites = 64\n"
        << "tau_q=5,10  # inline comment\n"
        << "\n"
        << "bad line without equals\n"
        << "tol = 1e-9\n";
  }
  const auto entries = cli::load_config_file(path.string());
  REQUIRE(entries.size() == 3);
  CHECK(entries[0] == std::pair<std::string, std::string>{"n_sites", "64"});
  CHECK(entries[1] == std::pair<std::string, std::string>{"tau_q", "5,10"});
  CHECK(entries[2] == std::pair<std::string, std::string>{"tol", "1e-9"});
  CHECK_THROWS_AS(cli::load_config_file("/nonexistent/path.cfg"),
                  std::domain_error);
}

TEST_CASE("spectrum command output") {
  cli::RunConfig cfg;
  cfg.n_sites = 64;
  cfg.tau_q_list = {2.0};
  cfg.tol = 1e-9;
  cfg.out = temp_file("kzldt_spectrum.csv").string();
  cli::run_spectrum(cfg);

  const Csv csv = read_csv(cfg.out);
  CHECK(csv.header == "k,p_k_numeric,p_k_lz");
  REQUIRE(csv.rows.size() == 32);
  // p_k decreasing over the small-k range.
  for (std::size_t i = 1; i < 8; ++i)
    CHECK(csv.rows[i][1] <= csv.rows[i - 1][1]);
  CHECK(manifest_value(csv, "command") == "spectrum");

  // Determinism: byte-identical on a second run.
  const std::string first = slurp(cfg.out);
  cli::run_spectrum(cfg);
  CHECK(first == slurp(cfg.out));

  // alpha adds the renormalized column.
  cfg.alpha = 3.0;
  cli::run_spectrum(cfg);
  const Csv lr = read_csv(cfg.out);
  CHECK(lr.header == "k,p_k_numeric,p_k_lz,p_k_lz_renorm");
  REQUIRE(lr.rows.front().size() == 4);
  CHECK(manifest_value(lr, "xi") != "");
}

TEST_CASE("scaling command output and slope fit") {
  cli::RunConfig cfg;
  cfg.n_sites = 128;
  cfg.tau_q_list = {4.0, 8.0, 16.0, 32.0};
  cfg.tol = 1e-8;
  cfg.out = temp_file("kzldt_scaling.csv").string();
  cli::run_scaling(cfg);

  const Csv csv = read_csv(cfg.out);
  CHECK(csv.header ==
        "tau_q,mean_density,kappa1,kappa2,kappa3,ratio21,ratio31,ratio32");
  REQUIRE(csv.rows.size() == 4);
  const double slope = std::stod(manifest_value(csv, "loglog_slope"));
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
  CHECK(manifest_value(csv, "kzm_window_breakdown_at") == "none");

  cfg.tau_q_list = {4.0, 8.0};
  CHECK_THROWS_AS(cli::run_scaling(cfg), std::domain_error);
}

TEST_CASE("rate-function command output") {
  cli::RunConfig cfg;
  cfg.n_sites = 128;
  cfg.tau_q_list = {8.0};
  cfg.tol = 1e-8;
  cfg.rho_min = 0.0;
  cfg.rho_max = 2.5;
  cfg.rho_steps = 251;
  cfg.out = temp_file("kzldt_rate.csv").string();
  cfg.logp_out = temp_file("kzldt_rate_logp.csv").string();
  cli::run_rate_function(cfg);

  const Csv csv = read_csv(cfg.out);
  CHECK(csv.header == "rho_bar,I_bar_analytic,I_bar_numeric,I_bar_clt");
  REQUIRE(csv.rows.size() == 251);
  // rho_bar = 0 and rho_bar = 1 rows carry the analytic anchors.
  CHECK(csv.rows[0][1] == doctest::Approx(2.612375349).epsilon(1e-6));
  CHECK(std::abs(csv.rows[100][1]) < 1e-8);

  const Csv logp = read_csv(cfg.logp_out);
  CHECK(logp.header == "rho_bar,I_bar_direct");
  CHECK(logp.rows.size() > 3);
  for (const auto& row : logp.rows) CHECK(row[1] > 0.0);
}

TEST_CASE("classical command output") {
  cli::RunConfig cfg;
  cfg.tau_q_list = {4.0};
  cfg.p_defect = 0.1;
  cfg.volume = 100.0;
  cfg.rho_min = 0.2;
  cfg.rho_max = 3.0;
  cfg.rho_steps = 29;
  cfg.out = temp_file("kzldt_classical.csv").string();
  cli::run_classical(cfg);

  const Csv csv = read_csv(cfg.out);
  CHECK(csv.header == "rho_bar,I_classical,tail_bound_log,exact_binomial_tail_log");
  REQUIRE(csv.rows.size() == 29);
  CHECK(manifest_value(csv, "scaling_exponent") == "0.5");
  CHECK(manifest_value(csv, "n_events") == "50");
  for (const auto& row : csv.rows) {
    CHECK(row[1] >= 0.0);
    // Bound dominance: the exact tail log never exceeds the bound.
    CHECK(row[3] <= row[2] + 1e-12);
  }
}

TEST_CASE("oracle-compare command output") {
  cli::RunConfig cfg;
  cfg.n_sites = 4;
  cfg.tau_q_list = {1.0};
  cfg.tol = 1e-11;
  cfg.out = temp_file("kzldt_oracle.csv").string();
  cli::run_oracle_compare(cfg);

  const Csv csv = read_csv(cfg.out);
  CHECK(csv.header == "n,P_exact_ed,P_pipeline,abs_diff");
  REQUIRE(csv.rows.size() == 3);  // N/2 + 1
  for (const auto& row : csv.rows) CHECK(row[3] < 1e-6);

  cfg.n_sites = 14;
  CHECK_THROWS_AS(cli::run_oracle_compare(cfg), resource_error);
}

TEST_CASE("adiabatic breakdown is flagged in the manifest") {
  // Tiny chain driven absurdly slowly: every mode goes adiabatic and the
  // density falls off far steeper than the KZM power law.
  cli::RunConfig cfg;
  cfg.n_sites = 8;
  cfg.tau_q_list = {50.0, 100.0, 200.0};
  cfg.tol = 1e-9;
  cfg.out = temp_file("kzldt_saturation.csv").string();
  cli::run_scaling(cfg);
  const Csv csv = read_csv(cfg.out);
  CHECK(manifest_value(csv, "kzm_window_breakdown_at") != "none");
}

}  // TEST_SUITE
