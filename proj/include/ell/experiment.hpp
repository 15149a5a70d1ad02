#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ell/benches.hpp"
#include "ell/euler.hpp"
#include "ell/hartree.hpp"
#include "ell/modulated.hpp"

namespace ell {

enum class ExperimentKind { HartreeRun, Sweep, Bench, EulerTest, FnMc };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

struct FlowSpec {
  std::optional<NamedFlow> named;
  std::string vorticity_file;  // used when `named` is empty
  int random_modes = 0;        // euler-test only: random band-limited vorticity
};

struct TimeSpec {
  double T = 0.5;
  double dt_cap = 1e-3;
  int report_every = 10;  // steps between report rows
  int dump_every = 0;     // steps between density dumps, 0 = off
};

struct WkbSpec {
  int packets_per_axis = 16;
  std::optional<double> sigma;  // default sqrt(hbar)
};

struct SweepSpec {
  std::vector<double> hbar;
  std::vector<double> eps;
  bool eps_outer = true;
  std::optional<PhysicalParams> calibration;  // run first; fits the Gronwall constants
  double scaling_N = 1e6;
};

struct BenchSpec {
  std::vector<std::size_t> N{64, 256, 1024};
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> kinds{"commutator", "coercivity", "energy"};
  int n = 32;                  // grid for mu, v, phi
  NamedFlow v_flow = NamedFlow::Shear2d;
  double mu_eps = 0.0;         // mu = 1 + mu_eps^2 U of v_flow (0 = uniform)
};

struct DensitySpec {
  double amplitude = 0.0;  // rho = 1 + amplitude cos(2 pi k.x)
  std::vector<int> mode{1, 0};
};

struct FnMcSpec {
  std::size_t N = 64;
  std::size_t S = 10000;
  std::vector<DensitySpec> densities;
  int n = 32;
};

struct RunConfig {
  ExperimentKind kind = ExperimentKind::HartreeRun;
  int d = 2;
  int n = 0;  // 0 = choose from hbar (hartree) or 128 (euler)
  FlowSpec flow;
  PhysicalParams params;
  WkbSpec wkb;
  TimeSpec time;
  SweepSpec sweep;
  BenchSpec bench;
  FnMcSpec fnmc;
  GronwallConstants gronwall;
  std::uint64_t seed = 1;
  std::string output = "out";
  std::string source;  // canonical text used for the run id
};

/// Parses YAML. Throws Error(Config) on malformed or missing entries.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::filesystem::path& path);
/// Guard checks that do not need any heavy computation. Throws.
void validate_config(const RunConfig& c);

/// Short hex digest of the config text and seed.
std::string run_id(const RunConfig& c);

/// Smallest power-of-two n >= 32 resolving every packet of a mixture.
int choose_grid_size(double hbar, double sigma, double u_inf);

struct DtRule {
  double cfl = 0.0;
  double phase = 0.0;
  double cap = 0.0;
  double dt = 0.0;
  int steps = 0;
};

struct HartreeRunResult {
  std::vector<EnergyReport> reports;
  std::vector<FlowNorms> history;
  DtRule dt;
  int n = 0;
  std::size_t rank = 0;
  double max_total = 0.0;
  double final_total = 0.0;
  double gronwall_margin_min = 0.0;
  double wall_seconds = 0.0;
};

/// Runs one Hartree trajectory; artifacts go to `dir` when it is non-empty.
HartreeRunResult run_hartree(const RunConfig& c, const std::filesystem::path& dir);

/// Fit of the two Gronwall constants on a calibration trajectory.
GronwallConstants fit_gronwall_constants(const HartreeRunResult& r, double eps);

struct SweepRow {
  double hbar = 0.0;
  double eps = 0.0;
  double sup_total = 0.0;
  double dev_rho_T = 0.0;
  double dev_J_T = 0.0;
  double total_T = 0.0;
  double scaling = 0.0;
  double gronwall_margin_min = 0.0;
  bool ok = false;
  std::string error;
};

struct SlopeFit {
  std::string quantity;
  std::string variable;
  double fixed_value = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t points = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SlopeFit> slopes;
  GronwallConstants constants;
  double dev_j_constant = 0.0;  // dev_J(T)^2 / G(T) on the calibration run
  bool complete = true;
};

SweepResult run_sweep(const RunConfig& c, const std::filesystem::path& dir);

/// Least-squares line through (log x, log y).
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct BenchSummary {
  std::vector<InequalityBenchReport> reports;
  std::size_t errors = 0;
};
BenchSummary run_bench(const RunConfig& c, const std::filesystem::path& dir);

struct EulerTestResult {
  double energy_drift = 0.0;
  double enstrophy_drift = 0.0;
  double omega_change = 0.0;  // sup_t |omega(t) - omega(0)|_inf
  int steps = 0;
};
EulerTestResult run_euler_test(const RunConfig& c, const std::filesystem::path& dir);

struct FnMcRow {
  double amplitude = 0.0;
  double closed_form = 0.0;
  McEstimate mc;
};
std::vector<FnMcRow> run_fn_mc(const RunConfig& c, const std::filesystem::path& dir);

}  // namespace ell
