// Batch runner: ell <subcommand> --config <path> [--out <dir>] [--seed <u64>] [--threads <k>]

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

#include "ell/error.hpp"
#include "ell/experiment.hpp"
#include "ell/parallel.hpp"

namespace {

int error_exit(const ell::Error& e) {
  nlohmann::ordered_json j{{"error", std::string(ell::to_string(e.kind()))}, {"message", e.what()}};
  std::cerr << j.dump() << '\n';
  if (e.kind() == ell::ErrorKind::Config) return 2;
  return ell::is_numerical_guard(e.kind()) ? 3 : 2;
}

void print_summary(const ell::RunConfig& c, const std::filesystem::path& out) {
  std::cout << to_string(c.kind) << " run " << ell::run_id(c) << " -> " << out.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasineutral mean-field experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  for (const char* name : {"hartree-run", "sweep", "bench", "euler-test", "fn-mc"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "YAML experiment file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (defaults to the config's output entry)");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    ell::RunConfig c = ell::load_config(config_path);
    if (ell::parse_experiment_kind(sub) != c.kind)
      throw ell::Error(ell::ErrorKind::Config, "config declares experiment '" + std::string(to_string(c.kind)) +
                                                   "' but the subcommand is '" + sub + "'");
    if (seed) c.seed = *seed;
    ell::set_thread_count(threads);
    const std::filesystem::path out = out_dir.empty() ? std::filesystem::path(c.output) : std::filesystem::path(out_dir);
    ell::validate_config(c);

    switch (c.kind) {
      case ell::ExperimentKind::HartreeRun: {
        const auto r = ell::run_hartree(c, out);
        print_summary(c, out);
        std::cout << "n=" << r.n << " rank=" << r.rank << " dt=" << r.dt.dt << " steps=" << r.dt.steps
                  << " max_total=" << r.max_total << " margin_min=" << r.gronwall_margin_min << '\n';
        break;
      }
      case ell::ExperimentKind::Sweep: {
        const auto r = ell::run_sweep(c, out);
        print_summary(c, out);
        std::cout << "c_d=" << r.constants.c_d << " c_da=" << r.constants.c_da
                  << " complete=" << (r.complete ? "yes" : "no") << '\n';
        if (!r.complete) return 3;
        break;
      }
      case ell::ExperimentKind::Bench: {
        const auto r = ell::run_bench(c, out);
        print_summary(c, out);
        std::cout << r.reports.size() << " reports, " << r.errors << " errors\n";
        break;
      }
      case ell::ExperimentKind::EulerTest: {
        const auto r = ell::run_euler_test(c, out);
        print_summary(c, out);
        std::cout << "steps=" << r.steps << " energy_drift=" << r.energy_drift
                  << " enstrophy_drift=" << r.enstrophy_drift << " omega_change=" << r.omega_change << '\n';
        break;
      }
      case ell::ExperimentKind::FnMc: {
        const auto rows = ell::run_fn_mc(c, out);
        print_summary(c, out);
        for (const auto& r : rows)
          std::cout << "a=" << r.amplitude << " closed=" << r.closed_form << " mc=" << r.mc.mean << " +- "
                    << r.mc.std_error << '\n';
        break;
      }
    }
  } catch (const ell::Error& e) {
    return error_exit(e);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::ordered_json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
