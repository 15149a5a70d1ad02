#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "ell/error.hpp"
#include "ell/experiment.hpp"
#include "ell/wkb.hpp"

namespace ell {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::HartreeRun: return "hartree-run";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Bench: return "bench";
    case ExperimentKind::EulerTest: return "euler-test";
    case ExperimentKind::FnMc: return "fn-mc";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::HartreeRun, ExperimentKind::Sweep, ExperimentKind::Bench,
                 ExperimentKind::EulerTest, ExperimentKind::FnMc})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::Config, "unknown experiment '" + std::string(s) + "'");
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Config, what); }

void check_keys(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) fail(where + " must be a mapping");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) fail("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const YAML::Node& node, const char* key, const std::string& where, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    fail("bad value for " + where + "." + key);
  }
}

template <class T>
std::vector<T> get_list(const YAML::Node& node, const char* key, const std::string& where, std::vector<T> fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  if (!v.IsSequence()) fail(where + "." + key + " must be a list");
  try {
    return v.as<std::vector<T>>();
  } catch (const YAML::Exception&) {
    fail("bad list for " + where + "." + key);
  }
}

PhysicalParams parse_params(const YAML::Node& n, const std::string& where) {
  check_keys(n, where, {"hbar", "eps"});
  PhysicalParams p;
  p.hbar = get<double>(n, "hbar", where, p.hbar);
  p.eps = get<double>(n, "eps", where, p.eps);
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(std::string("malformed configuration: ") + e.what());
  }
  if (!root || !root.IsMap()) fail("configuration must be a mapping");
  check_keys(root, "configuration",
             {"experiment", "seed", "output", "grid", "flow", "params", "wkb", "time", "gronwall", "sweep", "bench",
              "fn_mc"});
  RunConfig c;
  c.source = text;
  if (!root["experiment"]) fail("missing 'experiment'");
  c.kind = parse_experiment_kind(root["experiment"].as<std::string>());
  c.seed = get<std::uint64_t>(root, "seed", "configuration", c.seed);
  c.output = get<std::string>(root, "output", "configuration", c.output);

  if (const auto g = root["grid"]) {
    check_keys(g, "grid", {"d", "n"});
    c.d = get<int>(g, "d", "grid", c.d);
    c.n = get<int>(g, "n", "grid", c.n);
  }
  if (const auto f = root["flow"]) {
    if (f.IsScalar()) {
      c.flow.named = parse_named_flow(f.as<std::string>());
    } else {
      check_keys(f, "flow", {"name", "vorticity_file", "random_modes"});
      if (f["name"]) c.flow.named = parse_named_flow(f["name"].as<std::string>());
      c.flow.vorticity_file = get<std::string>(f, "vorticity_file", "flow", "");
      c.flow.random_modes = get<int>(f, "random_modes", "flow", 0);
    }
  }
  if (const auto p = root["params"]) c.params = parse_params(p, "params");
  if (const auto w = root["wkb"]) {
    check_keys(w, "wkb", {"packets_per_axis", "sigma"});
    c.wkb.packets_per_axis = get<int>(w, "packets_per_axis", "wkb", c.wkb.packets_per_axis);
    if (w["sigma"]) {
      const auto s = w["sigma"].as<std::string>();
      if (s != "sqrt-hbar") c.wkb.sigma = get<double>(w, "sigma", "wkb", 0.0);
    }
  }
  if (const auto t = root["time"]) {
    check_keys(t, "time", {"T", "dt_cap", "report_every", "dump_every"});
    c.time.T = get<double>(t, "T", "time", c.time.T);
    c.time.dt_cap = get<double>(t, "dt_cap", "time", c.time.dt_cap);
    c.time.report_every = get<int>(t, "report_every", "time", c.time.report_every);
    c.time.dump_every = get<int>(t, "dump_every", "time", c.time.dump_every);
  }
  if (const auto g = root["gronwall"]) {
    check_keys(g, "gronwall", {"c_d", "c_da"});
    c.gronwall.c_d = get<double>(g, "c_d", "gronwall", c.gronwall.c_d);
    c.gronwall.c_da = get<double>(g, "c_da", "gronwall", c.gronwall.c_da);
  }
  if (const auto s = root["sweep"]) {
    check_keys(s, "sweep", {"hbar", "eps", "order", "calibration", "scaling_N"});
    c.sweep.hbar = get_list<double>(s, "hbar", "sweep", {});
    c.sweep.eps = get_list<double>(s, "eps", "sweep", {});
    const auto order = get<std::string>(s, "order", "sweep", "eps-outer");
    if (order != "eps-outer" && order != "hbar-outer") fail("sweep.order must be eps-outer or hbar-outer");
    c.sweep.eps_outer = order == "eps-outer";
    if (s["calibration"]) c.sweep.calibration = parse_params(s["calibration"], "sweep.calibration");
    c.sweep.scaling_N = get<double>(s, "scaling_N", "sweep", c.sweep.scaling_N);
  }
  if (const auto b = root["bench"]) {
    check_keys(b, "bench", {"N", "seeds", "seed_count", "kinds", "n", "v_flow", "mu_eps"});
    c.bench.N = get_list<std::size_t>(b, "N", "bench", c.bench.N);
    c.bench.seeds = get_list<std::uint64_t>(b, "seeds", "bench", {});
    if (b["seed_count"]) {
      const int count = get<int>(b, "seed_count", "bench", 0);
      if (count < 0) fail("bench.seed_count must be >= 0");
      c.bench.seeds.clear();
      for (int i = 0; i < count; ++i) c.bench.seeds.push_back(c.seed * 1000003ULL + std::uint64_t(i));
    }
    c.bench.kinds = get_list<std::string>(b, "kinds", "bench", c.bench.kinds);
    c.bench.n = get<int>(b, "n", "bench", c.bench.n);
    if (b["v_flow"]) c.bench.v_flow = parse_named_flow(b["v_flow"].as<std::string>());
    c.bench.mu_eps = get<double>(b, "mu_eps", "bench", c.bench.mu_eps);
  }
  if (const auto f = root["fn_mc"]) {
    check_keys(f, "fn_mc", {"N", "S", "n", "densities"});
    c.fnmc.N = get<std::size_t>(f, "N", "fn_mc", c.fnmc.N);
    c.fnmc.S = get<std::size_t>(f, "S", "fn_mc", c.fnmc.S);
    c.fnmc.n = get<int>(f, "n", "fn_mc", c.fnmc.n);
    if (const auto ds = f["densities"]) {
      if (!ds.IsSequence()) fail("fn_mc.densities must be a list");
      for (const auto& d : ds) {
        check_keys(d, "fn_mc.densities[]", {"amplitude", "mode"});
        DensitySpec spec;
        spec.amplitude = get<double>(d, "amplitude", "fn_mc.densities[]", 0.0);
        spec.mode = get_list<int>(d, "mode", "fn_mc.densities[]", spec.mode);
        c.fnmc.densities.push_back(spec);
      }
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const RunConfig& c) {
  if (c.d != 2 && c.d != 3) fail("grid.d must be 2 or 3");
  if (c.n != 0) GridSpec(c.d, c.n);
  const bool needs_flow = c.kind == ExperimentKind::HartreeRun || c.kind == ExperimentKind::Sweep ||
                          c.kind == ExperimentKind::EulerTest;
  if (needs_flow) {
    const int sources = int(c.flow.named.has_value()) + int(!c.flow.vorticity_file.empty()) +
                        int(c.flow.random_modes > 0);
    if (sources != 1) fail("flow needs exactly one of name, vorticity_file, random_modes");
    if (c.flow.named && flow_dimension(*c.flow.named) != c.d) fail("flow dimension does not match grid.d");
    if (!c.flow.named && c.d != 2) fail("only named flows are available in three dimensions");
    if (c.flow.random_modes > 0 && c.kind != ExperimentKind::EulerTest)
      fail("random_modes flows are only for euler-test");
    if (!c.flow.vorticity_file.empty() && !std::filesystem::exists(c.flow.vorticity_file))
      fail("vorticity file not found: " + c.flow.vorticity_file);
  }
  if (!(c.time.T >= 0.0) || !(c.time.dt_cap > 0.0)) fail("time.T must be >= 0 and time.dt_cap > 0");
  if (c.time.report_every < 1 || c.time.dump_every < 0) fail("time.report_every must be >= 1");
  if (!(c.gronwall.c_d >= 0.0) || !(c.gronwall.c_da >= 0.0)) fail("gronwall constants must be >= 0");
  if (c.wkb.packets_per_axis < 1) fail("wkb.packets_per_axis must be >= 1");
  if (c.wkb.sigma && !(*c.wkb.sigma > 0.0 && *c.wkb.sigma <= 0.25)) fail("wkb.sigma must lie in (0, 1/4]");
  switch (c.kind) {
    case ExperimentKind::HartreeRun:
      c.params.validate();
      break;
    case ExperimentKind::Sweep: {
      if (c.sweep.hbar.empty() || c.sweep.eps.empty()) throw Error(ErrorKind::EmptyPlan, "sweep lists are empty");
      if (c.sweep.hbar.size() < 2 && c.sweep.eps.size() < 2) fail("a sweep needs two values of some parameter");
      for (double h : c.sweep.hbar) PhysicalParams{h, 1.0}.validate();
      for (double e : c.sweep.eps) PhysicalParams{1.0, e}.validate();
      if (c.sweep.calibration) c.sweep.calibration->validate();
      if (!(c.sweep.scaling_N >= 2.0)) fail("sweep.scaling_N must be >= 2");
      break;
    }
    case ExperimentKind::Bench: {
      if (c.bench.seeds.empty()) throw Error(ErrorKind::EmptyPlan, "bench has no seeds");
      if (c.bench.N.empty()) throw Error(ErrorKind::EmptyPlan, "bench has no N values");
      for (auto N : c.bench.N)
        if (N < 2) fail("bench N values must be >= 2");
      for (const auto& k : c.bench.kinds)
        if (k != "commutator" && k != "coercivity" && k != "energy") fail("unknown bench kind '" + k + "'");
      if (flow_dimension(c.bench.v_flow) != c.d) fail("bench.v_flow dimension does not match grid.d");
      GridSpec(c.d, c.bench.n);
      break;
    }
    case ExperimentKind::EulerTest:
      if (c.d != 2) fail("euler-test is two dimensional");
      break;
    case ExperimentKind::FnMc:
      if (c.fnmc.densities.empty()) throw Error(ErrorKind::EmptyPlan, "fn_mc has no densities");
      if (c.fnmc.S < 100) fail("fn_mc.S must be >= 100");
      if (c.fnmc.N < 2) fail("fn_mc.N must be >= 2");
      GridSpec(c.d, c.fnmc.n);
      for (const auto& d : c.fnmc.densities) {
        if (!(std::abs(d.amplitude) < 1.0)) fail("density amplitude must be below 1 in magnitude");
        if (int(d.mode.size()) != c.d) fail("density mode needs d entries");
      }
      break;
  }
}

std::string run_id(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (unsigned char ch : c.source) feed(ch);
  for (int i = 0; i < 8; ++i) feed((unsigned char)(c.seed >> (8 * i)));
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str().substr(0, 12);
}

int choose_grid_size(double hbar, double sigma, double u_inf) {
  const double kmax = (u_inf + 4.0 * hbar / sigma) / hbar;
  int n = 32;
  while (2.0 * std::numbers::pi * (n / 3) < kmax || sigma < 2.0 / n) n *= 2;
  return n;
}

}  // namespace ell
