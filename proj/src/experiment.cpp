#include "ell/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ell/coulomb.hpp"
#include "ell/error.hpp"
#include "ell/field_io.hpp"
#include "ell/parallel.hpp"
#include "ell/sampling.hpp"
#include "ell/simd.hpp"
#include "ell/spectral.hpp"
#include "ell/wkb.hpp"

namespace ell {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPhaseSafety = 0.5;
constexpr double kCflTarget = 0.5;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Label used for per-point directories.
std::string point_label(double hbar, double eps) {
  std::ostringstream os;
  os << "hbar_" << std::setprecision(6) << hbar << "_eps_" << eps;
  return os.str();
}

struct FlowSetup {
  VectorField u;
  std::optional<FlowState> evolving;  // set for vorticity-file flows
  double u_inf = 0.0;
};

FlowSetup load_flow(const RunConfig& c, const GridSpec& g) {
  FlowSetup f;
  if (c.flow.named) {
    f.u = named_flow_velocity(*c.flow.named, g);
  } else {
    RealField omega = read_real_field(c.flow.vorticity_file);
    if (!(omega.grid == g))
      throw Error(ErrorKind::GridMismatch, "vorticity file grid does not match the run grid (n=" +
                                               std::to_string(g.n()) + ")");
    omega = add_scalar(omega, -mean(omega));
    f.evolving = FlowState{omega, 0.0};
    f.u = velocity_from_vorticity(omega);
  }
  f.u_inf = max_norm(f.u);
  return f;
}

int file_grid_n(const RunConfig& c) {
  if (c.flow.named) return 0;
  return read_real_field(c.flow.vorticity_file).grid.n();
}

double sigma_of(const RunConfig& c, const PhysicalParams& p) { return c.wkb.sigma.value_or(std::sqrt(p.hbar)); }

// Resolves the grid for one Hartree run and applies every guard that does not
// need the state itself.
GridSpec plan_grid(const RunConfig& c, const PhysicalParams& p) {
  p.validate();
  const double sigma = sigma_of(c, p);
  if (!(sigma > 0.0 && sigma <= 0.25)) throw Error(ErrorKind::InvalidConfiguration, "packet width must lie in (0, 1/4]");
  double u_inf = 0.0;
  int n = c.n;
  if (c.flow.named) {
    u_inf = max_norm(named_flow_velocity(*c.flow.named, GridSpec(c.d, 32)));
  } else {
    const int nf = file_grid_n(c);
    if (n != 0 && n != nf) throw Error(ErrorKind::Config, "grid.n differs from the vorticity file grid");
    n = nf;
    u_inf = max_norm(velocity_from_vorticity(read_real_field(c.flow.vorticity_file)));
  }
  if (n == 0) n = choose_grid_size(p.hbar, sigma, u_inf);
  const GridSpec g(c.d, n);
  PacketSpec worst;
  worst.momentum = {u_inf, 0.0, 0.0};
  worst.sigma = sigma;
  require_packet_resolved(worst, g, p);
  return g;
}

FlowNorms norms_of(const FlowSnapshot& s) { return {s.t, s.gradu_inf, s.c11}; }

json dt_json(const DtRule& r) {
  return json{{"cfl", r.cfl}, {"phase", r.phase}, {"cap", r.cap}, {"dt", r.dt}, {"steps", r.steps}};
}

std::string flow_name(const RunConfig& c) {
  if (c.flow.named) return std::string(to_string(*c.flow.named));
  if (!c.flow.vorticity_file.empty()) return "file:" + c.flow.vorticity_file;
  return "random-" + std::to_string(c.flow.random_modes);
}

HartreeRunResult run_hartree_planned(const RunConfig& c, const PhysicalParams& p, const GridSpec& g,
                                     const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  FlowSetup flow = load_flow(c, g);
  FlowSnapshot snap = flow.evolving ? flow_snapshot(*flow.evolving) : flow_snapshot(flow.u, 0.0);
  const RealField rho0 = default_rho0(snap.corrector, p.eps);
  MixtureOptions opt;
  opt.packets_per_axis = c.wkb.packets_per_axis;
  opt.sigma = sigma_of(c, p);
  MixedState state = monokinetic_mixture(flow.u, rho0, p, opt);

  HartreeRunResult res;
  res.n = g.n();
  res.rank = state.rank();
  DtRule& r = res.dt;
  r.cap = c.time.dt_cap;
  r.cfl = flow.u_inf > 0.0 ? kCflTarget * g.h() / flow.u_inf : std::numeric_limits<double>::infinity();
  r.phase = kPhaseSafety * phase_dt_limit(density(state), p);
  const double bound = std::min({r.cfl, r.phase, r.cap});
  r.steps = c.time.T > 0.0 ? int(std::ceil(c.time.T / bound - 1e-9)) : 0;
  r.dt = r.steps > 0 ? c.time.T / r.steps : bound;

  if (!dir.empty()) ensure_dir(dir);
  std::ofstream csv;
  if (!dir.empty()) {
    csv = open_out(dir / "energy.csv");
    csv << "t,kinetic,potential,total,gronwall_rhs,dev_rho,dev_J\n";
  }

  HartreePropagator prop(g, p, r.dt);
  double g0 = 0.0;
  auto report = [&](int step) {
    const double t = step * r.dt;
    snap.t = t;
    EnergyReport e = modulated_energy(state, snap, p);
    e.t = t;
    res.history.push_back(norms_of(snap));
    if (step == 0) g0 = e.total;
    e.gronwall_rhs = gronwall_rhs(g0, res.history, p.eps, t, c.gronwall);
    if (csv.is_open())
      csv << fmt(e.t) << ',' << fmt(e.kinetic) << ',' << fmt(e.potential) << ',' << fmt(e.total) << ','
          << fmt(e.gronwall_rhs) << ',' << fmt(e.dev_rho) << ',' << fmt(e.dev_J) << '\n';
    res.reports.push_back(e);
  };
  auto dump = [&](int step) {
    if (dir.empty() || c.time.dump_every <= 0 || step % c.time.dump_every != 0) return;
    std::ostringstream name;
    name << "density_" << std::setw(6) << std::setfill('0') << step << ".ell";
    write_field(dir / name.str(), density(state));
  };

  report(0);
  dump(0);
  for (int step = 1; step <= r.steps; ++step) {
    prop.step(state);
    if (flow.evolving) {
      *flow.evolving = euler_step(*flow.evolving, r.dt);
      flow.u = velocity_from_vorticity(flow.evolving->omega);
    }
    if (step % c.time.report_every == 0 || step == r.steps) {
      if (flow.evolving) snap = flow_snapshot(*flow.evolving);
      report(step);
    }
    dump(step);
  }

  res.max_total = 0.0;
  res.gronwall_margin_min = std::numeric_limits<double>::infinity();
  for (const auto& e : res.reports) {
    res.max_total = std::max(res.max_total, e.total);
    res.gronwall_margin_min = std::min(res.gronwall_margin_min, e.gronwall_rhs - e.total);
  }
  res.final_total = res.reports.back().total;
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!dir.empty()) {
    json s;
    s["run_id"] = run_id(c);
    s["experiment"] = "hartree-run";
    s["flow"] = flow_name(c);
    s["d"] = g.dim();
    s["n"] = g.n();
    s["hbar"] = p.hbar;
    s["eps"] = p.eps;
    s["sigma"] = sigma_of(c, p);
    s["packets_per_axis"] = c.wkb.packets_per_axis;
    s["rank"] = res.rank;
    s["T"] = c.time.T;
    s["dt_rule"] = dt_json(r);
    s["gronwall_constants"] = {{"c_d", c.gronwall.c_d}, {"c_da", c.gronwall.c_da}};
    s["initial_total"] = res.reports.front().total;
    s["final_total"] = res.final_total;
    s["max_total"] = res.max_total;
    s["gronwall_margin_min"] = res.gronwall_margin_min;
    s["reports"] = res.reports.size();
    s["simd"] = simd::active().name;
    s["threads"] = thread_count();
    s["wall_seconds"] = res.wall_seconds;
    write_json(dir / "summary.json", s);
  }
  return res;
}

double scaling_diagnostic(double N, int d, double eps) {
  const double log_term = d == 2 ? std::log(N) : 0.0;
  return (1.0 + log_term) / (eps * eps * std::pow(N, 2.0 / d));
}

RealField random_vorticity(const GridSpec& g, int K, std::uint64_t seed) {
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> normal;
  SpectralCoeffs c(g);
  const int n = g.n();
  for (int k2 = -K; k2 <= K; ++k2)
    for (int k1 = -K; k1 <= K; ++k1) {
      // one representative of each +-k pair
      if (k2 < 0 || (k2 == 0 && k1 <= 0)) continue;
      const double amp = 1.0 / (1.0 + double(k1 * k1 + k2 * k2));
      const cplx z(amp * normal(rng), amp * normal(rng));
      const std::size_t i = g.ravel({(k1 + n) % n, (k2 + n) % n, 0});
      const std::size_t j = g.ravel({(n - k1) % n, (n - k2) % n, 0});
      c[i] = z;
      c[j] = std::conj(z);
    }
  return inverse_real(c);
}

}  // namespace

HartreeRunResult run_hartree(const RunConfig& c, const fs::path& dir) {
  validate_config(c);
  const GridSpec g = plan_grid(c, c.params);
  return run_hartree_planned(c, c.params, g, dir);
}

GronwallConstants fit_gronwall_constants(const HartreeRunResult& r, double eps) {
  (void)eps;
  GronwallConstants k{0.0, 0.0};
  if (r.reports.empty()) throw Error(ErrorKind::EmptyHistory, "no reports to fit");
  const double g0 = r.reports.front().total;
  for (const auto& e : r.reports) {
    if (e.t <= 0.0 || e.total <= g0) continue;
    const double L = gronwall_rhs(1.0, r.history, 0.0, e.t, {1.0, 0.0});
    k.c_d = std::max(k.c_d, std::log(e.total / g0) / std::log(L));
  }
  return k;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit_loglog needs two points");
  SlopeFit f;
  f.points = x.size();
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "fit_loglog needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  if (x.size() == 2) {
    // the line through two points is exact
    f.slope = (ly[1] - ly[0]) / (lx[1] - lx[0]);
    f.intercept = ly[0] - f.slope * lx[0];
    f.residual = 0.0;
    return f;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(lx.size());
  my /= double(ly.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidArgument, "fit_loglog needs distinct abscissae");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (f.intercept + f.slope * lx[i]);
    rss += e * e;
  }
  f.residual = std::sqrt(rss);
  return f;
}

SweepResult run_sweep(const RunConfig& c, const fs::path& dir) {
  validate_config(c);
  struct Point {
    std::size_t ih, ie;
    PhysicalParams p;
    GridSpec g;
  };
  std::vector<Point> plan;
  auto add = [&](std::size_t ih, std::size_t ie) {
    const PhysicalParams p{c.sweep.hbar[ih], c.sweep.eps[ie]};
    plan.push_back({ih, ie, p, plan_grid(c, p)});
  };
  if (c.sweep.eps_outer) {
    for (std::size_t ie = 0; ie < c.sweep.eps.size(); ++ie)
      for (std::size_t ih = 0; ih < c.sweep.hbar.size(); ++ih) add(ih, ie);
  } else {
    for (std::size_t ih = 0; ih < c.sweep.hbar.size(); ++ih)
      for (std::size_t ie = 0; ie < c.sweep.eps.size(); ++ie) add(ih, ie);
  }
  const PhysicalParams cal = c.sweep.calibration.value_or(
      PhysicalParams{*std::max_element(c.sweep.hbar.begin(), c.sweep.hbar.end()),
                     *std::max_element(c.sweep.eps.begin(), c.sweep.eps.end())});
  const GridSpec cal_grid = plan_grid(c, cal);

  ensure_dir(dir);
  SweepResult out;
  const HartreeRunResult cal_run = run_hartree_planned(c, cal, cal_grid, dir / "calibration");
  out.constants = fit_gronwall_constants(cal_run, cal.eps);
  const auto& last = cal_run.reports.back();
  out.dev_j_constant = last.total > 0.0 ? last.dev_J * last.dev_J / last.total : 0.0;

  RunConfig frozen = c;
  frozen.gronwall = out.constants;
  std::vector<SweepRow> rows(plan.size());
  std::vector<std::string> errors(plan.size());
  parallel_for(plan.size(), [&](std::size_t i) {
    const Point& pt = plan[i];
    SweepRow& row = rows[i];
    row.hbar = pt.p.hbar;
    row.eps = pt.p.eps;
    row.scaling = scaling_diagnostic(c.sweep.scaling_N, c.d, pt.p.eps);
    try {
      const auto r = run_hartree_planned(frozen, pt.p, pt.g, dir / point_label(pt.p.hbar, pt.p.eps));
      row.sup_total = r.max_total;
      row.total_T = r.final_total;
      row.dev_rho_T = r.reports.back().dev_rho;
      row.dev_J_T = r.reports.back().dev_J;
      row.gronwall_margin_min = r.gronwall_margin_min;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  std::vector<std::size_t> order(plan.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(plan[a].ih, plan[a].ie) < std::tie(plan[b].ih, plan[b].ie);
  });
  for (auto i : order) {
    out.rows.push_back(rows[i]);
    if (!rows[i].ok) out.complete = false;
  }

  // slopes along each parameter with the other held fixed
  struct Q {
    const char* name;
    double SweepRow::*field;
  };
  const Q quantities[] = {{"sup_total", &SweepRow::sup_total},
                          {"dev_rho_T", &SweepRow::dev_rho_T},
                          {"dev_J_T", &SweepRow::dev_J_T}};
  auto slopes_along = [&](const char* variable, bool along_eps) {
    const auto& fixed = along_eps ? c.sweep.hbar : c.sweep.eps;
    for (double fv : fixed)
      for (const auto& q : quantities) {
        std::vector<double> xs, ys;
        for (const auto& row : out.rows) {
          if (!row.ok || (along_eps ? row.hbar : row.eps) != fv) continue;
          xs.push_back(along_eps ? row.eps : row.hbar);
          ys.push_back(row.*(q.field));
        }
        if (xs.size() < 2) continue;
        try {
          SlopeFit f = fit_loglog(xs, ys);
          f.quantity = q.name;
          f.variable = variable;
          f.fixed_value = fv;
          out.slopes.push_back(f);
        } catch (const Error&) {
        }
      }
  };
  slopes_along("eps", true);
  slopes_along("hbar", false);

  {
    auto csv = open_out(dir / "aggregate.csv");
    csv << "hbar,eps,sup_total,dev_rho_T,dev_J_T,total_T,scaling,gronwall_margin_min,ok\n";
    for (const auto& row : out.rows)
      csv << fmt(row.hbar) << ',' << fmt(row.eps) << ',' << fmt(row.sup_total) << ',' << fmt(row.dev_rho_T) << ','
          << fmt(row.dev_J_T) << ',' << fmt(row.total_T) << ',' << fmt(row.scaling) << ','
          << fmt(row.gronwall_margin_min) << ',' << (row.ok ? 1 : 0) << '\n';
  }
  {
    auto csv = open_out(dir / "slopes.csv");
    csv << "quantity,variable,fixed_value,slope,intercept,residual,points\n";
    for (const auto& f : out.slopes)
      csv << f.quantity << ',' << f.variable << ',' << fmt(f.fixed_value) << ',' << fmt(f.slope) << ','
          << fmt(f.intercept) << ',' << fmt(f.residual) << ',' << f.points << '\n';
  }
  json s;
  s["run_id"] = run_id(c);
  s["experiment"] = "sweep";
  s["flow"] = flow_name(c);
  s["calibration"] = {{"hbar", cal.hbar}, {"eps", cal.eps}};
  s["gronwall_constants"] = {{"c_d", out.constants.c_d}, {"c_da", out.constants.c_da}};
  s["dev_j_constant"] = out.dev_j_constant;
  s["complete"] = out.complete;
  json errs = json::array();
  for (const auto& row : out.rows)
    if (!row.ok) errs.push_back({{"hbar", row.hbar}, {"eps", row.eps}, {"error", row.error}});
  s["errors"] = errs;
  write_json(dir / "sweep.json", s);
  return out;
}

BenchSummary run_bench(const RunConfig& c, const fs::path& dir) {
  validate_config(c);
  const GridSpec g(c.d, c.bench.n);
  const VectorField v = named_flow_velocity(c.bench.v_flow, g);
  RealField mu(g, 1.0);
  if (c.bench.mu_eps > 0.0) {
    mu = add_scalar(c.bench.mu_eps * c.bench.mu_eps * corrector_field(v), 1.0);
    for (double x : mu.values)
      if (!(x > 0.0)) throw Error(ErrorKind::NegativeDensity, "bench mu is not positive; lower mu_eps");
  }
  require_probability_density(mu);
  const RealField phi = sample(g, [](double x, double, double) { return std::cos(2.0 * pi * x); });
  const EwaldKernel kernel = EwaldKernel::for_pairs(c.d);

  struct Item {
    std::size_t N;
    std::uint64_t seed;
  };
  std::vector<Item> items;
  for (auto N : c.bench.N)
    for (auto s : c.bench.seeds) items.push_back({N, s});

  ensure_dir(dir);
  std::vector<std::vector<InequalityBenchReport>> reports(items.size());
  std::vector<std::string> errors(items.size());
  parallel_for(items.size(), [&](std::size_t i) {
    try {
      const PointConfiguration pc = sample_configuration(mu, items[i].N, items[i].seed);
      for (const auto& k : c.bench.kinds) {
        if (k == "commutator")
          reports[i].push_back(commutator_bench(kernel, pc, v, mu, items[i].seed));
        else if (k == "coercivity")
          reports[i].push_back(coercivity_bench(kernel, pc, phi, mu, items[i].seed));
        else
          reports[i].push_back(energy_bench(kernel, pc, mu, items[i].seed));
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  BenchSummary sum;
  const std::string id = run_id(c);
  auto out = open_out(dir / "bench.jsonl");
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!errors[i].empty()) {
      ++sum.errors;
      out << json{{"N", items[i].N}, {"seed", items[i].seed}, {"error", errors[i]}, {"run_id", id}}.dump() << '\n';
      continue;
    }
    for (const auto& r : reports[i]) {
      json j{{"kind", r.kind},     {"N", r.N},
             {"d", r.d},           {"lhs", r.lhs},
             {"f_n", r.f_n},       {"error_scale", r.error_scale},
             {"fitted_constant", r.fitted_constant},
             {"seed", r.seed},     {"run_id", id}};
      out << j.dump() << '\n';
      sum.reports.push_back(r);
    }
  }
  return sum;
}

EulerTestResult run_euler_test(const RunConfig& c, const fs::path& dir) {
  validate_config(c);
  FlowState s;
  if (c.flow.named) {
    s = named_flow_state(*c.flow.named, GridSpec(2, c.n ? c.n : 128));
  } else if (!c.flow.vorticity_file.empty()) {
    s.omega = read_real_field(c.flow.vorticity_file);
    if (c.n && s.omega.grid.n() != c.n) throw Error(ErrorKind::Config, "grid.n differs from the vorticity file grid");
    s.omega = add_scalar(s.omega, -mean(s.omega));
  } else {
    s.omega = random_vorticity(GridSpec(2, c.n ? c.n : 128), c.flow.random_modes, c.seed);
  }
  const double dt = c.time.dt_cap;
  const int steps = int(std::llround(c.time.T / dt));
  if (cfl_number(s, dt) > 0.5) throw Error(ErrorKind::CflViolation, "time.dt_cap violates the CFL bound");

  ensure_dir(dir);
  auto csv = open_out(dir / "euler.csv");
  csv << "t,energy,enstrophy,gradu_inf,c11\n";
  const RealField omega0 = s.omega;
  const double e0 = kinetic_energy(velocity_from_vorticity(s.omega));
  const double z0 = enstrophy(s.omega);
  EulerTestResult res;
  auto report = [&]() {
    const FlowSnapshot snap = flow_snapshot(s);
    const double e = kinetic_energy(snap.u);
    const double z = enstrophy(s.omega);
    csv << fmt(s.t) << ',' << fmt(e) << ',' << fmt(z) << ',' << fmt(snap.gradu_inf) << ',' << fmt(snap.c11) << '\n';
    res.energy_drift = std::max(res.energy_drift, e0 > 0 ? std::abs(e - e0) / e0 : std::abs(e));
    res.enstrophy_drift = std::max(res.enstrophy_drift, z0 > 0 ? std::abs(z - z0) / z0 : std::abs(z));
    res.omega_change = std::max(res.omega_change, max_abs(s.omega - omega0));
  };
  report();
  for (int k = 1; k <= steps; ++k) {
    s = euler_step(s, dt);
    s.t = k * dt;
    if (k % c.time.report_every == 0 || k == steps) report();
  }
  res.steps = steps;
  json j;
  j["run_id"] = run_id(c);
  j["experiment"] = "euler-test";
  j["flow"] = flow_name(c);
  j["n"] = s.omega.grid.n();
  j["dt"] = dt;
  j["steps"] = steps;
  j["energy_drift"] = res.energy_drift;
  j["enstrophy_drift"] = res.enstrophy_drift;
  j["omega_change"] = res.omega_change;
  write_json(dir / "summary.json", j);
  return res;
}

std::vector<FnMcRow> run_fn_mc(const RunConfig& c, const fs::path& dir) {
  validate_config(c);
  const GridSpec g(c.d, c.fnmc.n);
  const RealField mu(g, 1.0);
  std::vector<RealField> rhos;
  for (const auto& ds : c.fnmc.densities) {
    const double a = ds.amplitude;
    const int k1 = ds.mode[0], k2 = ds.mode[1], k3 = c.d == 3 ? ds.mode[2] : 0;
    rhos.push_back(sample(g, [=](double x, double y, double z) {
      return 1.0 + a * std::cos(2.0 * pi * (k1 * x + k2 * y + k3 * z));
    }));
  }
  ensure_dir(dir);
  std::vector<FnMcRow> rows;
  auto out = open_out(dir / "fn_mc.jsonl");
  const std::string id = run_id(c);
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    FnMcRow row;
    row.amplitude = c.fnmc.densities[i].amplitude;
    row.closed_form = fn_expectation_closed_form(rhos[i], mu, double(c.fnmc.N));
    row.mc = fn_expectation_monte_carlo(rhos[i], mu, c.fnmc.N, c.fnmc.S, c.seed + i);
    const double z = row.mc.std_error > 0 ? (row.mc.mean - row.closed_form) / row.mc.std_error : 0.0;
    json j{{"amplitude", row.amplitude}, {"mode", c.fnmc.densities[i].mode},
           {"N", c.fnmc.N},              {"S", c.fnmc.S},
           {"closed_form", row.closed_form}, {"mc_mean", row.mc.mean},
           {"std_error", row.mc.std_error},  {"z", z},
           {"seed", c.seed + i},         {"run_id", id}};
    out << j.dump() << '\n';
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ell
