// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ell/benches.hpp"
#include "ell/coulomb.hpp"
#include "ell/euler.hpp"
#include "ell/experiment.hpp"
#include "ell/hartree.hpp"
#include "ell/modulated.hpp"
#include "ell/spectral.hpp"
#include "ell/wkb.hpp"
#include "support.hpp"

using namespace ell;
using ell::testing::max_diff;
using ell::testing::pi;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

FlowState advance(FlowState s, double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = euler_step(s, dt);
  return s;
}

FlowState random_flow(int n, unsigned seed, int K = 4) {
  return FlowState{ell::testing::random_bandlimited(GridSpec(2, n), K, seed), 0.0};
}

// ---------------------------------------------------------------- 1

// int f (G * f) for f = cos 2 pi x, with the mean-zero periodic Green's
// function of -d^2/dx^2; the inner integral is split at the kink.
double hminus1_sq_quadrature() {
  std::vector<double> gx, gw;
  ell::testing::gauss_legendre(40, gx, gw);
  auto G = [](double r) { return 0.5 * (r - 0.5) * (r - 0.5) - 1.0 / 24.0; };
  auto f = [](double x) { return std::cos(2 * pi * x); };
  double outer = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    const double x = gx[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < gx.size(); ++j) {
      const double y1 = x * gx[j];                 // y in [0, x], r = x - y
      const double y2 = x + (1.0 - x) * gx[j];     // y in [x, 1], r = 1 + x - y
      inner += gw[j] * (x * G(x - y1) * f(y1) + (1.0 - x) * G(1.0 + x - y2) * f(y2));
    }
    outer += gw[i] * f(x) * inner;
  }
  return outer;
}

Outcome item1() {
  const GridSpec g(2, 256);
  const RealField f = ell::testing::random_bandlimited(GridSpec(2, 256), 40, 3);
  const auto t0 = Clock::now();
  const RealField back = inverse_real(transform(f));
  const RealField c = sample(g, [](double x, double, double) { return std::cos(2 * pi * x); });
  const double h = hminus1_norm(c);
  const double elapsed = seconds_since(t0);
  const double rt = max_diff(back, f);
  const double want = std::sqrt(hminus1_sq_quadrature());
  const double herr = std::abs(h - want);
  const double closed = std::abs(want - 1.0 / std::sqrt(8 * pi * pi));
  Outcome o;
  o.pass = rt <= 1e-13 && herr <= 1e-10 && closed <= 1e-10 && elapsed < 1.0;
  o.detail = fmt("round trip %.2e, |H^-1 - quadrature| %.2e (quadrature vs (8pi^2)^-1/2 %.2e), n=256 wall %.3f s",
                 rt, herr, closed, elapsed);
  return o;
}

// ---------------------------------------------------------------- 2

Outcome item2() {
  const auto t0 = Clock::now();
  const GridSpec g(2, 128);
  double stat = 0.0;
  for (NamedFlow f : {NamedFlow::TaylorGreen2d, NamedFlow::Shear2d}) {
    const FlowState s0 = named_flow_state(f, g);
    stat = std::max(stat, max_diff(advance(s0, 1e-3, 1000).omega, s0.omega));
  }
  const FlowState r0 = random_flow(128, 21);
  const double e0 = kinetic_energy(velocity_from_vorticity(r0.omega)), z0 = enstrophy(r0.omega);
  const FlowState r1 = advance(r0, 1e-3, 1000);
  const double de = std::abs(kinetic_energy(velocity_from_vorticity(r1.omega)) - e0) / e0;
  const double dz = std::abs(enstrophy(r1.omega) - z0) / z0;

  const FlowState q0 = random_flow(32, 5);
  const double T = 0.2;
  const FlowState ref = advance(q0, T / 320, 320);
  const double e1 = max_diff(advance(q0, T / 10, 10).omega, ref.omega);
  const double e2 = max_diff(advance(q0, T / 20, 20).omega, ref.omega);
  const double order = std::log2(e1 / e2);
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.pass = stat <= 1e-6 && de <= 1e-8 && dz <= 1e-8 && order >= 3.7 && elapsed < 60.0;
  o.detail = fmt("stationarity %.2e, energy drift %.2e, enstrophy drift %.2e, RK4 order %.2f, wall %.1f s", stat,
                 de, dz, order, elapsed);
  return o;
}

// ---------------------------------------------------------------- 3

Outcome item3() {
  const GridSpec g(2, 128);
  double mean_u = 0.0, resid = 0.0, dtp_stat = 0.0;
  std::vector<VectorField> flows{named_flow_velocity(NamedFlow::TaylorGreen2d, g),
                                 named_flow_velocity(NamedFlow::Shear2d, g),
                                 velocity_from_vorticity(random_flow(128, 8).omega)};
  for (const auto& u : flows) {
    const RealField U = corrector_field(u);
    mean_u = std::max(mean_u, std::abs(mean(U)));
    resid = std::max(resid, max_diff((-1.0) * laplacian(pressure_field(u)), U));
  }
  for (std::size_t i = 0; i < 2; ++i) dtp_stat = std::max(dtp_stat, max_abs(pressure_time_derivative(flows[i])));

  const FlowState s = random_flow(128, 8);
  const double delta = 1e-4;
  const FlowState fwd = euler_step(s, delta);
  FlowState bwd = s;
  bwd.omega = (-1.0) * s.omega;
  bwd = euler_step(bwd, delta);
  bwd.omega = (-1.0) * bwd.omega;
  const RealField fd = (1.0 / (2 * delta)) * (pressure_field(velocity_from_vorticity(fwd.omega)) -
                                              pressure_field(velocity_from_vorticity(bwd.omega)));
  const RealField dtp = pressure_time_derivative(velocity_from_vorticity(s.omega));
  const double rel = max_diff(fd, dtp) / max_abs(dtp);
  Outcome o;
  o.pass = mean_u <= 1e-10 && resid <= 1e-10 && dtp_stat <= 1e-9 && rel <= 1e-4;
  o.detail = fmt("|mean U| %.2e, -Lap p - U %.2e, stationary d_t p %.2e, d_t p vs finite difference %.2e rel",
                 mean_u, resid, dtp_stat, rel);
  return o;
}

// ---------------------------------------------------------------- 4

// Four packets riding the Taylor-Green flow at the smallest hbar and eps
// allowed by the criterion.
MixedState packet_state(const GridSpec& g, const PhysicalParams& p) {
  const VectorField u = named_flow_velocity(NamedFlow::TaylorGreen2d, g);
  const SpectralCoeffs u0 = transform(u[0]), u1 = transform(u[1]);
  const Point centers[4] = {{0.31, 0.12, 0.0}, {0.62, 0.27, 0.0}, {0.18, 0.58, 0.0}, {0.77, 0.81, 0.0}};
  MixedState s;
  for (const Point& c : centers) {
    PacketSpec ps;
    ps.center = c;
    ps.momentum = {evaluate_at(u0, {c})[0], evaluate_at(u1, {c})[0], 0.0};
    ps.sigma = std::sqrt(p.hbar);
    s.orbitals.push_back(gaussian_packet(ps, g, p));
    s.weights.push_back(0.25);
  }
  return s;
}

struct HartreeDrift {
  double energy_a = 0.0, energy_b = 0.0;  // dt and dt / 2
  double mass_step = 0.0;
  double cont_a = 0.0, cont_b = 0.0;
};

HartreeDrift hartree_drift(const MixedState& s0, const PhysicalParams& p, double dt) {
  const GridSpec& g = s0.grid();
  const double e0 = total_energy(s0, p).total;
  HartreeDrift out;
  auto run = [&](double h, double& energy) {
    MixedState s = s0;
    HartreePropagator prop(g, p, h);
    const int steps = int(std::lround(1.0 / h));
    const int every = int(std::lround(1e-2 / h));
    double m_prev = mean(density(s));
    for (int i = 1; i <= steps; ++i) {
      prop.step(s);
      const double m = mean(density(s));
      out.mass_step = std::max(out.mass_step, std::abs(m - m_prev));
      m_prev = m;
      if (i % every == 0) energy = std::max(energy, std::abs(total_energy(s, p).total - e0) / std::abs(e0));
    }
  };
  run(dt, out.energy_a);
  run(dt / 2, out.energy_b);
  auto cont = [&](double h) {
    const MixedState fwd = strang_step(s0, p, h);
    MixedState bwd = s0;
    for (auto& o : bwd.orbitals)
      for (auto& z : o.values) z = std::conj(z);
    bwd = strang_step(bwd, p, h);
    const RealField drho = (1.0 / (2 * h)) * (density(fwd) - density(bwd));
    return max_abs(drho + divergence(current(s0, p)));
  };
  out.cont_a = cont(dt);
  out.cont_b = cont(dt / 2);
  return out;
}

Outcome item4() {
  const GridSpec g(2, 128);
  const PhysicalParams p{5e-3, 0.1};
  // the WKB mixture the sweeps propagate, at the corner of the allowed range
  const VectorField u = named_flow_velocity(NamedFlow::TaylorGreen2d, g);
  const MixedState mix = monokinetic_mixture(u, default_rho0(corrector_field(u), p.eps), p, {16, std::nullopt});
  const HartreeDrift a = hartree_drift(mix, p, 1e-3);
  // four isolated packets: strongly peaked density, reported only
  const HartreeDrift b = hartree_drift(packet_state(g, p), p, 1e-3);
  const double ratio = a.energy_a / a.energy_b;
  const double corder = std::log2(a.cont_a / a.cont_b);
  Outcome o;
  o.pass = a.mass_step <= 1e-12 && a.energy_a <= 1e-6 && ratio >= 3.5 && ratio <= 4.5 && corder >= 1.8;
  o.detail = fmt("hbar=5e-3 eps=0.1 n=128 wkb mixture (rank %zu): mass/step %.2e, energy drift %.2e (dt=1e-3), "
                 "%.2e (dt=5e-4), ratio %.2f, continuity residual order %.2f | four-packet state: energy drift "
                 "%.2e, ratio %.2f, continuity order %.2f",
                 mix.rank(), a.mass_step, a.energy_a, a.energy_b, ratio, corder, b.energy_a,
                 b.energy_a / b.energy_b, std::log2(b.cont_a / b.cont_b));
  return o;
}

// ---------------------------------------------------------------- 5

double wkb_slope(NamedFlow f, std::vector<double>* ks) {
  const std::vector<double> hbars{4e-2, 2e-2, 1e-2, 5e-3};
  for (double h : hbars) {
    const PhysicalParams p{h, 0.2};
    const double u_inf = max_norm(named_flow_velocity(f, GridSpec(2, 64)));
    const int n = choose_grid_size(h, std::sqrt(h), u_inf);
    const GridSpec g(2, n);
    const VectorField u = named_flow_velocity(f, g);
    const RealField rho0 = default_rho0(corrector_field(u), p.eps);
    const MixedState s = monokinetic_mixture(u, rho0, p, {16, std::nullopt});
    ks->push_back(kinetic_term(s, u, p));
  }
  return fit_loglog(hbars, *ks).slope;
}

Outcome item5() {
  std::vector<double> ks, kt;
  const double ss = wkb_slope(NamedFlow::Shear2d, &ks);
  const double st = wkb_slope(NamedFlow::TaylorGreen2d, &kt);
  Outcome o;
  // shear is the carrier of record; Taylor-Green is reported alongside
  o.pass = std::abs(ss - 1.0) <= 0.15;
  o.detail = fmt("slope shear %.3f (k = %.3e .. %.3e), taylor-green %.3f (k = %.3e .. %.3e)", ss, ks.front(),
                 ks.back(), st, kt.front(), kt.back());
  return o;
}

// ---------------------------------------------------------------- 6, 9

struct SweepRun {
  std::string flow;
  SweepResult r;
  double wall = 0.0;
};

bool nonincreasing(double prev, double next) { return next <= prev * (1.0 + 1e-9) + 1e-12; }

Outcome item6(const std::vector<SweepRun>& runs, double wall) {
  Outcome o;
  o.pass = wall < 1800.0;
  std::string d;
  for (const auto& sr : runs) {
    double margin = std::numeric_limits<double>::infinity();
    bool ok = sr.r.complete, mono = true;
    for (const auto& row : sr.r.rows) {
      ok = ok && row.ok;
      margin = std::min(margin, row.gronwall_margin_min);
    }
    std::map<double, std::vector<const SweepRow*>> by_h;
    for (const auto& row : sr.r.rows) by_h[row.hbar].push_back(&row);
    for (auto& [h, v] : by_h) {
      std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->eps > b->eps; });
      for (std::size_t i = 1; i < v.size(); ++i) mono = mono && nonincreasing(v[i - 1]->sup_total, v[i]->sup_total);
    }
    const bool bound = margin >= 0.0;
    o.pass = o.pass && ok && bound && mono;
    d += fmt("%s: c_d=%.4g c_da=%.3g, min(rhs - G) %.3e, sup G monotone in eps %s, %.0f s; ", sr.flow.c_str(),
             sr.r.constants.c_d, sr.r.constants.c_da, margin, mono ? "yes" : "no", sr.wall);
  }
  o.detail = d + fmt("total %.0f s", wall);
  return o;
}

Outcome item9(const std::vector<SweepRun>& runs) {
  Outcome o;
  o.pass = true;
  std::string d;
  for (const auto& sr : runs) {
    bool mono = true, bound = true;
    double worst = 0.0;
    auto check_line = [&](std::vector<const SweepRow*> v) {
      for (std::size_t i = 1; i < v.size(); ++i) {
        mono = mono && nonincreasing(v[i - 1]->dev_rho_T, v[i]->dev_rho_T);
        mono = mono && nonincreasing(v[i - 1]->dev_J_T, v[i]->dev_J_T);
      }
    };
    std::map<double, std::vector<const SweepRow*>> by_h, by_e;
    for (const auto& row : sr.r.rows) {
      by_h[row.hbar].push_back(&row);
      by_e[row.eps].push_back(&row);
      const double ratio = row.total_T > 0.0 ? row.dev_J_T * row.dev_J_T / row.total_T : 0.0;
      worst = std::max(worst, ratio);
      bound = bound && ratio <= sr.r.dev_j_constant;
    }
    for (auto& [h, v] : by_h) {
      std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->eps > b->eps; });
      check_line(v);
    }
    for (auto& [e, v] : by_e) {
      std::sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->hbar > b->hbar; });
      check_line(v);
    }
    o.pass = o.pass && mono && bound && sr.r.complete;
    d += fmt("%s: deviations monotone %s, max dev_J^2/G %.3e vs frozen C %.3e; ", sr.flow.c_str(),
             mono ? "yes" : "no", worst, sr.r.dev_j_constant);
  }
  o.detail = d;
  return o;
}

// ---------------------------------------------------------------- 7

Outcome item7() {
  const GridSpec g(2, 32);
  const RealField one(g, 1.0);
  struct D {
    double a;
    int k1, k2;
  };
  const D ds[3] = {{0.5, 1, 0}, {0.3, 1, 1}, {0.7, 2, 1}};
  Outcome o;
  o.pass = true;
  std::string d;
  for (int i = 0; i < 3; ++i) {
    const D& q = ds[i];
    const RealField rho = sample(g, [&](double x, double y, double) {
      return 1.0 + q.a * std::cos(2 * pi * (q.k1 * x + q.k2 * y));
    });
    const double cf = fn_expectation_closed_form(rho, one, 64);
    const McEstimate big = fn_expectation_monte_carlo(rho, one, 64, 10000, 100 + i);
    const McEstimate half = fn_expectation_monte_carlo(rho, one, 64, 5000, 200 + i);
    const double z = (big.mean - cf) / big.std_error;
    const double ratio = half.std_error / big.std_error;
    const bool ok = std::abs(z) <= 3.0 && std::abs(ratio / std::sqrt(2.0) - 1.0) <= 0.1;
    o.pass = o.pass && ok;
    d += fmt("[a=%.1f k=(%d,%d): z=%+.2f, SE ratio %.3f] ", q.a, q.k1, q.k2, z, ratio);
  }
  o.detail = d;
  return o;
}

// ---------------------------------------------------------------- 8

Outcome item8() {
  const GridSpec g(2, 32);
  const RealField one(g, 1.0);
  const VectorField v = named_flow_velocity(NamedFlow::Shear2d, g);
  const RealField phi = sample(g, [](double x, double, double) { return std::cos(2 * pi * x); });
  const EwaldKernel K = EwaldKernel::for_pairs(2);
  const std::vector<std::size_t> Ns{64, 256, 1024};
  std::map<std::string, std::vector<double>> worst;  // per kind, max over seeds at each N
  bool finite = true;
  double c64 = 0.0, min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t N : Ns) {
    std::map<std::string, double> w;
    for (std::uint64_t seed = 1; seed <= 32; ++seed) {
      const PointConfiguration c = sample_configuration(one, N, seed);
      for (const auto& r : {commutator_bench(K, c, v, one, seed), coercivity_bench(K, c, phi, one, seed),
                            energy_bench(K, c, one, seed)}) {
        finite = finite && std::isfinite(r.fitted_constant) && std::isfinite(r.lhs);
        w[r.kind] = std::max(w[r.kind], r.fitted_constant);
        if (r.kind == "energy" && N == 64) c64 = std::max(c64, r.fitted_constant);
        if (r.kind == "energy" && N == 1024) min_margin = std::min(min_margin, r.f_n + c64 * r.error_scale);
      }
    }
    for (auto& [k, x] : w) worst[k].push_back(x);
  }
  auto band = [&](const std::string& k) {
    const auto& x = worst[k];
    const double lo = *std::min_element(x.begin(), x.end()), hi = *std::max_element(x.begin(), x.end());
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  };
  const double bc = band("commutator"), bo = band("coercivity");
  Outcome o;
  o.pass = finite && bc <= 4.0 && bo <= 4.0 && min_margin >= 0.0;
  o.detail = fmt("commutator C(N) = %.3g/%.3g/%.3g (band %.2f), coercivity C(N) = %.3g/%.3g/%.3g (band %.2f), "
                 "energy C fitted at 64 = %.3g, min over N=1024 seeds of F_N + C scale = %.3e",
                 worst["commutator"][0], worst["commutator"][1], worst["commutator"][2], bc, worst["coercivity"][0],
                 worst["coercivity"][1], worst["coercivity"][2], bo, c64, min_margin);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance_runs";
  std::vector<int> only;
  app.add_option("--out", out, "directory for sweep artifacts");
  app.add_option("--only", only, "run only these items");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int k) { return only.empty() || std::find(only.begin(), only.end(), k) != only.end(); };

  int failures = 0;
  auto report = [&](int k, const char* name, const std::function<Outcome()>& fn) {
    if (!wanted(k)) return;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s  %d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "spectral core", item1);
  report(2, "euler solver", item2);
  report(3, "corrector and pressure", item3);
  report(4, "hartree solver", item4);
  report(5, "wkb kinetic scaling", item5);

  std::vector<SweepRun> sweeps;
  double sweep_wall = 0.0;
  std::string sweep_error;
  if (wanted(6) || wanted(9)) {
    const auto t0 = Clock::now();
    try {
      for (const char* flow : {"shear", "taylor-green"}) {
        const RunConfig c = load_config(fs::path(ELL_SOURCE_DIR) / "configs" / (std::string("sweep_") + flow + ".yaml"));
        const auto t1 = Clock::now();
        SweepRun sr{flow, run_sweep(c, fs::path(out) / (std::string("sweep_") + flow)), 0.0};
        sr.wall = seconds_since(t1);
        sweeps.push_back(std::move(sr));
      }
    } catch (const std::exception& e) {
      sweep_error = e.what();
    }
    sweep_wall = seconds_since(t0);
  }
  auto sweep_item = [&](auto fn) {
    return [&, fn]() -> Outcome {
      if (!sweep_error.empty()) return {false, "sweep failed: " + sweep_error};
      return fn();
    };
  };
  report(6, "gronwall bound", sweep_item([&] { return item6(sweeps, sweep_wall); }));
  report(7, "expectation identity", item7);
  report(8, "inequality benches", item8);
  report(9, "sobolev convergence", sweep_item([&] { return item9(sweeps); }));

  std::printf("%d failing\n", failures);
  return failures == 0 ? 0 : 1;
}
