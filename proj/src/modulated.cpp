#include "ell/modulated.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ell/error.hpp"
#include "ell/parallel.hpp"
#include "ell/sampling.hpp"
#include "ell/simd.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

double kinetic_term(const MixedState& s, const VectorField& u, const PhysicalParams& p) {
  const GridSpec& g = s.grid();
  require_same_grid(g, u.grid(), "kinetic_term");
  if (u.dim() != g.dim()) throw Error(ErrorKind::GridMismatch, "velocity has the wrong number of components");
  std::vector<double> per(s.rank());
  parallel_for(s.rank(), [&](std::size_t m) {
    const ComplexField& phi = s.orbitals[m];
    const auto grad = gradient(phi);
    ComplexField r(g);
    double acc = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const auto& ga = grad[std::size_t(a)];
      const auto& ua = u[a];
      for (std::size_t i = 0; i < g.size(); ++i) r[i] = cplx(0.0, -p.hbar) * ga[i] - ua[i] * phi[i];
      acc += simd::sum_abs2(r.span());
    }
    per[m] = acc / double(g.size());
  });
  double total = 0.0;
  for (std::size_t m = 0; m < s.rank(); ++m) total += s.weights[m] * per[m];
  return total;
}

double potential_term(const RealField& rho, const RealField& corrector, const PhysicalParams& p) {
  require_same_grid(rho.grid, corrector.grid, "potential_term");
  RealField diff(rho.grid);
  const double e2 = p.eps * p.eps;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rho[i] - 1.0 - e2 * corrector[i];
  const double m = mean(diff);
  if (std::abs(m) > 1e-10 * std::max(1.0, max_abs(diff)))
    throw Error(ErrorKind::NonZeroMean, "rho - 1 - eps^2 U has mean " + std::to_string(m));
  return hminus1_sq(transform(diff)) / e2;
}

double potential_term(const RealField& rho, const FlowSnapshot& snap, const PhysicalParams& p) {
  return potential_term(rho, snap.corrector, p);
}

DeviationNorms deviation_norms(const RealField& rho, const VectorField& J, const VectorField& u) {
  require_same_grid(rho.grid, J.grid(), "deviation_norms");
  require_same_grid(rho.grid, u.grid(), "deviation_norms");
  DeviationNorms out;
  out.dev_rho = sobolev_norm(add_scalar(rho, -1.0), -3.0);
  double s = 0.0;
  for (int a = 0; a < u.dim(); ++a) {
    const double v = sobolev_norm(J[a] - u[a], -3.0);
    s += v * v;
  }
  out.dev_J = std::sqrt(s);
  return out;
}

DeviationNorms deviation_norms(const MixedState& s, const FlowSnapshot& snap, const PhysicalParams& p) {
  return deviation_norms(density(s), current(s, p), snap.u);
}

EnergyReport modulated_energy(const MixedState& s, const FlowSnapshot& snap, const PhysicalParams& p) {
  EnergyReport r;
  r.t = snap.t;
  const RealField rho = density(s);
  r.kinetic = kinetic_term(s, snap.u, p);
  r.potential = potential_term(rho, snap, p);
  r.total = r.kinetic + r.potential;
  const DeviationNorms dn = deviation_norms(rho, current(s, p), snap.u);
  r.dev_rho = dn.dev_rho;
  r.dev_J = dn.dev_J;
  return r;
}

double gronwall_rhs(double g0, const std::vector<FlowNorms>& h, double eps, double t, const GronwallConstants& c) {
  if (h.empty()) throw Error(ErrorKind::EmptyHistory, "flow history is empty");
  if (std::abs(h.front().t) > 1e-12) throw Error(ErrorKind::InvalidArgument, "flow history must start at t = 0");
  for (std::size_t i = 1; i < h.size(); ++i)
    if (!(h[i].t > h[i - 1].t)) throw Error(ErrorKind::InvalidArgument, "flow history times must increase");
  if (t < 0.0 || t > h.back().t + 1e-12)
    throw Error(ErrorKind::InvalidArgument, "flow history does not cover t = " + std::to_string(t));
  double i_c11 = 0.0, i_grad = 0.0;
  for (std::size_t i = 1; i < h.size() && h[i - 1].t < t; ++i) {
    const FlowNorms& a = h[i - 1];
    FlowNorms b = h[i];
    if (b.t > t) {
      const double th = (t - a.t) / (b.t - a.t);
      b = {t, a.gradu_inf + th * (b.gradu_inf - a.gradu_inf), a.c11 + th * (b.c11 - a.c11)};
    }
    const double dt = b.t - a.t;
    i_c11 += 0.5 * dt * (std::pow(a.c11, 6) + std::pow(b.c11, 6));
    i_grad += 0.5 * dt * ((1.0 + a.gradu_inf) + (1.0 + b.gradu_inf));
  }
  return (g0 + c.c_da * eps * eps * i_c11) * std::exp(c.c_d * i_grad);
}

double fn_expectation_closed_form(const RealField& rho, const RealField& mu, double N) {
  require_probability_density(rho);
  require_probability_density(mu);
  require_same_grid(rho.grid, mu.grid, "fn_expectation_closed_form");
  if (!(N >= 1.0)) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
  const SpectralCoeffs r = transform(rho), m = transform(mu);
  const SpectralCoeffs vm = inverse_laplacian(m);
  double cross = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) cross += (vm[i] * std::conj(r[i])).real();
  const double a = hminus1_sq(r);
  const double b = hminus1_sq(m);
  return (N - 1.0) / N * a - 2.0 * cross + b;
}

McEstimate fn_expectation_monte_carlo(const RealField& rho, const RealField& mu, std::size_t N, std::size_t S,
                                      std::uint64_t seed) {
  if (S < 100) throw Error(ErrorKind::InvalidArgument, "need at least 100 samples");
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "need N >= 2");
  require_probability_density(mu);
  const DensitySampler sampler(rho);
  const EwaldKernel kernel = EwaldKernel::for_pairs(rho.grid.dim());
  std::vector<double> vals(S);
  parallel_for(S, [&](std::size_t s) {
    auto rng = stream_rng(seed, s);
    vals[s] = f_n(kernel, sampler.sample(N, rng), mu);
  });
  McEstimate e;
  e.samples = S;
  for (double v : vals) e.mean += v;
  e.mean /= double(S);
  double ss = 0.0;
  for (double v : vals) ss += (v - e.mean) * (v - e.mean);
  e.std_error = std::sqrt(ss / double(S - 1) / double(S));
  return e;
}

}  // namespace ell
