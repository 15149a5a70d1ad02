#include "ell/benches.hpp"

#include <cmath>
#include <limits>

#include "ell/error.hpp"
#include "ell/sampling.hpp"
#include "ell/spectral.hpp"

namespace ell {

double error_scale(std::size_t N, int d) {
  const double n = double(N);
  return (1.0 + (d == 2 ? std::log(n) : 0.0)) / std::pow(n, 2.0 / d);
}

PointConfiguration sample_configuration(const RealField& rho, std::size_t N, std::uint64_t seed) {
  auto rng = stream_rng(seed, 0);
  return DensitySampler(rho).sample(N, rng);
}

namespace {

double grad_inf(const VectorField& v) {
  std::vector<RealField> parts;
  for (const auto& c : v.comp)
    for (int a = 0; a < v.dim(); ++a) parts.push_back(derivative(c, a));
  double m = 0.0;
  for (std::size_t i = 0; i < parts.front().size(); ++i) {
    double s = 0.0;
    for (const auto& p : parts) s += p[i] * p[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

InequalityBenchReport base(const char* kind, const PointConfiguration& c, std::uint64_t seed) {
  InequalityBenchReport r;
  r.kind = kind;
  r.N = c.size();
  r.d = c.d;
  r.error_scale = error_scale(c.size(), c.d);
  r.seed = seed;
  return r;
}

}  // namespace

InequalityBenchReport commutator_bench(const EwaldKernel& kernel, const PointConfiguration& c,
                                       const VectorField& v, const RealField& mu, std::uint64_t seed) {
  require_same_grid(v.grid(), mu.grid, "commutator_bench");
  const int d = c.d;
  const double N = double(c.size());
  InequalityBenchReport r = base("commutator", c, seed);
  r.f_n = f_n(kernel, c, mu);

  // lhs does not see constant shifts of v; removing one makes v = const give exactly 0
  VectorField w = v;
  for (int a = 0; a < d; ++a) {
    const double ref = v[a].values.front();
    for (double& x : w[a].values) x -= ref;
  }
  std::vector<Point> vi(c.size(), Point{0.0, 0.0, 0.0});
  for (int a = 0; a < d; ++a) {
    const auto va = evaluate_at(transform(w[a]), c.x);
    for (std::size_t i = 0; i < c.size(); ++i) vi[i][std::size_t(a)] = va[i];
  }
  const double pairs = pair_commutator(kernel, c, vi) / (N * N);

  const SpectralCoeffs vmu_hat = convolve_kernel(transform(mu));
  std::vector<double> cross(c.size(), 0.0);
  double smooth = 0.0;
  for (int a = 0; a < d; ++a) {
    const SpectralCoeffs g = derivative(vmu_hat, a);
    const auto g_at = evaluate_at(g, c.x);
    const auto h_at = evaluate_at(derivative(convolve_kernel(transform(pointwise(w[a], mu))), a), c.x);
    for (std::size_t i = 0; i < c.size(); ++i) cross[i] += vi[i][std::size_t(a)] * g_at[i] - h_at[i];
    smooth += inner(pointwise(w[a], inverse_real(g)), mu);
  }
  r.lhs = pairs - 2.0 / N * sum(cross) + 2.0 * smooth;
  const double denom = grad_inf(v) * (r.f_n + (1.0 + max_abs(mu)) * r.error_scale);
  r.fitted_constant =
      denom > 0.0 ? std::abs(r.lhs) / denom : (r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return r;
}

InequalityBenchReport coercivity_bench(const EwaldKernel& kernel, const PointConfiguration& c,
                                       const RealField& phi, const RealField& mu, std::uint64_t seed) {
  require_same_grid(phi.grid, mu.grid, "coercivity_bench");
  const double N = double(c.size());
  InequalityBenchReport r = base("coercivity", c, seed);
  r.f_n = f_n(kernel, c, mu);
  const auto at = evaluate_at(transform(phi), c.x);
  r.lhs = std::abs(sum(at) / N - inner(phi, mu));
  const VectorField g = gradient(phi);
  double g2 = 0.0;
  for (const auto& gc : g.comp) g2 += inner(gc, gc);
  const double denom = max_norm(g) * std::pow(N, -1.0 / c.d) +
                       std::sqrt(g2) * std::sqrt(std::max(r.f_n + (1.0 + max_abs(mu)) * r.error_scale, 0.0));
  r.fitted_constant = denom > 0.0 ? r.lhs / denom : (r.lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return r;
}

InequalityBenchReport energy_bench(const EwaldKernel& kernel, const PointConfiguration& c, const RealField& mu,
                                   std::uint64_t seed) {
  InequalityBenchReport r = base("energy", c, seed);
  r.f_n = f_n(kernel, c, mu);
  r.lhs = r.f_n;
  r.fitted_constant = std::max(-r.f_n, 0.0) / r.error_scale;
  return r;
}

}  // namespace ell
