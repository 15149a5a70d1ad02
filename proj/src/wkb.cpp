#include "ell/wkb.hpp"

#include <cmath>
#include <numbers>

#include "ell/error.hpp"
#include "ell/parallel.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

void PacketSpec::validate() const {
  if (!(sigma > 0.0 && sigma <= 0.25))
    throw Error(ErrorKind::InvalidConfiguration, "packet width must lie in (0, 1/4]");
}

void require_packet_resolved(const PacketSpec& spec, const GridSpec& g, const PhysicalParams& p) {
  double v = 0.0;
  for (int a = 0; a < g.dim(); ++a) v += spec.momentum[std::size_t(a)] * spec.momentum[std::size_t(a)];
  const double kmax = (std::sqrt(v) + 4.0 * p.hbar / spec.sigma) / p.hbar;
  const double band = 2.0 * pi * (g.n() / 3);
  if (kmax > band)
    throw Error(ErrorKind::ResolutionGuard, "packet wave number " + std::to_string(kmax) +
                                                " exceeds the resolved band " + std::to_string(band));
  if (spec.sigma < 2.0 * g.h())
    throw Error(ErrorKind::ResolutionGuard, "packet width below two grid cells");
}

namespace {

// One axis of the separable packet; index q is the grid offset from the
// centre's node, so the values depend only on the fractional part of x0.
std::vector<cplx> axis_profile(int n, double x0, double v0, double sigma, double hbar) {
  const double pos = x0 * n;
  const double j0 = std::floor(pos);
  const double r = pos - j0;
  const int images = 5;
  std::vector<cplx> prof(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    cplx s{};
    for (int m = -images; m <= images; ++m) {
      const double y = (double(q) - r) / n + m;
      s += std::exp(-y * y / (4.0 * sigma * sigma)) * std::polar(1.0, v0 * y / hbar);
    }
    prof[std::size_t(q)] = s;
  }
  // Rotate so that entry j holds offset q = j - j0 (mod n).
  std::vector<cplx> out(static_cast<std::size_t>(n));
  const int shift = int(j0) % n;
  for (int j = 0; j < n; ++j) out[std::size_t(j)] = prof[std::size_t(((j - shift) % n + n) % n)];
  return out;
}

}  // namespace

ComplexField gaussian_packet(const PacketSpec& spec, const GridSpec& g, const PhysicalParams& p) {
  spec.validate();
  p.validate();
  require_packet_resolved(spec, g, p);
  const int n = g.n(), d = g.dim();
  std::vector<cplx> prof[3];
  for (int a = 0; a < d; ++a)
    prof[a] = axis_profile(n, spec.center[std::size_t(a)], spec.momentum[std::size_t(a)], spec.sigma, p.hbar);
  ComplexField phi(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto j = g.unravel(i);
    cplx v = prof[0][std::size_t(j[0])] * prof[1][std::size_t(j[1])];
    if (d == 3) v *= prof[2][std::size_t(j[2])];
    phi[i] = v;
  }
  const double norm = l2_norm(phi);
  for (auto& v : phi.values) v /= norm;
  return phi;
}

MixedState monokinetic_mixture(const VectorField& u0, const RealField& rho0, const PhysicalParams& p,
                               const MixtureOptions& opt) {
  p.validate();
  const GridSpec& g = rho0.grid;
  require_same_grid(g, u0.grid(), "monokinetic_mixture");
  const int d = g.dim();
  const int m = opt.packets_per_axis;
  if (m < 1) throw Error(ErrorKind::InvalidConfiguration, "packets_per_axis must be positive");
  for (double v : rho0.values)
    if (!(v > 0.0)) throw Error(ErrorKind::NegativeDensity, "rho0 must be strictly positive");
  if (!(std::abs(mean(rho0) - 1.0) <= 1e-8)) throw Error(ErrorKind::MeanNotOne, "rho0 must have mean 1");
  const double sigma = opt.sigma.value_or(std::sqrt(p.hbar));

  std::size_t count = 1;
  for (int a = 0; a < d; ++a) count *= std::size_t(m);
  std::vector<Point> centers(count);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    for (int a = 0; a < d; ++a) {
      centers[c][std::size_t(a)] = double(rest % std::size_t(m)) / m;
      rest /= std::size_t(m);
    }
  }
  const auto w = evaluate_at(transform(rho0), centers);
  std::vector<std::vector<double>> vel(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) vel[std::size_t(a)] = evaluate_at(transform(u0[a]), centers);

  MixedState s;
  s.orbitals.resize(count);
  s.weights.resize(count);
  double wsum = 0.0;
  for (std::size_t c = 0; c < count; ++c) {
    if (!(w[c] > 0.0)) throw Error(ErrorKind::NegativeDensity, "rho0 interpolant is not positive at a packet centre");
    wsum += w[c];
  }
  for (std::size_t c = 0; c < count; ++c) s.weights[c] = w[c] / wsum;

  std::vector<PacketSpec> specs(count);
  for (std::size_t c = 0; c < count; ++c) {
    specs[c].center = centers[c];
    for (int a = 0; a < d; ++a) specs[c].momentum[std::size_t(a)] = vel[std::size_t(a)][c];
    specs[c].sigma = sigma;
    require_packet_resolved(specs[c], g, p);
  }
  parallel_for(count, [&](std::size_t c) { s.orbitals[c] = gaussian_packet(specs[c], g, p); });
  return s;
}

double mixture_kinetic_constant(double kinetic, double hbar, double sigma, double gradu_inf) {
  return kinetic / (hbar + sigma * sigma * gradu_inf * gradu_inf);
}

RealField default_rho0(const RealField& corrector, double eps) {
  RealField r(corrector.grid);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(1.0 + eps * eps * corrector[i], 1e-3);
  const double m = mean(r);
  for (auto& v : r.values) v /= m;
  return r;
}

}  // namespace ell
