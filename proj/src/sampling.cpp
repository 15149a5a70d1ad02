#include "ell/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ell/error.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  const std::uint64_t a = mix(seed), b = mix(index ^ 0x5851f42d4c957f2dULL);
  std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b), std::uint32_t(b >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

namespace {

struct TrigPoly {
  const std::vector<cplx>& a;
  int n;

  int k(int j) const { return j <= n / 2 ? j : j - n; }

  // Density and its integral over [0, x], from powers of e^{2 pi i x}.
  void eval(double x, double& value, double& cdf) const {
    const cplx z = std::polar(1.0, 2.0 * pi * x);
    cplx zk = 1.0;
    std::vector<cplx> pw(std::size_t(n / 2 + 1));
    for (int q = 0; q <= n / 2; ++q) {
      pw[std::size_t(q)] = zk;
      zk *= z;
    }
    value = a[0].real();
    cdf = a[0].real() * x;
    for (int j = 1; j < n; ++j) {
      const int kj = k(j);
      const cplx e = kj >= 0 ? pw[std::size_t(kj)] : std::conj(pw[std::size_t(-kj)]);
      const cplx t = a[std::size_t(j)] * e;
      value += t.real();
      cdf += ((t - a[std::size_t(j)]) / cplx(0.0, 2.0 * pi * kj)).real();
    }
  }
};

}  // namespace

double invert_trig_cdf(const std::vector<cplx>& a, double u) {
  const TrigPoly p{a, int(a.size())};
  const double mass = a[0].real();
  if (!(mass > 0.0)) throw Error(ErrorKind::NegativeDensity, "conditional density has no mass");
  const double target = u * mass;
  double lo = 0.0, hi = 1.0;
  double x = u;
  for (int it = 0; it < 100; ++it) {
    double dens, cdf;
    p.eval(x, dens, cdf);
    const double f = cdf - target;
    if (f > 0.0) hi = x; else lo = x;
    if (std::abs(f) <= 1e-15 * mass || hi - lo <= 1e-16) break;
    double next = dens > 0.0 ? x - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return std::clamp(x, 0.0, std::nextafter(1.0, 0.0));
}

DensitySampler::DensitySampler(const RealField& rho) {
  for (double v : rho.values)
    if (v < -1e-12) throw Error(ErrorKind::NegativeDensity, "density has negative node values");
  const double m = mean(rho);
  if (!(std::abs(m - 1.0) <= 1e-8)) throw Error(ErrorKind::MeanNotOne, "sampling density mean is not 1");
  c_ = transform(rho);
}

Point DensitySampler::sample(std::mt19937_64& rng) const {
  const GridSpec& g = c_.grid;
  const int n = g.n(), d = g.dim();
  // Draw the slowest axis from its marginal, then condition the remaining
  // coefficients on it and repeat down to axis 1.
  std::vector<cplx> cur(c_.c.begin(), c_.c.end());
  Point x{0.0, 0.0, 0.0};
  std::size_t block = g.size();
  for (int a = d - 1; a >= 0; --a) {
    const std::size_t inner = block / std::size_t(n);  // entries per index of axis a
    std::vector<cplx> marg(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) marg[std::size_t(j)] = cur[std::size_t(j) * inner];
    const double xa = invert_trig_cdf(marg, uniform01(rng));
    x[std::size_t(a)] = xa;
    if (a == 0) break;
    std::vector<cplx> next(inner, cplx{});
    for (int j = 0; j < n; ++j) {
      const cplx ph = std::polar(1.0, 2.0 * pi * g.wavenumber(j) * xa);
      for (std::size_t i = 0; i < inner; ++i) next[i] += cur[std::size_t(j) * inner + i] * ph;
    }
    cur.swap(next);
    block = inner;
  }
  return x;
}

PointConfiguration DensitySampler::sample(std::size_t N, std::mt19937_64& rng) const {
  PointConfiguration c;
  c.d = c_.grid.dim();
  c.x.reserve(N);
  for (std::size_t i = 0; i < N; ++i) c.x.push_back(sample(rng));
  return c;
}

}  // namespace ell
