#include "ell/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ell/error.hpp"
#include "ell/parallel.hpp"
#include "ell/simd.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

namespace {

double e1(double x) { return -std::expint(-x); }

double screened_value(int d, double eta, double r) {
  if (d == 3) return std::erfc(eta * r) / (4.0 * pi * r);
  return e1(eta * eta * r * r) / (4.0 * pi);
}

// Radial integrals of the neglected tails beyond radius r (unit lattice density).
double real_integral(int d, double eta, double r) {
  const double z = eta * eta * r * r;
  if (d == 2) return std::exp(-z) / (4.0 * eta * eta);
  return r * std::exp(-z) / (2.0 * eta * std::sqrt(pi)) + std::erfc(eta * r) / (4.0 * eta * eta);
}

double fourier_integral(int d, double eta, double k) {
  if (d == 2) return e1(pi * pi * k * k / (eta * eta)) / (4.0 * pi);
  return eta / (2.0 * pi * std::sqrt(pi)) * std::erfc(pi * k / eta);
}

double half_weight(double eta, int k2) {
  return 2.0 * std::exp(-pi * pi * double(k2) / (eta * eta)) / (4.0 * pi * pi * double(k2));
}

bool upper_half(int k1, int k2, int k3) {
  return k1 > 0 || (k1 == 0 && (k2 > 0 || (k2 == 0 && k3 > 0)));
}

double norm_d(const Point& y, int d) {
  double s = 0.0;
  for (int a = 0; a < d; ++a) s += y[std::size_t(a)] * y[std::size_t(a)];
  return std::sqrt(s);
}

}  // namespace

double ewald_real_tail(int d, double eta, double real_cutoff) {
  const double s = 0.5 * std::sqrt(double(d));
  const int box = int(std::ceil(real_cutoff + s + 8.0 / eta)) + 2;
  const int b3 = d == 3 ? box : 0;
  double tail = 0.0;
  for (int n3 = -b3; n3 <= b3; ++n3)
    for (int n2 = -box; n2 <= box; ++n2)
      for (int n1 = -box; n1 <= box; ++n1) {
        const double len = std::sqrt(double(n1 * n1 + n2 * n2 + n3 * n3));
        if (len + s < real_cutoff) continue;
        tail += screened_value(d, eta, std::max(real_cutoff, len - s));
      }
  const double beyond = double(box) - s - std::sqrt(double(d));
  tail += std::pow(2.0, d - 1) * real_integral(d, eta, beyond);
  return tail;
}

double ewald_fourier_tail(int d, double eta, double fourier_cutoff) {
  const double r = fourier_cutoff - std::sqrt(double(d));
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(2.0, d - 1) * fourier_integral(d, eta, r);
}

EwaldParams EwaldParams::choose(int d, double eta, double accuracy) {
  EwaldParams p;
  p.eta = eta;
  p.accuracy = accuracy;
  // Leave two orders of magnitude for the gradient and for summation error.
  const double tol = 0.5e-2 * accuracy;
  double R = 0.01;
  while (ewald_real_tail(d, eta, R) > tol) R += 0.01;
  double K = 1.0;
  while (ewald_fourier_tail(d, eta, K) > tol) K += 0.01;
  p.real_cutoff = R;
  p.fourier_cutoff = K;
  return p;
}

EwaldKernel::EwaldKernel(int d, double accuracy)
    : EwaldKernel(d, EwaldParams::choose(d, 4.0, accuracy)) {}

EwaldKernel::EwaldKernel(int d, const EwaldParams& params) : d_(d), p_(params) {
  if (d != 2 && d != 3) throw Error(ErrorKind::InvalidConfiguration, "Ewald dimension must be 2 or 3");
  if (!(p_.eta > 0.0) || !(p_.real_cutoff > 0.0) || !(p_.fourier_cutoff > 0.0))
    throw Error(ErrorKind::InvalidConfiguration, "Ewald parameters must be positive");
  const double bound = ewald_real_tail(d, p_.eta, p_.real_cutoff) +
                       ewald_fourier_tail(d, p_.eta, p_.fourier_cutoff);
  if (!(bound <= p_.accuracy))
    throw Error(ErrorKind::InvalidConfiguration,
                "Ewald cutoffs too small: tail bound " + std::to_string(bound) + " exceeds accuracy");
  build();
}

EwaldKernel EwaldKernel::for_pairs(int d, double accuracy) {
  return EwaldKernel(d, EwaldParams::choose(d, 12.0, accuracy));
}

void EwaldKernel::build() {
  kmax_ = int(std::floor(p_.fourier_cutoff));
  const double K2 = p_.fourier_cutoff * p_.fourier_cutoff;
  const int k3max = d_ == 3 ? kmax_ : 0;
  for (int k1 = 0; k1 <= kmax_; ++k1)
    for (int k2 = -kmax_; k2 <= kmax_; ++k2)
      for (int k3 = -k3max; k3 <= k3max; ++k3) {
        if (!upper_half(k1, k2, k3)) continue;
        const int k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        if (double(k2sum) > K2) continue;
        modes_.push_back({{k1, k2, k3}, half_weight(p_.eta, k2sum)});
      }
}

double EwaldKernel::screened(double r) const { return screened_value(d_, p_.eta, r); }

double EwaldKernel::screened_derivative(double r) const {
  const double eta = p_.eta;
  const double gauss = std::exp(-eta * eta * r * r);
  if (d_ == 3)
    return -(std::erfc(eta * r) / (r * r) + 2.0 * eta / std::sqrt(pi) * gauss / r) / (4.0 * pi);
  return -gauss / (2.0 * pi * r);
}

Point min_image(const Point& x, int d) {
  Point y{0.0, 0.0, 0.0};
  for (int a = 0; a < d; ++a) {
    const double v = x[std::size_t(a)];
    y[std::size_t(a)] = v - std::floor(v + 0.5);
  }
  return y;
}

double periodic_norm(const Point& x, int d) { return norm_d(min_image(x, d), d); }

namespace {

struct AxisPhases {
  // e^{2 pi i k x_a} for k in [-kmax, kmax]
  std::vector<cplx> e[3];
};

AxisPhases axis_phases(const Point& x, int d, int kmax) {
  AxisPhases t;
  for (int a = 0; a < 3; ++a) {
    t.e[a].assign(std::size_t(2 * kmax + 1), cplx(1.0, 0.0));
    if (a >= d) continue;
    for (int k = -kmax; k <= kmax; ++k)
      t.e[a][std::size_t(k + kmax)] = std::polar(1.0, 2.0 * pi * k * x[std::size_t(a)]);
  }
  return t;
}

}  // namespace

double EwaldKernel::value(const Point& x0) const {
  const Point x = min_image(x0, d_);
  if (norm_d(x, d_) < 1e-12)
    throw Error(ErrorKind::OriginEvaluation, "Coulomb kernel evaluated at the origin");
  const double R = p_.real_cutoff;
  const int box = int(std::ceil(R)) + 1;
  const int b3 = d_ == 3 ? box : 0;
  double real = 0.0;
  for (int n3 = -b3; n3 <= b3; ++n3)
    for (int n2 = -box; n2 <= box; ++n2)
      for (int n1 = -box; n1 <= box; ++n1) {
        const Point y{x[0] + n1, x[1] + n2, x[2] + n3};
        const double r = norm_d(y, d_);
        if (r < R) real += screened(r);
      }
  const AxisPhases t = axis_phases(x, d_, kmax_);
  double four = 0.0;
  for (const Mode& m : modes_) {
    const cplx e = t.e[0][std::size_t(m.k[0] + kmax_)] * t.e[1][std::size_t(m.k[1] + kmax_)] *
                   t.e[2][std::size_t(m.k[2] + kmax_)];
    four += m.a * e.real();
  }
  return real + background() + four;
}

Point EwaldKernel::gradient(const Point& x0) const {
  const Point x = min_image(x0, d_);
  if (norm_d(x, d_) < 1e-12)
    throw Error(ErrorKind::OriginEvaluation, "Coulomb kernel gradient evaluated at the origin");
  const double R = p_.real_cutoff;
  const int box = int(std::ceil(R)) + 1;
  const int b3 = d_ == 3 ? box : 0;
  Point g{0.0, 0.0, 0.0};
  for (int n3 = -b3; n3 <= b3; ++n3)
    for (int n2 = -box; n2 <= box; ++n2)
      for (int n1 = -box; n1 <= box; ++n1) {
        const Point y{x[0] + n1, x[1] + n2, x[2] + n3};
        const double r = norm_d(y, d_);
        if (r >= R) continue;
        const double s = screened_derivative(r) / r;
        for (int a = 0; a < d_; ++a) g[std::size_t(a)] += s * y[std::size_t(a)];
      }
  const AxisPhases t = axis_phases(x, d_, kmax_);
  for (const Mode& m : modes_) {
    const cplx e = t.e[0][std::size_t(m.k[0] + kmax_)] * t.e[1][std::size_t(m.k[1] + kmax_)] *
                   t.e[2][std::size_t(m.k[2] + kmax_)];
    for (int a = 0; a < d_; ++a) g[std::size_t(a)] -= m.a * 2.0 * pi * m.k[a] * e.imag();
  }
  return g;
}

void PointConfiguration::validate() const {
  if (d != 2 && d != 3) throw Error(ErrorKind::InvalidConfiguration, "configuration dimension must be 2 or 3");
  if (x.size() < 2) throw Error(ErrorKind::InvalidConfiguration, "configuration needs N >= 2");
  for (const Point& p : x)
    for (int a = 0; a < d; ++a) {
      const double v = p[std::size_t(a)];
      if (!std::isfinite(v) || v < 0.0 || v >= 1.0)
        throw Error(ErrorKind::InvalidConfiguration, "coordinate outside [0,1)");
    }
}

double min_pair_distance(const PointConfiguration& c) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Point y{c.x[i][0] - c.x[j][0], c.x[i][1] - c.x[j][1], c.x[i][2] - c.x[j][2]};
      m = std::min(m, periodic_norm(y, c.d));
    }
  return m;
}

SpectralCoeffs convolve_kernel(const SpectralCoeffs& density) { return inverse_laplacian(density); }

RealField convolve_kernel(const RealField& density) {
  return inverse_real(convolve_kernel(transform(density)));
}

namespace {

// Per-axis phase rows e^{2 pi i k x_{i,a}}, row k + kmax contiguous in i.
struct StructureTables {
  int kmax;
  std::size_t n;
  AlignedVector<cplx> e[3];

  StructureTables(const PointConfiguration& c, int kmax_) : kmax(kmax_), n(c.size()) {
    const std::size_t rows = std::size_t(2 * kmax + 1);
    for (int a = 0; a < c.d; ++a) {
      e[a].resize(rows * n);
      for (std::size_t i = 0; i < n; ++i)
        for (int k = -kmax; k <= kmax; ++k)
          e[a][std::size_t(k + kmax) * n + i] = std::polar(1.0, 2.0 * pi * k * c.x[i][std::size_t(a)]);
    }
  }

  std::span<const cplx> row(int a, int k) const {
    return {e[a].data() + std::size_t(k + kmax) * n, n};
  }
};

// Calls fn(k1, k2, k3, weight, S-row-product P) where P(i) is the product of
// the axis-2 and axis-3 phases, for every half-space mode inside the cutoff.
template <class Fn>
void for_each_pair_mode(const EwaldKernel& kernel, const StructureTables& t, int d, Fn&& fn) {
  const int kmax = t.kmax;
  const double K2 = kernel.params().fourier_cutoff * kernel.params().fourier_cutoff;
  const int k3max = d == 3 ? kmax : 0;
  AlignedVector<cplx> p(t.n);
  for (int k3 = -k3max; k3 <= k3max; ++k3)
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      const auto r2 = t.row(1, k2);
      if (d == 3) {
        const auto r3 = t.row(2, k3);
        std::copy(r2.begin(), r2.end(), p.begin());
        simd::cmul(p, r3);
      } else {
        std::copy(r2.begin(), r2.end(), p.begin());
      }
      for (int k1 = 0; k1 <= kmax; ++k1) {
        if (!upper_half(k1, k2, k3)) continue;
        const int k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        if (double(k2sum) > K2) continue;
        fn(k1, k2, k3, half_weight(kernel.params().eta, k2sum), std::span<const cplx>(p.data(), p.size()));
      }
    }
}

template <class PairFn>
double sum_pairs(const EwaldKernel& kernel, const PointConfiguration& c, PairFn&& pair) {
  const int d = c.d;
  const double R = kernel.params().real_cutoff;
  const bool nearest_only = R < 0.5;
  const int box = int(std::ceil(R)) + 1;
  const int b3 = d == 3 ? box : 0;
  std::vector<double> partial(c.size(), 0.0);
  parallel_for(c.size(), [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const Point y0 = min_image(
          {c.x[i][0] - c.x[j][0], c.x[i][1] - c.x[j][1], c.x[i][2] - c.x[j][2]}, d);
      const double r0 = norm_d(y0, d);
      if (r0 < 1e-12)
        throw Error(ErrorKind::OriginEvaluation,
                    "coincident points " + std::to_string(i) + " and " + std::to_string(j));
      if (nearest_only) {
        if (r0 < R) s += pair(i, j, y0, r0);
        continue;
      }
      for (int n3 = -b3; n3 <= b3; ++n3)
        for (int n2 = -box; n2 <= box; ++n2)
          for (int n1 = -box; n1 <= box; ++n1) {
            const Point y{y0[0] + n1, y0[1] + n2, y0[2] + n3};
            const double r = norm_d(y, d);
            if (r < R) s += pair(i, j, y, r);
          }
    }
    partial[i] = s;
  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

void require_kernel_dim(const EwaldKernel& kernel, const PointConfiguration& c) {
  c.validate();
  if (kernel.dim() != c.d) throw Error(ErrorKind::InvalidConfiguration, "kernel and configuration dimensions differ");
}

}  // namespace

double pair_energy(const EwaldKernel& kernel, const PointConfiguration& c) {
  require_kernel_dim(kernel, c);
  const double N = double(c.size());
  const double real =
      2.0 * sum_pairs(kernel, c, [&](std::size_t, std::size_t, const Point&, double r) {
        return kernel.screened(r);
      });
  const StructureTables t(c, kernel.max_wavenumber());
  double four = 0.0;
  for_each_pair_mode(kernel, t, c.d, [&](int k1, int, int, double a, std::span<const cplx> p) {
    const cplx s = simd::cdot(t.row(0, k1), p);
    four += a * (std::norm(s) - N);
  });
  return real + N * (N - 1.0) * kernel.background() + four;
}

double pair_commutator(const EwaldKernel& kernel, const PointConfiguration& c,
                       const std::vector<Point>& v) {
  require_kernel_dim(kernel, c);
  if (v.size() != c.size()) throw Error(ErrorKind::InvalidArgument, "one vector per point required");
  const int d = c.d;
  const double real = 2.0 * sum_pairs(kernel, c, [&](std::size_t i, std::size_t j, const Point& y, double r) {
    const double s = kernel.screened_derivative(r) / r;
    double dot = 0.0;
    for (int a = 0; a < d; ++a)
      dot += (v[i][std::size_t(a)] - v[j][std::size_t(a)]) * y[std::size_t(a)];
    return s * dot;
  });
  std::vector<double> w[3];
  for (int a = 0; a < d; ++a) {
    w[a].resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[a][i] = v[i][std::size_t(a)];
  }
  const StructureTables t(c, kernel.max_wavenumber());
  double four = 0.0;
  for_each_pair_mode(kernel, t, d, [&](int k1, int k2, int k3, double a, std::span<const cplx> p) {
    const auto e1 = t.row(0, k1);
    const cplx s = simd::cdot(e1, p);
    const int k[3] = {k1, k2, k3};
    for (int al = 0; al < d; ++al) {
      if (k[al] == 0) continue;
      const cplx tv = simd::cdot_weighted(e1, p, w[al]);
      four -= a * 4.0 * pi * k[al] * (tv * std::conj(s)).imag();
    }
  });
  return real + four;
}

void require_probability_density(const RealField& mu) {
  const double m = mean(mu);
  if (!(std::abs(m - 1.0) <= 1e-8))
    throw Error(ErrorKind::MeanNotOne, "density mean " + std::to_string(m) + " is not 1");
}

double f_n(const EwaldKernel& kernel, const PointConfiguration& c, const RealField& mu) {
  require_kernel_dim(kernel, c);
  require_probability_density(mu);
  if (mu.grid.dim() != c.d) throw Error(ErrorKind::GridMismatch, "background grid dimension differs");
  const double N = double(c.size());
  const double pairs = pair_energy(kernel, c) / (N * N);
  const SpectralCoeffs mu_hat = transform(mu);
  const std::vector<double> vmu = evaluate_at(convolve_kernel(mu_hat), c.x);
  double cross = 0.0;
  for (double v : vmu) cross += v;
  return pairs - 2.0 / N * cross + hminus1_sq(mu_hat);
}

double f_n(const PointConfiguration& c, const RealField& mu) {
  return f_n(EwaldKernel::for_pairs(c.d), c, mu);
}

}  // namespace ell
