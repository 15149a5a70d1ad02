#include "ell/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ell/error.hpp"
#include "ell/fft.hpp"
#include "ell/parallel.hpp"
#include "ell/simd.hpp"

namespace ell {

using std::numbers::pi;

SpectralCoeffs transform(const RealField& f) {
  SpectralCoeffs c(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = cplx(f[i], 0.0);
  fft::forward(f.grid, c.c.data(), c.c.data());
  return c;
}

SpectralCoeffs transform(const ComplexField& f) {
  SpectralCoeffs c(f.grid);
  fft::forward(f.grid, f.data(), c.c.data());
  return c;
}

ComplexField inverse(const SpectralCoeffs& c) {
  ComplexField f(c.grid);
  fft::backward(c.grid, c.c.data(), f.data());
  return f;
}

RealField inverse_real(const SpectralCoeffs& c) { return real_part(inverse(c)); }

void for_each_mode(const GridSpec& g, const std::function<void(std::size_t, int, int, int)>& fn) {
  const int n = g.n();
  const int n3 = g.dim() == 3 ? n : 1;
  std::size_t idx = 0;
  for (int j3 = 0; j3 < n3; ++j3) {
    const int k3 = g.dim() == 3 ? g.wavenumber(j3) : 0;
    for (int j2 = 0; j2 < n; ++j2) {
      const int k2 = g.wavenumber(j2);
      for (int j1 = 0; j1 < n; ++j1) fn(idx++, g.wavenumber(j1), k2, k3);
    }
  }
}

AlignedVector<double> multiplier(const GridSpec& g, const std::function<double(int, int, int)>& m) {
  AlignedVector<double> out(g.size());
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) { out[i] = m(k1, k2, k3); });
  return out;
}

SpectralCoeffs derivative(const SpectralCoeffs& c, int axis) {
  const GridSpec& g = c.grid;
  const int half = g.n() / 2;
  SpectralCoeffs out(g);
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    const int k = axis == 0 ? k1 : axis == 1 ? k2 : k3;
    out[i] = (k == half) ? cplx{} : c[i] * cplx(0.0, 2.0 * pi * k);
  });
  return out;
}

RealField derivative(const RealField& f, int axis) {
  return inverse_real(derivative(transform(f), axis));
}

ComplexField derivative(const ComplexField& f, int axis) {
  return inverse(derivative(transform(f), axis));
}

VectorField gradient(const RealField& f) {
  const SpectralCoeffs c = transform(f);
  VectorField g;
  for (int a = 0; a < f.grid.dim(); ++a) g.comp.push_back(inverse_real(derivative(c, a)));
  return g;
}

std::vector<ComplexField> gradient(const ComplexField& f) {
  const SpectralCoeffs c = transform(f);
  std::vector<ComplexField> g;
  for (int a = 0; a < f.grid.dim(); ++a) g.push_back(inverse(derivative(c, a)));
  return g;
}

RealField divergence(const VectorField& v) {
  const GridSpec& g = v.grid();
  SpectralCoeffs acc(g);
  for (int a = 0; a < v.dim(); ++a) {
    require_same_grid(g, v[a].grid, "divergence");
    const SpectralCoeffs d = derivative(transform(v[a]), a);
    for (std::size_t i = 0; i < g.size(); ++i) acc[i] += d[i];
  }
  return inverse_real(acc);
}

RealField laplacian(const RealField& f) {
  SpectralCoeffs c = transform(f);
  const auto m = multiplier(f.grid, [](int k1, int k2, int k3) {
    return -4.0 * pi * pi * double(k1 * k1 + k2 * k2 + k3 * k3);
  });
  simd::rmul(c.c, m);
  return inverse_real(c);
}

void require_mean_zero(const RealField& f, const char* what) {
  const double m = mean(f);
  if (std::abs(m) > 1e-10 * max_abs(f))
    throw Error(ErrorKind::NonZeroMean,
                std::string(what) + ": mean " + std::to_string(m) + " is not zero");
}

namespace {

const AlignedVector<double>& inverse_laplacian_table(const GridSpec& g) {
  thread_local GridSpec cached;
  thread_local AlignedVector<double> table;
  if (cached != g) {
    table = multiplier(g, [](int k1, int k2, int k3) {
      const int k2sum = k1 * k1 + k2 * k2 + k3 * k3;
      return k2sum == 0 ? 0.0 : 1.0 / (4.0 * pi * pi * double(k2sum));
    });
    cached = g;
  }
  return table;
}

}  // namespace

SpectralCoeffs inverse_laplacian(const SpectralCoeffs& c) {
  SpectralCoeffs out = c;
  simd::rmul(out.c, inverse_laplacian_table(c.grid));
  return out;
}

RealField inverse_laplacian(const RealField& f) {
  require_mean_zero(f, "inverse_laplacian");
  return inverse_real(inverse_laplacian(transform(f)));
}

bool resolved_mode(const GridSpec& g, int k1, int k2, int k3) {
  const int cut = g.n() / 3;
  return std::abs(k1) <= cut && std::abs(k2) <= cut && std::abs(k3) <= cut;
}

SpectralCoeffs dealias(SpectralCoeffs c) {
  const GridSpec g = c.grid;
  for_each_mode(g, [&](std::size_t i, int k1, int k2, int k3) {
    if (!resolved_mode(g, k1, k2, k3)) c[i] = cplx{};
  });
  return c;
}

RealField dealias(const RealField& f) { return inverse_real(dealias(transform(f))); }

RealField dealiased_product(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "dealiased_product");
  const RealField da = dealias(a), db = dealias(b);
  return dealias(pointwise(da, db));
}

double sobolev_norm(const SpectralCoeffs& c, double s) {
  double sum = 0.0;
  for_each_mode(c.grid, [&](std::size_t i, int k1, int k2, int k3) {
    const double br = 1.0 + 4.0 * pi * pi * double(k1 * k1 + k2 * k2 + k3 * k3);
    sum += std::pow(br, s) * std::norm(c[i]);
  });
  return std::sqrt(sum);
}

double sobolev_norm(const RealField& f, double s) { return sobolev_norm(transform(f), s); }

double hminus1_sq(const SpectralCoeffs& c) {
  const auto& m = inverse_laplacian_table(c.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += m[i] * std::norm(c[i]);
  return sum;
}

double hminus1_norm(const RealField& f) {
  require_mean_zero(f, "hminus1_norm");
  return std::sqrt(hminus1_sq(transform(f)));
}

}  // namespace ell

namespace ell {

std::vector<double> evaluate_at(const SpectralCoeffs& c, const std::vector<Point>& pts) {
  const GridSpec& g = c.grid;
  const int n = g.n();
  const int d = g.dim();
  std::vector<double> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t p) {
    AlignedVector<cplx> e[3];
    for (int a = 0; a < d; ++a) {
      e[a].resize(std::size_t(n));
      for (int j = 0; j < n; ++j)
        e[a][std::size_t(j)] = std::polar(1.0, 2.0 * pi * g.wavenumber(j) * pts[p][std::size_t(a)]);
    }
    const std::span<const cplx> e1(e[0].data(), std::size_t(n));
    cplx total{};
    const int n3 = d == 3 ? n : 1;
    for (int j3 = 0; j3 < n3; ++j3) {
      cplx plane{};
      for (int j2 = 0; j2 < n; ++j2) {
        const std::size_t row = (std::size_t(j3) * n + std::size_t(j2)) * std::size_t(n);
        const cplx s = simd::cdot(std::span<const cplx>(c.c.data() + row, std::size_t(n)), e1);
        plane += s * e[1][std::size_t(j2)];
      }
      total += d == 3 ? plane * e[2][std::size_t(j3)] : plane;
    }
    out[p] = total.real();
  });
  return out;
}

}  // namespace ell
