#pragma once

#include <cmath>
#include <utility>
#include <numbers>
#include <random>
#include <vector>

#include "ell/error.hpp"
#include "ell/field.hpp"
#include "ell/spectral.hpp"

namespace ell::testing {

constexpr double pi = std::numbers::pi;

// Real field with random coefficients on |k_i| <= K, assembled by direct
// summation (no FFT), mean `mean0`.
inline RealField random_bandlimited(const GridSpec& g, int K, unsigned seed, double mean0 = 0.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  struct Mode {
    int k[3];
    double a, b;
  };
  std::vector<Mode> modes;
  const int K3 = g.dim() == 3 ? K : 0;
  for (int k3 = -K3; k3 <= K3; ++k3)
    for (int k2 = -K; k2 <= K; ++k2)
      for (int k1 = -K; k1 <= K; ++k1) {
        if (k1 == 0 && k2 == 0 && k3 == 0) continue;
        modes.push_back({{k1, k2, k3}, nd(rng) / (1.0 + k1 * k1 + k2 * k2 + k3 * k3), nd(rng) / (1.0 + k1 * k1 + k2 * k2 + k3 * k3)});
      }
  RealField f(g, mean0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    double v = 0.0;
    for (const auto& m : modes) {
      const double ph = 2.0 * pi * (m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2]);
      v += m.a * std::cos(ph) + m.b * std::sin(ph);
    }
    f[i] += v;
  }
  return f;
}

inline double max_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Gauss-Legendre nodes and weights on [0, 1].
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(std::size_t(n), 0.0);
  w.assign(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[std::size_t(i)] = 0.5 * (1.0 - z);
    w[std::size_t(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Integral of fn(z) over the unit cell [-1/2, 1/2]^2, split into eight
// triangles with a vertex at z = 0 and mapped to squares (Duffy), so
// integrands with a 1/|z| singularity at the origin become smooth.
template <class Fn>
double duffy_cell(int order, Fn&& fn) {
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  double total = 0.0;
  for (int quad = 0; quad < 4; ++quad)
    for (int tri = 0; tri < 2; ++tri)
      for (std::size_t i = 0; i < gx.size(); ++i)
        for (std::size_t j = 0; j < gx.size(); ++j) {
          const double s = 0.5 * gx[i];
          double a = s, b = s * gx[j];
          if (tri) std::swap(a, b);
          const double sx = (quad & 1) ? -1.0 : 1.0, sy = (quad & 2) ? -1.0 : 1.0;
          total += 0.5 * gw[i] * gw[j] * s * fn(sx * a, sy * b);
        }
  return total;
}

}  // namespace ell::testing
