#include "ell/field.hpp"

#include <algorithm>
#include <cmath>

#include "ell/simd.hpp"

namespace ell {

cplx SpectralCoeffs::at(int k1, int k2, int k3) const {
  return c[grid.ravel({k1, k2, k3})];
}

RealField sample(const GridSpec& g, const std::function<double(double, double, double)>& f) {
  RealField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    out[i] = f(x[0], x[1], x[2]);
  }
  return out;
}

ComplexField sample_complex(const GridSpec& g,
                            const std::function<cplx(double, double, double)>& f) {
  ComplexField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    out[i] = f(x[0], x[1], x[2]);
  }
  return out;
}

VectorField sample_vector(const GridSpec& g,
                          const std::function<std::array<double, 3>(double, double, double)>& f) {
  VectorField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    const auto v = f(x[0], x[1], x[2]);
    for (int a = 0; a < g.dim(); ++a) out[a][i] = v[std::size_t(a)];
  }
  return out;
}

// Four interleaved partial sums, combined pairwise, to keep long sums tight.
static double lane_sum(const double* x, std::size_t n) {
  double s[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) s[l] += x[i + l];
  for (; i < n; ++i) s[0] += x[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double mean(const RealField& f) { return lane_sum(f.data(), f.size()) / double(f.size()); }

cplx mean(const ComplexField& f) {
  const double* p = reinterpret_cast<const double*>(f.data());
  double re[4] = {0, 0, 0, 0}, im[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  const std::size_t n = f.size();
  for (; i + 4 <= n; i += 4)
    for (int l = 0; l < 4; ++l) {
      re[l] += p[2 * (i + l)];
      im[l] += p[2 * (i + l) + 1];
    }
  for (; i < n; ++i) {
    re[0] += p[2 * i];
    im[0] += p[2 * i + 1];
  }
  return cplx((re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])) / double(n);
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const cplx& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField& v) {
  double m = 0.0;
  const std::size_t n = v.grid().size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& c : v.comp) s += c[i] * c[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double l2_norm(const RealField& f) {
  AlignedVector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(lane_sum(sq.data(), sq.size()) / double(f.size()));
}

double l2_norm(const ComplexField& f) {
  return std::sqrt(simd::sum_abs2(f.span()) / double(f.size()));
}

double inner(const RealField& f, const RealField& g) {
  require_same_grid(f.grid, g.grid, "inner");
  AlignedVector<double> p(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) p[i] = f[i] * g[i];
  return lane_sum(p.data(), p.size()) / double(f.size());
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "operator+");
  RealField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "operator-");
  RealField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RealField operator*(double s, const RealField& a) {
  RealField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

RealField add_scalar(const RealField& a, double s) {
  RealField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s;
  return out;
}

RealField real_part(const ComplexField& f) {
  RealField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

ComplexField to_complex(const RealField& f) {
  ComplexField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = cplx(f[i], 0.0);
  return out;
}

RealField pointwise(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "pointwise");
  RealField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace ell
