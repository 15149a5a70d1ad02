#include "kernels.hpp"

// Reference implementations. Reductions keep four partial sums that mirror
// the lanes of a 256-bit register holding two complex numbers.

namespace ell::simd::scalar_impl {

void cmul(double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    a[2 * i] = ar * br - ai * bi;
    a[2 * i + 1] = ar * bi + ai * br;
  }
}

void rmul(double* a, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    a[2 * i] *= m[i];
    a[2 * i + 1] *= m[i];
  }
}

void accumulate_abs2(double* acc, const double* a, double w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1];
    acc[i] += s * w;
  }
}

double sum_abs2(const double* a, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double* x = a + 4 * p;
    for (int l = 0; l < 4; ++l) lane[l] += x[l] * x[l];
  }
  if (n % 2) {
    const double* x = a + 4 * pairs;
    lane[0] += x[0] * x[0];
    lane[1] += x[1] * x[1];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

namespace {

void cdot_lanes(const double* a, const double* b, std::size_t n, double re[4], double im[4]) {
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double* x = a + 4 * p;
    const double* y = b + 4 * p;
    re[0] += x[0] * y[0];
    re[1] += x[1] * y[1];
    re[2] += x[2] * y[2];
    re[3] += x[3] * y[3];
    im[0] += x[0] * y[1];
    im[1] += x[1] * y[0];
    im[2] += x[2] * y[3];
    im[3] += x[3] * y[2];
  }
  if (n % 2) {
    const double* x = a + 4 * pairs;
    const double* y = b + 4 * pairs;
    re[0] += x[0] * y[0];
    re[1] += x[1] * y[1];
    im[0] += x[0] * y[1];
    im[1] += x[1] * y[0];
  }
}

}  // namespace

void cdot(const double* a, const double* b, std::size_t n, double* out) {
  double re[4] = {0.0, 0.0, 0.0, 0.0};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  cdot_lanes(a, b, n, re, im);
  out[0] = (re[0] - re[1]) + (re[2] - re[3]);
  out[1] = (im[0] + im[1]) + (im[2] + im[3]);
}

void cdot_weighted(const double* a, const double* b, const double* w, std::size_t n, double* out) {
  double re[4] = {0.0, 0.0, 0.0, 0.0};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const double* x = a + 4 * p;
    const double* y = b + 4 * p;
    const double w0 = w[2 * p], w1 = w[2 * p + 1];
    const double x0 = x[0] * w0, x1 = x[1] * w0, x2 = x[2] * w1, x3 = x[3] * w1;
    re[0] += x0 * y[0];
    re[1] += x1 * y[1];
    re[2] += x2 * y[2];
    re[3] += x3 * y[3];
    im[0] += x0 * y[1];
    im[1] += x1 * y[0];
    im[2] += x2 * y[3];
    im[3] += x3 * y[2];
  }
  if (n % 2) {
    const double* x = a + 4 * pairs;
    const double* y = b + 4 * pairs;
    const double w0 = w[2 * pairs];
    const double x0 = x[0] * w0, x1 = x[1] * w0;
    re[0] += x0 * y[0];
    re[1] += x1 * y[1];
    im[0] += x0 * y[1];
    im[1] += x1 * y[0];
  }
  out[0] = (re[0] - re[1]) + (re[2] - re[3]);
  out[1] = (im[0] + im[1]) + (im[2] + im[3]);
}

}  // namespace ell::simd::scalar_impl
