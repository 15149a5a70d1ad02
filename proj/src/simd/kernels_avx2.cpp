#include "kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace ell::simd::avx2_impl {

bool compiled() { return true; }

void cmul(double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(a + 2 * i);
    const __m256d y = _mm256_loadu_pd(b + 2 * i);
    const __m256d ys = _mm256_permute_pd(y, 0b0101);
    const __m256d p1 = _mm256_mul_pd(x, y);   // ar*br, ai*bi
    const __m256d p2 = _mm256_mul_pd(x, ys);  // ar*bi, ai*br
    const __m256d re = _mm256_hsub_pd(p1, p1);
    const __m256d im = _mm256_hadd_pd(p2, p2);
    _mm256_storeu_pd(a + 2 * i, _mm256_blend_pd(re, im, 0b1010));
  }
  for (; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    a[2 * i] = ar * br - ai * bi;
    a[2 * i + 1] = ar * bi + ai * br;
  }
}

void rmul(double* a, const double* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(a + 2 * i);
    const __m256d w = _mm256_set_pd(m[i + 1], m[i + 1], m[i], m[i]);
    _mm256_storeu_pd(a + 2 * i, _mm256_mul_pd(x, w));
  }
  for (; i < n; ++i) {
    a[2 * i] *= m[i];
    a[2 * i + 1] *= m[i];
  }
}

void accumulate_abs2(double* acc, const double* a, double w, std::size_t n) {
  const __m128d wv = _mm_set1_pd(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d x = _mm256_loadu_pd(a + 2 * i);
    const __m256d sq = _mm256_mul_pd(x, x);
    const __m256d h = _mm256_hadd_pd(sq, sq);  // s0, s0, s1, s1
    const __m128d s = _mm256_castpd256_pd128(_mm256_permute4x64_pd(h, 0b1000));
    _mm_storeu_pd(acc + i, _mm_add_pd(_mm_loadu_pd(acc + i), _mm_mul_pd(s, wv)));
  }
  for (; i < n; ++i) {
    const double s = a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1];
    acc[i] += s * w;
  }
}

namespace {

inline void lanes(__m256d v, double out[4]) { _mm256_storeu_pd(out, v); }

}  // namespace

double sum_abs2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d x = _mm256_loadu_pd(a + 4 * p);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
  }
  double l[4];
  lanes(acc, l);
  if (n % 2) {
    const double* x = a + 4 * pairs;
    l[0] += x[0] * x[0];
    l[1] += x[1] * x[1];
  }
  return (l[0] + l[1]) + (l[2] + l[3]);
}

void cdot(const double* a, const double* b, std::size_t n, double* out) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d x = _mm256_loadu_pd(a + 4 * p);
    const __m256d y = _mm256_loadu_pd(b + 4 * p);
    re = _mm256_add_pd(re, _mm256_mul_pd(x, y));
    im = _mm256_add_pd(im, _mm256_mul_pd(x, _mm256_permute_pd(y, 0b0101)));
  }
  double r[4], m[4];
  lanes(re, r);
  lanes(im, m);
  if (n % 2) {
    const double* x = a + 4 * pairs;
    const double* y = b + 4 * pairs;
    r[0] += x[0] * y[0];
    r[1] += x[1] * y[1];
    m[0] += x[0] * y[1];
    m[1] += x[1] * y[0];
  }
  out[0] = (r[0] - r[1]) + (r[2] - r[3]);
  out[1] = (m[0] + m[1]) + (m[2] + m[3]);
}

void cdot_weighted(const double* a, const double* b, const double* w, std::size_t n, double* out) {
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  const std::size_t pairs = n / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d wv = _mm256_set_pd(w[2 * p + 1], w[2 * p + 1], w[2 * p], w[2 * p]);
    const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(a + 4 * p), wv);
    const __m256d y = _mm256_loadu_pd(b + 4 * p);
    re = _mm256_add_pd(re, _mm256_mul_pd(x, y));
    im = _mm256_add_pd(im, _mm256_mul_pd(x, _mm256_permute_pd(y, 0b0101)));
  }
  double r[4], m[4];
  lanes(re, r);
  lanes(im, m);
  if (n % 2) {
    const double* x = a + 4 * pairs;
    const double* y = b + 4 * pairs;
    const double w0 = w[2 * pairs];
    const double x0 = x[0] * w0, x1 = x[1] * w0;
    r[0] += x0 * y[0];
    r[1] += x1 * y[1];
    m[0] += x0 * y[1];
    m[1] += x1 * y[0];
  }
  out[0] = (r[0] - r[1]) + (r[2] - r[3]);
  out[1] = (m[0] + m[1]) + (m[2] + m[3]);
}

}  // namespace ell::simd::avx2_impl

#else

namespace ell::simd::avx2_impl {
bool compiled() { return false; }
void cmul(double*, const double*, std::size_t) {}
void rmul(double*, const double*, std::size_t) {}
void accumulate_abs2(double*, const double*, double, std::size_t) {}
double sum_abs2(const double*, std::size_t) { return 0.0; }
void cdot(const double*, const double*, std::size_t, double*) {}
void cdot_weighted(const double*, const double*, const double*, std::size_t, double*) {}
}  // namespace ell::simd::avx2_impl

#endif
