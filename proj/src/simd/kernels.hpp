#pragma once

// Raw kernel entry points. Kept free of standard library templates so the
// AVX2 translation unit cannot leak wide instructions into inline code shared
// with the rest of the build.

#include <cstddef>

namespace ell::simd::scalar_impl {
void cmul(double* a, const double* b, std::size_t n);
void rmul(double* a, const double* m, std::size_t n);
void accumulate_abs2(double* acc, const double* a, double w, std::size_t n);
double sum_abs2(const double* a, std::size_t n);
void cdot(const double* a, const double* b, std::size_t n, double* out);
void cdot_weighted(const double* a, const double* b, const double* w, std::size_t n, double* out);
}  // namespace ell::simd::scalar_impl

namespace ell::simd::avx2_impl {
bool compiled();
void cmul(double* a, const double* b, std::size_t n);
void rmul(double* a, const double* m, std::size_t n);
void accumulate_abs2(double* acc, const double* a, double w, std::size_t n);
double sum_abs2(const double* a, std::size_t n);
void cdot(const double* a, const double* b, std::size_t n, double* out);
void cdot_weighted(const double* a, const double* b, const double* w, std::size_t n, double* out);
}  // namespace ell::simd::avx2_impl
