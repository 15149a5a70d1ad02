#pragma once

// Data-parallel inner loops shared by the spectral, Hartree and pair-sum code.
//
// Every kernel has a scalar reference implementation and an AVX2 variant.
// The variant in use is chosen once at runtime from the CPU features. Both
// implementations perform the same floating point operations in the same
// order (reductions run over four fixed lanes), so the results are
// bit-identical; tests/test_simd.cpp holds them to that.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ell::simd {

enum class Isa { Scalar, Avx2 };

/// Complex arrays are passed as interleaved (re, im) doubles; `n` counts
/// complex elements.
struct KernelTable {
  Isa isa;
  const char* name;
  // a[i] *= b[i]
  void (*cmul)(double* a, const double* b, std::size_t n);
  // a[i] *= m[i] with m real
  void (*rmul)(double* a, const double* m, std::size_t n);
  // acc[i] += w * |a[i]|^2
  void (*accumulate_abs2)(double* acc, const double* a, double w, std::size_t n);
  // sum |a[i]|^2
  double (*sum_abs2)(const double* a, std::size_t n);
  // out = sum a[i] * b[i] (no conjugation)
  void (*cdot)(const double* a, const double* b, std::size_t n, double* out);
  // out = sum w[i] * a[i] * b[i]
  void (*cdot_weighted)(const double* a, const double* b, const double* w, std::size_t n,
                        double* out);
};

const KernelTable& scalar_kernels();

/// Null when the running CPU (or the compiler) lacks AVX2.
const KernelTable* avx2_kernels();

bool supported(Isa isa);

/// The table used by the wrappers below. Defaults to the widest supported ISA;
/// ELL_SIMD=scalar in the environment forces the reference path.
const KernelTable& active();

/// Throws ell::Error(InvalidArgument) if the ISA is not supported here.
void select(Isa isa);

std::string_view isa_name(Isa isa);

namespace detail {
inline double* raw(std::span<std::complex<double>> v) {
  return reinterpret_cast<double*>(v.data());
}
inline const double* raw(std::span<const std::complex<double>> v) {
  return reinterpret_cast<const double*>(v.data());
}
}  // namespace detail

void cmul(std::span<std::complex<double>> a, std::span<const std::complex<double>> b);
void rmul(std::span<std::complex<double>> a, std::span<const double> m);
void accumulate_abs2(std::span<double> acc, std::span<const std::complex<double>> a, double w);
double sum_abs2(std::span<const std::complex<double>> a);
std::complex<double> cdot(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b);
std::complex<double> cdot_weighted(std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b,
                                   std::span<const double> w);

}  // namespace ell::simd
