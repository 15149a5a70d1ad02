#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <new>
#include <span>
#include <vector>

#include "ell/grid.hpp"

namespace ell {

using cplx = std::complex<double>;

template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

/// Samples on a torus grid, read as a trigonometric interpolant.
template <class T>
struct Field {
  GridSpec grid;
  AlignedVector<T> values;

  Field() = default;
  explicit Field(const GridSpec& g, T fill = T{}) : grid(g), values(g.size(), fill) {}

  std::size_t size() const { return values.size(); }
  T& operator[](std::size_t i) { return values[i]; }
  const T& operator[](std::size_t i) const { return values[i]; }
  T* data() { return values.data(); }
  const T* data() const { return values.data(); }
  std::span<T> span() { return {values.data(), values.size()}; }
  std::span<const T> span() const { return {values.data(), values.size()}; }
};

using RealField = Field<double>;
using ComplexField = Field<cplx>;

/// Coefficients c(k) of f(x) = sum c(k) e^{2 pi i k.x}, stored in FFT order.
struct SpectralCoeffs {
  GridSpec grid;
  AlignedVector<cplx> c;

  SpectralCoeffs() = default;
  explicit SpectralCoeffs(const GridSpec& g) : grid(g), c(g.size(), cplx{}) {}

  std::size_t size() const { return c.size(); }
  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }
  /// Coefficient of signed wave vector k (components taken mod n).
  cplx at(int k1, int k2, int k3 = 0) const;
};

struct VectorField {
  std::vector<RealField> comp;

  VectorField() = default;
  explicit VectorField(const GridSpec& g) : comp(std::size_t(g.dim()), RealField(g)) {}

  const GridSpec& grid() const { return comp.front().grid; }
  int dim() const { return int(comp.size()); }
  RealField& operator[](int a) { return comp[std::size_t(a)]; }
  const RealField& operator[](int a) const { return comp[std::size_t(a)]; }
};

// Elementwise helpers.
RealField sample(const GridSpec& g, const std::function<double(double, double, double)>& f);
ComplexField sample_complex(const GridSpec& g,
                            const std::function<cplx(double, double, double)>& f);
VectorField sample_vector(const GridSpec& g,
                          const std::function<std::array<double, 3>(double, double, double)>& f);

/// Node average; exact integral for band-limited data.
double mean(const RealField& f);
cplx mean(const ComplexField& f);
double max_abs(const RealField& f);
double max_abs(const ComplexField& f);
/// Pointwise max over x of |v(x)| (Euclidean norm across components).
double max_norm(const VectorField& v);
/// Node-average L2 norm.
double l2_norm(const RealField& f);
double l2_norm(const ComplexField& f);
/// Node average of f*g.
double inner(const RealField& f, const RealField& g);

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);
RealField add_scalar(const RealField& a, double s);
RealField real_part(const ComplexField& f);
ComplexField to_complex(const RealField& f);
/// Pointwise product (not dealiased).
RealField pointwise(const RealField& a, const RealField& b);

}  // namespace ell
