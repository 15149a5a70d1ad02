#pragma once

#include <array>
#include <cstddef>

namespace ell {

using Point = std::array<double, 3>;

/// Uniform grid on the unit torus. Node (j1, ..., jd) sits at j*h and is
/// stored at linear index j1 + n*j2 + n^2*j3 (axis 1 fastest).
class GridSpec {
public:
  GridSpec() = default;
  /// Throws InvalidGrid unless d is 2 or 3 and n is even and >= 8.
  GridSpec(int d, int n);

  int dim() const { return d_; }
  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return axis == 0 ? 1 : axis == 1 ? std::size_t(n_) : std::size_t(n_) * n_; }

  /// Signed wave number of FFT bin j; the Nyquist bin maps to +n/2.
  int wavenumber(int j) const { return j <= n_ / 2 ? j : j - n_; }
  bool is_nyquist(int j) const { return j == n_ / 2; }

  /// Per-axis node indices of a linear index (unused axes are 0).
  std::array<int, 3> unravel(std::size_t idx) const;
  std::size_t ravel(const std::array<int, 3>& j) const;
  std::array<double, 3> coords(std::size_t idx) const;
  /// Signed wave vector of a linear FFT index.
  std::array<int, 3> wavevector(std::size_t idx) const;

  bool operator==(const GridSpec& o) const { return d_ == o.d_ && n_ == o.n_; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

private:
  int d_ = 0;
  int n_ = 0;
  std::size_t size_ = 0;
};

/// Throws GridMismatch when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace ell
