#include "ell/grid.hpp"

#include <string>

#include "ell/error.hpp"

namespace ell {

GridSpec::GridSpec(int d, int n) : d_(d), n_(n) {
  if (d != 2 && d != 3)
    throw Error(ErrorKind::InvalidGrid, "dimension must be 2 or 3, got " + std::to_string(d));
  if (n < 8 || n % 2 != 0)
    throw Error(ErrorKind::InvalidGrid, "points per axis must be even and >= 8, got " + std::to_string(n));
  size_ = 1;
  for (int a = 0; a < d; ++a) size_ *= std::size_t(n);
}

std::array<int, 3> GridSpec::unravel(std::size_t idx) const {
  std::array<int, 3> j{0, 0, 0};
  for (int a = 0; a < d_; ++a) {
    j[a] = int(idx % std::size_t(n_));
    idx /= std::size_t(n_);
  }
  return j;
}

std::size_t GridSpec::ravel(const std::array<int, 3>& j) const {
  std::size_t idx = 0;
  for (int a = d_ - 1; a >= 0; --a) {
    int ja = j[a] % n_;
    if (ja < 0) ja += n_;
    idx = idx * std::size_t(n_) + std::size_t(ja);
  }
  return idx;
}

std::array<double, 3> GridSpec::coords(std::size_t idx) const {
  const auto j = unravel(idx);
  return {j[0] * h(), j[1] * h(), j[2] * h()};
}

std::array<int, 3> GridSpec::wavevector(std::size_t idx) const {
  const auto j = unravel(idx);
  std::array<int, 3> k{0, 0, 0};
  for (int a = 0; a < d_; ++a) k[a] = wavenumber(j[a]);
  return k;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (a != b) throw Error(ErrorKind::GridMismatch, what);
}

}  // namespace ell
