#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ell/coulomb.hpp"
#include "ell/field.hpp"

namespace ell {

/// Independent generator for draw `index` under `seed`; streams do not depend
/// on how draws are distributed over workers.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);
/// Uniform on [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Draws points from the trigonometric interpolant of a grid density by
/// sequential conditional inverse CDFs, slowest axis first.
class DensitySampler {
public:
  /// Throws NegativeDensity if any node value is below -1e-12 and MeanNotOne
  /// unless the mean is 1 to 1e-8.
  explicit DensitySampler(const RealField& rho);

  Point sample(std::mt19937_64& rng) const;
  PointConfiguration sample(std::size_t N, std::mt19937_64& rng) const;
  const GridSpec& grid() const { return c_.grid; }

private:
  SpectralCoeffs c_;
};

/// Inverse of the CDF of the 1D trigonometric polynomial
/// Re sum_k a_k e^{2 pi i k x} (a in FFT order, total mass a_0 > 0) at u.
double invert_trig_cdf(const std::vector<cplx>& a, double u);

}  // namespace ell
