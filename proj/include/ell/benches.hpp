#pragma once

#include <cstdint>
#include <string>

#include "ell/coulomb.hpp"
#include "ell/field.hpp"

namespace ell {

/// (1 + log N [d = 2]) / N^{2/d}
double error_scale(std::size_t N, int d);

struct InequalityBenchReport {
  std::string kind;  // "commutator", "coercivity" or "energy"
  std::size_t N = 0;
  int d = 0;
  double lhs = 0.0;
  double f_n = 0.0;
  double error_scale = 0.0;
  double fitted_constant = 0.0;
  std::uint64_t seed = 0;
};

/// N i.i.d. points from rho, stream (seed, 0).
PointConfiguration sample_configuration(const RealField& rho, std::size_t N, std::uint64_t seed);

/// lhs = int int_{x != y} (v(x) - v(y)) . grad V(x - y) d(mu_N - mu)^2;
/// fitted = |lhs| / (|grad v|_inf (f_n + (1 + |mu|_inf) scale)).
InequalityBenchReport commutator_bench(const EwaldKernel& kernel, const PointConfiguration& c,
                                       const VectorField& v, const RealField& mu, std::uint64_t seed = 0);

/// lhs = |int phi d(mu_N - mu)|;
/// fitted = lhs / (|grad phi|_inf N^{-1/d} + |grad phi|_2 sqrt(max(f_n + (1 + |mu|_inf) scale, 0))).
InequalityBenchReport coercivity_bench(const EwaldKernel& kernel, const PointConfiguration& c,
                                       const RealField& phi, const RealField& mu, std::uint64_t seed = 0);

/// lhs = f_n; fitted = max(-f_n, 0) / scale, the constant a lower bound
/// f_n >= -C scale needs for this configuration.
InequalityBenchReport energy_bench(const EwaldKernel& kernel, const PointConfiguration& c, const RealField& mu,
                                   std::uint64_t seed = 0);

}  // namespace ell
