#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ell/coulomb.hpp"
#include "ell/euler.hpp"
#include "ell/hartree.hpp"

namespace ell {

/// sum_m w_m int |(-i hbar grad - u) phi_m|^2, node quadrature.
double kinetic_term(const MixedState& s, const VectorField& u, const PhysicalParams& p);

/// eps^{-2} |rho - 1 - eps^2 U|^2 in homogeneous H^-1. Throws NonZeroMean.
double potential_term(const RealField& rho, const RealField& corrector, const PhysicalParams& p);
double potential_term(const RealField& rho, const FlowSnapshot& snap, const PhysicalParams& p);

struct DeviationNorms {
  double dev_rho = 0.0;  // |rho - 1|_{H^-3}
  double dev_J = 0.0;    // root-sum-square of |J^a - u^a|_{H^-3}
};
DeviationNorms deviation_norms(const RealField& rho, const VectorField& J, const VectorField& u);
DeviationNorms deviation_norms(const MixedState& s, const FlowSnapshot& snap, const PhysicalParams& p);

struct EnergyReport {
  double t = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double gronwall_rhs = 0.0;
  double dev_rho = 0.0;
  double dev_J = 0.0;
};

/// Both terms and the deviation norms; gronwall_rhs is left at 0.
EnergyReport modulated_energy(const MixedState& s, const FlowSnapshot& snap, const PhysicalParams& p);

struct FlowNorms {
  double t = 0.0;
  double gradu_inf = 0.0;
  double c11 = 0.0;
};

struct GronwallConstants {
  double c_d = 1.0;
  double c_da = 1.0;
};

/// (g0 + c_da eps^2 int_0^t c11^6) exp(c_d int_0^t (1 + |grad u|_inf)),
/// trapezoidal in time with linear interpolation at t. Throws EmptyHistory,
/// or InvalidArgument if the history does not start at 0, is not increasing,
/// or ends before t.
double gronwall_rhs(double g0, const std::vector<FlowNorms>& history, double eps, double t,
                    const GronwallConstants& c);

/// ((N-1)/N) int (V*rho) rho - 2 int (V*mu) rho + int (V*mu) mu, spectrally.
double fn_expectation_closed_form(const RealField& rho, const RealField& mu, double N);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Sample mean of f_n over S independent N-point draws from rho^{(x)N}.
/// Draw s uses stream_rng(seed, s). Throws InvalidArgument for S < 2.
McEstimate fn_expectation_monte_carlo(const RealField& rho, const RealField& mu, std::size_t N,
                                      std::size_t S, std::uint64_t seed);

}  // namespace ell
