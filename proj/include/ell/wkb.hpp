#pragma once

#include <optional>

#include "ell/hartree.hpp"

namespace ell {

/// Periodized Gaussian packet
///   phi(x) = C sum_{m in Z^d} exp(-|x - x0 + m|^2 / (4 sigma^2)) exp(i v0 . (x - x0 + m) / hbar).
struct PacketSpec {
  Point center{0.0, 0.0, 0.0};
  Point momentum{0.0, 0.0, 0.0};
  double sigma = 0.1;
  /// Throws InvalidConfiguration unless 0 < sigma <= 1/4.
  void validate() const;
};

/// Largest packet wave number (|v0| + 4 hbar / sigma) / hbar must fit within
/// the dealiased band 2 pi n / 3, and sigma must span two grid cells.
/// Throws ResolutionGuard otherwise.
void require_packet_resolved(const PacketSpec& spec, const GridSpec& g, const PhysicalParams& p);

/// Unit-norm packet. Shifting the center by a whole grid vector shifts the
/// samples exactly.
ComplexField gaussian_packet(const PacketSpec& spec, const GridSpec& g, const PhysicalParams& p);

struct MixtureOptions {
  int packets_per_axis = 16;
  std::optional<double> sigma;  // defaults to sqrt(hbar)
};

/// m^d packets centred on the lattice j/m with weights proportional to
/// rho0 there and momenta u0 there. rho0 must be positive with mean 1.
MixedState monokinetic_mixture(const VectorField& u0, const RealField& rho0, const PhysicalParams& p,
                               const MixtureOptions& opt);

/// kinetic_term / (hbar + sigma^2 |grad u0|_inf^2) for a mixture.
double mixture_kinetic_constant(double kinetic, double hbar, double sigma, double gradu_inf);

/// 1 + eps^2 U floored at 1e-3 and renormalized to mean 1.
RealField default_rho0(const RealField& corrector, double eps);

}  // namespace ell
