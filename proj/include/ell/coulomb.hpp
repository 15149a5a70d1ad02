#pragma once

#include <array>
#include <vector>

#include "ell/field.hpp"

namespace ell {

/// Ewald splitting of the periodic Coulomb kernel
///   V(x) = sum_{k != 0} e^{2 pi i k.x} / (4 pi^2 |k|^2),  -Delta V = delta - 1,
/// into screened images within `real_cutoff` and Gaussian-damped modes with
/// |k| <= `fourier_cutoff`.
struct EwaldParams {
  double eta = 0.0;
  double real_cutoff = 0.0;
  double fourier_cutoff = 0.0;
  double accuracy = 1e-12;

  /// Smallest cutoffs (on a 0.01 step) whose tail bounds meet the accuracy.
  static EwaldParams choose(int d, double eta, double accuracy = 1e-12);
};

/// Upper bounds on the neglected parts of the sum for |x| <= sqrt(d)/2.
double ewald_real_tail(int d, double eta, double real_cutoff);
double ewald_fourier_tail(int d, double eta, double fourier_cutoff);

class EwaldKernel {
public:
  /// Default splitting for point evaluation.
  explicit EwaldKernel(int d, double accuracy = 1e-12);
  /// Throws InvalidConfiguration when the tails exceed params.accuracy.
  EwaldKernel(int d, const EwaldParams& params);

  /// Large splitting width so that only the nearest image contributes in
  /// real space, as used by the pair sums.
  static EwaldKernel for_pairs(int d, double accuracy = 1e-12);

  int dim() const { return d_; }
  const EwaldParams& params() const { return p_; }

  /// Throws OriginEvaluation within 1e-12 of a lattice point.
  double value(const Point& x) const;
  Point gradient(const Point& x) const;

  // Pieces used by the pair sums.
  struct Mode {
    int k[3];
    double a;  // 2 * e^{-pi^2 |k|^2 / eta^2} / (4 pi^2 |k|^2), half-space only
  };
  const std::vector<Mode>& modes() const { return modes_; }
  int max_wavenumber() const { return kmax_; }
  /// Screened radial kernel g(r) and g'(r).
  double screened(double r) const;
  double screened_derivative(double r) const;
  /// The mean correction -1/(4 eta^2).
  double background() const { return -1.0 / (4.0 * p_.eta * p_.eta); }

private:
  void build();

  int d_;
  EwaldParams p_;
  std::vector<Mode> modes_;
  int kmax_ = 0;
};

/// Periodic displacement reduced to [-1/2, 1/2)^d.
Point min_image(const Point& x, int d);
double periodic_norm(const Point& x, int d);

/// N >= 2 pairwise-distinct points of [0,1)^d.
struct PointConfiguration {
  int d = 2;
  std::vector<Point> x;

  std::size_t size() const { return x.size(); }
  /// Throws InvalidConfiguration on N < 2, coordinates outside [0,1), or
  /// coincident points.
  void validate() const;
};

double min_pair_distance(const PointConfiguration& c);

/// Grid convolution V * rho via the Fourier multiplier; the mean is dropped.
RealField convolve_kernel(const RealField& density);
SpectralCoeffs convolve_kernel(const SpectralCoeffs& density);

/// sum_{i != j} V(x_i - x_j).
double pair_energy(const EwaldKernel& kernel, const PointConfiguration& c);
/// sum_{i != j} (v_i - v_j) . grad V(x_i - x_j).
double pair_commutator(const EwaldKernel& kernel, const PointConfiguration& c,
                       const std::vector<Point>& v);

/// Throws MeanNotOne unless |mean(mu) - 1| <= 1e-8.
void require_probability_density(const RealField& mu);

/// Renormalized energy
///   (1/N^2) sum_{i != j} V(x_i - x_j) - (2/N) sum_i (V * mu)(x_i) + int (V * mu) mu.
double f_n(const EwaldKernel& kernel, const PointConfiguration& c, const RealField& mu);
double f_n(const PointConfiguration& c, const RealField& mu);

}  // namespace ell
