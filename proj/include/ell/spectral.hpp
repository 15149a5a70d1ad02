#pragma once

#include <functional>
#include <vector>

#include "ell/field.hpp"

namespace ell {

SpectralCoeffs transform(const RealField& f);
SpectralCoeffs transform(const ComplexField& f);
ComplexField inverse(const SpectralCoeffs& c);
/// Real part of the inverse transform; use for Hermitian coefficients.
RealField inverse_real(const SpectralCoeffs& c);

/// Calls fn(index, kx, ky, kz) for every mode in storage order.
void for_each_mode(const GridSpec& g, const std::function<void(std::size_t, int, int, int)>& fn);

/// Multiplier table m(k) in storage order.
AlignedVector<double> multiplier(const GridSpec& g,
                                 const std::function<double(int, int, int)>& m);

/// Multiplies each coefficient by 2 pi i k_axis; Nyquist modes are zeroed.
SpectralCoeffs derivative(const SpectralCoeffs& c, int axis);
RealField derivative(const RealField& f, int axis);
ComplexField derivative(const ComplexField& f, int axis);
VectorField gradient(const RealField& f);
std::vector<ComplexField> gradient(const ComplexField& f);
RealField divergence(const VectorField& v);
RealField laplacian(const RealField& f);

/// Throws NonZeroMean when |mean(f)| > 1e-10 * max|f|.
void require_mean_zero(const RealField& f, const char* what);

/// Solution of -Delta u = f with mean(u) = 0. Requires mean-zero f.
RealField inverse_laplacian(const RealField& f);
/// Coefficientwise 1/(4 pi^2 |k|^2), k = 0 dropped.
SpectralCoeffs inverse_laplacian(const SpectralCoeffs& c);

/// True when every |k_i| <= n/3.
bool resolved_mode(const GridSpec& g, int k1, int k2, int k3);
SpectralCoeffs dealias(SpectralCoeffs c);
RealField dealias(const RealField& f);
/// Product of the dealiased factors, projected back onto resolved modes.
RealField dealiased_product(const RealField& a, const RealField& b);

/// (sum_k (1 + 4 pi^2 |k|^2)^s |c(k)|^2)^{1/2}
double sobolev_norm(const SpectralCoeffs& c, double s);
double sobolev_norm(const RealField& f, double s);
/// (sum_{k != 0} |c(k)|^2 / (4 pi^2 |k|^2))^{1/2}; requires mean-zero f.
double hminus1_norm(const RealField& f);
/// Squared homogeneous H^-1 norm ignoring the k = 0 mode.
double hminus1_sq(const SpectralCoeffs& c);

/// Off-grid values Re sum_k c(k) e^{2 pi i k.x} of the interpolant, one per
/// point, summed over every stored mode (the Nyquist bin is read as +n/2).
std::vector<double> evaluate_at(const SpectralCoeffs& c, const std::vector<Point>& pts);

}  // namespace ell
