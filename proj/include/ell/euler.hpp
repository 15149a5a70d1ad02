#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ell/field.hpp"

namespace ell {

/// 2D vorticity state; u = grad^perp psi = (d2 psi, -d1 psi) with -Delta psi = omega.
struct FlowState {
  RealField omega;
  double t = 0.0;
};

/// Biot-Savart law with zero mean flow. Throws NonZeroMean.
VectorField velocity_from_vorticity(const RealField& omega);
/// d1 u^2 - d2 u^1.
RealField vorticity_from_velocity(const VectorField& u);

/// dt * max|u| / h, the quantity bounded by 0.5 in euler_step.
double cfl_number(const FlowState& s, double dt);

/// One RK4 step of the 2/3-dealiased pseudo-spectral vorticity equation
/// d_t omega + u . grad omega = 0. The state is projected onto resolved modes
/// first. Throws CflViolation or InvalidArgument (dt <= 0).
FlowState euler_step(const FlowState& s, double dt);

double kinetic_energy(const VectorField& u);  // (1/2) int |u|^2
double enstrophy(const RealField& omega);      // (1/2) int omega^2

/// Throws NotDivergenceFree when max|div u| > 1e-8 * max(1, max|grad u|).
void require_divergence_free(const VectorField& u);

/// sum_{a,b} d_a u^b d_b u^a from dealiased products.
RealField corrector_field(const VectorField& u);
/// Mean-zero solution of -Delta p = U.
RealField pressure_from_corrector(const RealField& U);
RealField pressure_field(const VectorField& u);
/// d_t u = -u . grad u - grad p
VectorField velocity_time_derivative(const VectorField& u);
/// -Delta (d_t p) = 2 sum d_a (d_t u)^b d_b u^a
RealField pressure_time_derivative(const VectorField& u);
/// div (-Delta)^{-1} w, the mean of each component removed first.
RealField div_inverse_laplacian(const VectorField& w);
/// div (-Delta)^{-1} (u U)
RealField aux_transport_field(const VectorField& u);

struct FlowSnapshot {
  double t = 0.0;
  VectorField u;
  std::vector<RealField> gradu;  // gradu[a * d + b] = d_a u^b
  RealField corrector;
  RealField pressure;
  RealField dtp;
  RealField aux;
  double u_inf = 0.0;
  double gradu_inf = 0.0;  // pointwise Frobenius norm, maximized over the grid
  double c11 = 0.0;        // |u|_inf + |grad u|_inf + |grad^2 u|_inf
};

FlowSnapshot flow_snapshot(const VectorField& u, double t = 0.0);
FlowSnapshot flow_snapshot(const FlowState& s);

enum class NamedFlow { Shear2d, TaylorGreen2d, Shear3d };

/// Accepts "shear-2d", "taylor-green-2d", "shear-3d"; throws Config otherwise.
NamedFlow parse_named_flow(std::string_view name);
std::string_view to_string(NamedFlow f);
int flow_dimension(NamedFlow f);
/// Exact stationary velocity sampled on the grid.
VectorField named_flow_velocity(NamedFlow f, const GridSpec& g);
/// Vorticity state of a 2D named flow.
FlowState named_flow_state(NamedFlow f, const GridSpec& g);

}  // namespace ell
