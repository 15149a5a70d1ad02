#include "ell/euler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ell/error.hpp"
#include "ell/simd.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

namespace {

// psi_hat -> (u1_hat, u2_hat) = (2 pi i k2 psi_hat, -2 pi i k1 psi_hat)
void velocity_hat(const SpectralCoeffs& omega_hat, SpectralCoeffs& u1, SpectralCoeffs& u2) {
  const SpectralCoeffs psi = inverse_laplacian(omega_hat);
  u1 = derivative(psi, 1);
  u2 = derivative(psi, 0);
  for (auto& c : u2.c) c = -c;
}

// Mean check used for derived fields: round-off in a field that should be
// identically zero must not trip the relative test.
void require_small_mean(const RealField& f, double scale, const char* what) {
  const double m = mean(f);
  if (std::abs(m) > 1e-10 * std::max(scale, max_abs(f)))
    throw Error(ErrorKind::NonZeroMean, std::string(what) + ": mean " + std::to_string(m) + " is not zero");
}

VectorField dealias(const VectorField& u) {
  VectorField out;
  for (const auto& c : u.comp) out.comp.push_back(ell::dealias(c));
  return out;
}

std::vector<RealField> grad_tensor(const VectorField& u) {
  const int d = u.dim();
  std::vector<RealField> g(std::size_t(d * d));
  for (int b = 0; b < d; ++b) {
    const SpectralCoeffs c = transform(u[b]);
    for (int a = 0; a < d; ++a) g[std::size_t(a * d + b)] = inverse_real(derivative(c, a));
  }
  return g;
}

double grad_scale(const VectorField& u) {
  double m = 0.0;
  for (const auto& f : grad_tensor(u)) m = std::max(m, max_abs(f));
  return m;
}

// sum_{a,b} A[a][b] * B[b][a] with dealiased products
RealField contract(const std::vector<RealField>& A, const std::vector<RealField>& B, int d) {
  RealField out(A.front().grid);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const RealField p = dealiased_product(A[std::size_t(a * d + b)], B[std::size_t(b * d + a)]);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i];
    }
  return out;
}

RealField poisson(const RealField& f) { return inverse_real(inverse_laplacian(transform(f))); }

double pointwise_frobenius_max(const std::vector<RealField>& parts) {
  double m = 0.0;
  const std::size_t n = parts.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& p : parts) s += p[i] * p[i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

}  // namespace

VectorField velocity_from_vorticity(const RealField& omega) {
  if (omega.grid.dim() != 2) throw Error(ErrorKind::InvalidGrid, "vorticity form is two dimensional");
  require_mean_zero(omega, "velocity_from_vorticity");
  SpectralCoeffs u1, u2;
  velocity_hat(transform(omega), u1, u2);
  VectorField u;
  u.comp.push_back(inverse_real(u1));
  u.comp.push_back(inverse_real(u2));
  return u;
}

RealField vorticity_from_velocity(const VectorField& u) {
  if (u.dim() != 2) throw Error(ErrorKind::InvalidGrid, "vorticity form is two dimensional");
  const RealField a = derivative(u[1], 0);
  const RealField b = derivative(u[0], 1);
  return a - b;
}

double cfl_number(const FlowState& s, double dt) {
  return dt * max_norm(velocity_from_vorticity(s.omega)) / s.omega.grid.h();
}

namespace {

// -P(u . grad omega) for a dealiased spectral vorticity, k = 0 removed.
SpectralCoeffs vorticity_rhs(const SpectralCoeffs& w) {
  SpectralCoeffs u1, u2;
  velocity_hat(w, u1, u2);
  const RealField U1 = inverse_real(u1), U2 = inverse_real(u2);
  const RealField W1 = inverse_real(derivative(w, 0)), W2 = inverse_real(derivative(w, 1));
  RealField adv(w.grid);
  for (std::size_t i = 0; i < adv.size(); ++i) adv[i] = -(U1[i] * W1[i] + U2[i] * W2[i]);
  SpectralCoeffs r = dealias(transform(adv));
  r[0] = cplx{};
  return r;
}

SpectralCoeffs axpy(const SpectralCoeffs& x, double a, const SpectralCoeffs& y) {
  SpectralCoeffs out(x.grid);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

}  // namespace

FlowState euler_step(const FlowState& s, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "euler_step needs dt > 0");
  const double cfl = cfl_number(s, dt);
  if (cfl > 0.5)
    throw Error(ErrorKind::CflViolation, "dt*|u|/h = " + std::to_string(cfl) + " exceeds 0.5");
  const SpectralCoeffs w0 = dealias(transform(s.omega));
  const SpectralCoeffs k1 = vorticity_rhs(w0);
  const SpectralCoeffs k2 = vorticity_rhs(axpy(w0, 0.5 * dt, k1));
  const SpectralCoeffs k3 = vorticity_rhs(axpy(w0, 0.5 * dt, k2));
  const SpectralCoeffs k4 = vorticity_rhs(axpy(w0, dt, k3));
  SpectralCoeffs w1(w0.grid);
  for (std::size_t i = 0; i < w0.size(); ++i)
    w1[i] = w0[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return {inverse_real(w1), s.t + dt};
}

double kinetic_energy(const VectorField& u) {
  double e = 0.0;
  for (const auto& c : u.comp) e += inner(c, c);
  return 0.5 * e;
}

double enstrophy(const RealField& omega) { return 0.5 * inner(omega, omega); }

void require_divergence_free(const VectorField& u) {
  const double div = max_abs(divergence(u));
  if (div > 1e-8 * std::max(1.0, grad_scale(u)))
    throw Error(ErrorKind::NotDivergenceFree, "max |div u| = " + std::to_string(div));
}

RealField corrector_field(const VectorField& u) {
  require_divergence_free(u);
  const VectorField ud = dealias(u);
  const auto g = grad_tensor(ud);
  return contract(g, g, u.dim());
}

RealField pressure_from_corrector(const RealField& U) {
  require_small_mean(U, 1.0, "pressure_from_corrector");
  return poisson(U);
}

RealField pressure_field(const VectorField& u) {
  const RealField U = corrector_field(u);
  const double s = grad_scale(u);
  require_small_mean(U, s * s, "corrector");
  return poisson(U);
}

VectorField velocity_time_derivative(const VectorField& u) {
  require_divergence_free(u);
  const int d = u.dim();
  const VectorField ud = dealias(u);
  const auto g = grad_tensor(ud);
  const RealField p = poisson(contract(g, g, d));
  VectorField dtu(u.grid());
  for (int b = 0; b < d; ++b) {
    RealField adv(u.grid());
    for (int a = 0; a < d; ++a) {
      const RealField t = dealiased_product(ud[a], g[std::size_t(a * d + b)]);
      for (std::size_t i = 0; i < adv.size(); ++i) adv[i] += t[i];
    }
    const RealField dp = derivative(p, b);
    for (std::size_t i = 0; i < adv.size(); ++i) dtu[b][i] = -adv[i] - dp[i];
  }
  return dtu;
}

RealField pressure_time_derivative(const VectorField& u) {
  const int d = u.dim();
  const VectorField dtu = velocity_time_derivative(u);
  const auto g = grad_tensor(dealias(u));
  const auto gt = grad_tensor(dtu);
  RealField rhs = contract(gt, g, d);
  for (auto& v : rhs.values) v *= 2.0;
  const double s = grad_scale(u);
  require_small_mean(rhs, s * s * s, "d_t corrector");
  return poisson(rhs);
}

RealField div_inverse_laplacian(const VectorField& w) {
  SpectralCoeffs acc(w.grid());
  for (int a = 0; a < w.dim(); ++a) {
    const SpectralCoeffs c = derivative(inverse_laplacian(transform(w[a])), a);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c[i];
  }
  return inverse_real(acc);
}

RealField aux_transport_field(const VectorField& u) {
  const RealField U = corrector_field(u);
  const VectorField ud = dealias(u);
  VectorField w;
  for (int a = 0; a < u.dim(); ++a) w.comp.push_back(dealiased_product(ud[a], U));
  return div_inverse_laplacian(w);
}

FlowSnapshot flow_snapshot(const VectorField& u, double t) {
  require_divergence_free(u);
  const int d = u.dim();
  FlowSnapshot s;
  s.t = t;
  s.u = u;
  s.gradu = grad_tensor(u);
  s.corrector = corrector_field(u);
  const double gs = grad_scale(u);
  require_small_mean(s.corrector, gs * gs, "corrector");
  s.pressure = poisson(s.corrector);
  s.dtp = pressure_time_derivative(u);
  s.aux = aux_transport_field(u);
  s.u_inf = max_norm(u);
  s.gradu_inf = pointwise_frobenius_max(s.gradu);
  std::vector<RealField> hess;
  for (int c = 0; c < d; ++c)
    for (const auto& gab : s.gradu) hess.push_back(derivative(gab, c));
  s.c11 = s.u_inf + s.gradu_inf + pointwise_frobenius_max(hess);
  return s;
}

FlowSnapshot flow_snapshot(const FlowState& st) {
  return flow_snapshot(velocity_from_vorticity(st.omega), st.t);
}

NamedFlow parse_named_flow(std::string_view name) {
  if (name == "shear-2d") return NamedFlow::Shear2d;
  if (name == "taylor-green-2d") return NamedFlow::TaylorGreen2d;
  if (name == "shear-3d") return NamedFlow::Shear3d;
  throw Error(ErrorKind::Config, "unknown flow '" + std::string(name) + "'");
}

std::string_view to_string(NamedFlow f) {
  switch (f) {
    case NamedFlow::Shear2d: return "shear-2d";
    case NamedFlow::TaylorGreen2d: return "taylor-green-2d";
    case NamedFlow::Shear3d: return "shear-3d";
  }
  return "?";
}

int flow_dimension(NamedFlow f) { return f == NamedFlow::Shear3d ? 3 : 2; }

VectorField named_flow_velocity(NamedFlow f, const GridSpec& g) {
  if (g.dim() != flow_dimension(f))
    throw Error(ErrorKind::Config, std::string(to_string(f)) + " needs a grid of dimension " +
                                       std::to_string(flow_dimension(f)));
  const double tp = 2.0 * pi;
  switch (f) {
    case NamedFlow::Shear2d:
      return sample_vector(g, [&](double, double y, double) { return Point{std::sin(tp * y), 0.0, 0.0}; });
    case NamedFlow::TaylorGreen2d:
      return sample_vector(g, [&](double x, double y, double) {
        return Point{std::sin(tp * x) * std::cos(tp * y), -std::cos(tp * x) * std::sin(tp * y), 0.0};
      });
    case NamedFlow::Shear3d:
      return sample_vector(g, [&](double, double, double z) { return Point{std::sin(tp * z), 0.0, 0.0}; });
  }
  return VectorField(g);
}

FlowState named_flow_state(NamedFlow f, const GridSpec& g) {
  if (flow_dimension(f) != 2) throw Error(ErrorKind::Config, "only two dimensional flows can be time stepped");
  const double tp = 2.0 * pi;
  if (f == NamedFlow::Shear2d)
    return {sample(g, [&](double, double y, double) { return -tp * std::cos(tp * y); }), 0.0};
  return {sample(g, [&](double x, double y, double) { return 2.0 * tp * std::sin(tp * x) * std::sin(tp * y); }), 0.0};
}

}  // namespace ell
