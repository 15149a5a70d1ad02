#include <doctest.h>

#include <cmath>

#include "ell/coulomb.hpp"
#include "ell/error.hpp"
#include "ell/euler.hpp"
#include "ell/spectral.hpp"
#include "support.hpp"

using namespace ell;
using ell::testing::max_diff;
using ell::testing::pi;

namespace {

FlowState random_flow(int n, unsigned seed) {
  const GridSpec g(2, n);
  return FlowState{ell::testing::random_bandlimited(g, 4, seed), 0.0};
}

FlowState advance(FlowState s, double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = euler_step(s, dt);
  return s;
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("Biot-Savart on the Taylor-Green stream function") {
  const GridSpec g(2, 32);
  // psi = sin sin / (2 pi), omega = -Delta psi = 8 pi^2 psi
  const RealField omega = sample(g, [](double x, double y, double) {
    return 4 * pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
  });
  const VectorField u = velocity_from_vorticity(omega);
  // u = (d2 psi, -d1 psi) by hand
  const RealField u1 = sample(g, [](double x, double y, double) { return std::sin(2 * pi * x) * std::cos(2 * pi * y); });
  const RealField u2 = sample(g, [](double x, double y, double) { return -std::cos(2 * pi * x) * std::sin(2 * pi * y); });
  CHECK(max_diff(u[0], u1) <= 1e-13);
  CHECK(max_diff(u[1], u2) <= 1e-13);
  const VectorField z = velocity_from_vorticity(RealField(g, 0.0));
  CHECK(max_abs(z[0]) == 0.0);
  CHECK(max_abs(z[1]) == 0.0);
}

TEST_CASE("shear recovered from its curl") {
  const GridSpec g(2, 32);
  const VectorField u = named_flow_velocity(NamedFlow::Shear2d, g);
  const VectorField back = velocity_from_vorticity(vorticity_from_velocity(u));
  CHECK(max_diff(back[0], u[0]) <= 1e-13);
  CHECK(max_abs(back[1]) <= 1e-13);
  CHECK_THROWS_AS(velocity_from_vorticity(RealField(g, 1.0)), Error);
}

TEST_CASE("named flows are stationary") {
  for (NamedFlow f : {NamedFlow::TaylorGreen2d, NamedFlow::Shear2d}) {
    const FlowState s0 = named_flow_state(f, GridSpec(2, 64));
    const FlowState s1 = advance(s0, 1e-3, 100);
    CHECK(max_diff(s1.omega, s0.omega) <= 1e-10);
  }
}

TEST_CASE("random flow conserves energy and enstrophy") {
  const FlowState s0 = random_flow(64, 21);
  const double e0 = kinetic_energy(velocity_from_vorticity(s0.omega)), z0 = enstrophy(s0.omega);
  const FlowState s1 = advance(s0, 1e-3, 200);
  CHECK(std::abs(kinetic_energy(velocity_from_vorticity(s1.omega)) - e0) <= 1e-8 * e0);
  CHECK(std::abs(enstrophy(s1.omega) - z0) <= 1e-8 * z0);
}

TEST_CASE("RK4 converges at fourth order") {
  const FlowState s0 = random_flow(32, 5);
  const double T = 0.2;
  const FlowState ref = advance(s0, T / 320, 320);
  const double e1 = max_diff(advance(s0, T / 10, 10).omega, ref.omega);
  const double e2 = max_diff(advance(s0, T / 20, 20).omega, ref.omega);
  CHECK(std::log2(e1 / e2) >= 3.7);
}

TEST_CASE("step guards") {
  const FlowState s = named_flow_state(NamedFlow::Shear2d, GridSpec(2, 32));
  CHECK_THROWS_AS(euler_step(s, 0.1), Error);
  CHECK_THROWS_AS(euler_step(s, 0.0), Error);
  CHECK(cfl_number(s, 1e-3) == doctest::Approx(1e-3 * 32));
}

TEST_CASE("corrector") {
  const GridSpec g(2, 32);
  CHECK(max_abs(corrector_field(named_flow_velocity(NamedFlow::Shear2d, g))) <= 1e-12);
  VectorField c(g);
  c[0] = RealField(g, 0.7);
  c[1] = RealField(g, -0.2);
  CHECK(max_abs(corrector_field(c)) == 0.0);

  const VectorField u = named_flow_velocity(NamedFlow::TaylorGreen2d, g);
  const RealField U = corrector_field(u);
  auto vel = [](double x, double y, int a) {
    return a == 0 ? std::sin(2 * pi * x) * std::cos(2 * pi * y) : -std::cos(2 * pi * x) * std::sin(2 * pi * y);
  };
  // fourth-order differences of the exact velocity, independent of the grid
  const double dl = 1e-3;
  auto du = [&](double x, double y, int a, int b) {
    auto at = [&](double s) { return b == 0 ? vel(x + s, y, a) : vel(x, y + s, a); };
    return (8 * (at(dl) - at(-dl)) - (at(2 * dl) - at(-2 * dl))) / (12 * dl);
  };
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); i += 5) {
    const auto x = g.coords(i);
    double fd = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) fd += du(x[0], x[1], b, a) * du(x[0], x[1], a, b);
    err = std::max(err, std::abs(fd - U[i]));
  }
  CHECK(err <= 1e-6);
  CHECK(U[0] == doctest::Approx(8 * pi * pi).epsilon(1e-12));
  CHECK(std::abs(mean(U)) <= 1e-10);
}

TEST_CASE("pressure") {
  const GridSpec g(2, 32);
  CHECK(max_abs(pressure_field(named_flow_velocity(NamedFlow::Shear2d, g))) <= 1e-12);
  const VectorField u = named_flow_velocity(NamedFlow::TaylorGreen2d, g);
  const RealField p = pressure_field(u);
  CHECK(max_diff((-1.0) * laplacian(p), corrector_field(u)) <= 1e-10);
  const RealField U = sample(g, [](double x, double, double) { return std::cos(2 * pi * x); });
  CHECK(max_diff(pressure_from_corrector(U), (1.0 / (4 * pi * pi)) * U) <= 1e-15);
}

TEST_CASE("pressure time derivative") {
  const GridSpec g(2, 64);
  for (NamedFlow f : {NamedFlow::TaylorGreen2d, NamedFlow::Shear2d})
    CHECK(max_abs(pressure_time_derivative(named_flow_velocity(f, g))) <= 1e-9);

  const FlowState s = random_flow(64, 8);
  const VectorField u = velocity_from_vorticity(s.omega);
  VectorField mu(g);
  for (int a = 0; a < 2; ++a) mu[a] = (-1.0) * u[a];
  // d_t u is even in u and grad u is odd, so d_t p flips sign
  CHECK(max_diff(pressure_time_derivative(u), (-1.0) * pressure_time_derivative(mu)) <= 1e-9);

  const double delta = 1e-4;
  const FlowState fwd = euler_step(s, delta);
  FlowState bwd = s;
  bwd.omega = (-1.0) * s.omega;
  bwd = euler_step(bwd, delta);  // reversed flow
  bwd.omega = (-1.0) * bwd.omega;
  const RealField fd = (1.0 / (2 * delta)) *
                       (pressure_field(velocity_from_vorticity(fwd.omega)) - pressure_field(velocity_from_vorticity(bwd.omega)));
  const RealField dtp = pressure_time_derivative(u);
  CHECK(max_diff(fd, dtp) <= 1e-4 * max_abs(dtp));
}

TEST_CASE("auxiliary transport field") {
  const GridSpec g(2, 32);
  CHECK(max_abs(aux_transport_field(named_flow_velocity(NamedFlow::Shear2d, g))) <= 1e-12);
  VectorField w(g);
  w[0] = sample(g, [](double x, double, double) { return std::cos(2 * pi * x); });
  w[1] = RealField(g, 0.0);
  const RealField want = sample(g, [](double x, double, double) { return -std::sin(2 * pi * x) / (2 * pi); });
  CHECK(max_diff(div_inverse_laplacian(w), want) <= 1e-15);
}

TEST_CASE("auxiliary transport field agrees with quadrature of the kernel gradient") {
  // u U has band 6, which must survive the 2/3 cut
  const GridSpec g(2, 32);
  const VectorField u = velocity_from_vorticity(ell::testing::random_bandlimited(g, 2, 31));
  const RealField A = aux_transport_field(u);
  const RealField U = corrector_field(u);
  SpectralCoeffs w[2];
  for (int a = 0; a < 2; ++a) {
    w[a] = transform(pointwise(u[a], U));
    w[a][0] = 0.0;  // component means are dropped
  }
  const EwaldKernel V(2);
  const SpectralCoeffs Ac = transform(A);
  for (const Point& x : {Point{0.3, 0.6, 0.0}, Point{0.71, 0.05, 0.0}}) {
    auto wv = [&](double y1, double y2, int a) { return evaluate_at(w[a], {Point{y1, y2, 0.0}})[0]; };
    const double w0[2] = {wv(x[0], x[1], 0), wv(x[0], x[1], 1)};
    // div (V * w) = sum_a int d_a V(z) w^a(x - z) dz
    const double oracle = ell::testing::duffy_cell(64, [&](double a, double b) {
      const Point gr = V.gradient({a, b, 0.0});
      return gr[0] * (wv(x[0] - a, x[1] - b, 0) - w0[0]) + gr[1] * (wv(x[0] - a, x[1] - b, 1) - w0[1]);
    });
    CHECK(std::abs(evaluate_at(Ac, {x})[0] - oracle) <= 1e-8);
  }
}

TEST_CASE("snapshots") {
  const GridSpec g(2, 32);
  const FlowSnapshot s = flow_snapshot(named_flow_velocity(NamedFlow::Shear2d, g));
  CHECK(s.gradu_inf == doctest::Approx(2 * pi).epsilon(1e-12));
  CHECK(max_abs(s.corrector) <= 1e-12);
  CHECK(max_abs(s.pressure) <= 1e-12);
  CHECK(max_abs(s.dtp) <= 1e-12);
  CHECK(max_abs(s.aux) <= 1e-12);

  const FlowSnapshot z = flow_snapshot(VectorField(g));
  CHECK(z.u_inf == 0.0);
  CHECK(z.gradu_inf == 0.0);
  CHECK(z.c11 == 0.0);

  const GridSpec g3(3, 16);
  const VectorField u3 = named_flow_velocity(NamedFlow::Shear3d, g3);
  const FlowSnapshot s3 = flow_snapshot(u3);
  CHECK(max_abs(s3.corrector) <= 1e-12);
  CHECK(max_abs(s3.dtp) <= 1e-12);
  for (int a = 0; a < 3; ++a) CHECK(max_abs(velocity_time_derivative(u3)[a]) <= 1e-12);
}

TEST_CASE("flow names") {
  CHECK(parse_named_flow("taylor-green-2d") == NamedFlow::TaylorGreen2d);
  CHECK(to_string(NamedFlow::Shear3d) == "shear-3d");
  CHECK_THROWS_AS(parse_named_flow("vortex"), Error);
}

}
