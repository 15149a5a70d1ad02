#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ell/error.hpp"
#include "ell/hartree.hpp"
#include "ell/spectral.hpp"
#include "ell/wkb.hpp"
#include "support.hpp"

using namespace ell;
using ell::testing::max_diff;
using ell::testing::pi;

namespace {

ComplexField plane_wave(const GridSpec& g, int k1, int k2) {
  return sample_complex(g, [=](double x, double y, double) { return std::polar(1.0, 2 * pi * (k1 * x + k2 * y)); });
}

MixedState pure(const ComplexField& phi) { return MixedState{{phi}, {1.0}}; }

// Smooth normalized orbitals with a non-trivial density.
MixedState random_state(const GridSpec& g, int rank, unsigned seed) {
  MixedState s;
  for (int m = 0; m < rank; ++m) {
    const RealField a = ell::testing::random_bandlimited(g, 3, seed + unsigned(m), 1.5);
    const RealField b = ell::testing::random_bandlimited(g, 3, seed + 100 + unsigned(m));
    ComplexField phi(g);
    for (std::size_t i = 0; i < g.size(); ++i) phi[i] = {a[i], b[i]};
    const double nrm = l2_norm(phi);
    for (auto& z : phi.values) z /= nrm;
    s.orbitals.push_back(phi);
    s.weights.push_back(1.0 / rank);
  }
  return s;
}

double mass(const ComplexField& phi) { return l2_norm(phi) * l2_norm(phi); }

}  // namespace

TEST_SUITE("hartree") {

TEST_CASE("density") {
  const GridSpec g(2, 16);
  const RealField r1 = density(pure(plane_wave(g, 2, -1)));
  CHECK(max_diff(r1, RealField(g, 1.0)) <= 1e-15);
  const MixedState mix{{plane_wave(g, 1, 0), plane_wave(g, -1, 0)}, {0.5, 0.5}};
  CHECK(max_diff(density(mix), RealField(g, 1.0)) <= 1e-15);
}

TEST_CASE("density of one packet matches the theta series") {
  const GridSpec g(2, 64);
  const PhysicalParams p{1e-2, 0.2};
  PacketSpec spec;
  spec.center = {0.3, 0.55, 0.0};
  spec.momentum = {0.4, -0.3, 0.0};
  spec.sigma = 0.1;
  const RealField rho = density(pure(gaussian_packet(spec, g, p)));
  ComplexField want(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coords(i);
    cplx s{};
    for (int m1 = -6; m1 <= 6; ++m1)
      for (int m2 = -6; m2 <= 6; ++m2) {
        const double y1 = x[0] - spec.center[0] + m1, y2 = x[1] - spec.center[1] + m2;
        s += std::exp(-(y1 * y1 + y2 * y2) / (4 * spec.sigma * spec.sigma)) *
             std::polar(1.0, (spec.momentum[0] * y1 + spec.momentum[1] * y2) / p.hbar);
      }
    want[i] = s;
  }
  RealField r(g);
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::norm(want[i]);
  r = (1.0 / mean(r)) * r;
  CHECK(max_diff(rho, r) <= 1e-10 * max_abs(r));
}

TEST_CASE("current") {
  const GridSpec g(2, 16);
  const PhysicalParams p{0.03, 0.5};
  const VectorField J = current(pure(plane_wave(g, 2, -3)), p);
  CHECK(max_diff(J[0], RealField(g, 2 * pi * p.hbar * 2)) <= 1e-13);
  CHECK(max_diff(J[1], RealField(g, 2 * pi * p.hbar * -3)) <= 1e-13);
  ComplexField real_orbital(g);
  const RealField a = ell::testing::random_bandlimited(g, 3, 2, 2.0);
  for (std::size_t i = 0; i < g.size(); ++i) real_orbital[i] = a[i] / l2_norm(a);
  const VectorField J0 = current(pure(real_orbital), p);
  CHECK(max_abs(J0[0]) == 0.0);
  CHECK(max_abs(J0[1]) == 0.0);
}

TEST_CASE("continuity equation holds to second order in dt") {
  const GridSpec g(2, 32);
  const PhysicalParams p{0.05, 0.5};
  const MixedState s0 = random_state(g, 2, 7);
  auto residual = [&](double dt) {
    const MixedState fwd = strang_step(s0, p, dt);
    // time reversal: conj(phi(-t)) solves the same equation
    MixedState bwd = s0;
    for (auto& o : bwd.orbitals)
      for (auto& z : o.values) z = std::conj(z);
    bwd = strang_step(bwd, p, dt);
    const RealField drho = (1.0 / (2 * dt)) * (density(fwd) - density(bwd));
    return max_abs(drho + divergence(current(s0, p)));
  };
  const double r1 = residual(2e-3), r2 = residual(1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("Hartree potential") {
  const GridSpec g(2, 32);
  const PhysicalParams p{1e-2, 0.5};
  CHECK(max_abs(hartree_potential(RealField(g, 1.0), p)) <= 1e-16);
  const RealField rho = sample(g, [](double x, double, double) { return 1 + std::cos(2 * pi * x); });
  const RealField want = sample(g, [](double x, double, double) { return std::cos(2 * pi * x) / (pi * pi); });
  CHECK(max_diff(hartree_potential(rho, p), want) <= 1e-14);
  const RealField half = hartree_potential(rho, {1e-2, 0.25});
  CHECK(max_diff(half, 4.0 * hartree_potential(rho, p)) <= 1e-14);
  CHECK_THROWS_AS(hartree_potential(RealField(g, 2.0), p), Error);
}

TEST_CASE("free flow of a plane wave is exact") {
  const GridSpec g(2, 16);
  const PhysicalParams p{0.02, 0.3};
  MixedState s = pure(plane_wave(g, 3, 1));
  const double dt = 0.01;
  HartreePropagator prop(g, p, dt, false);
  for (int i = 0; i < 50; ++i) prop.step(s);
  const double t = 50 * dt;
  const cplx phase = std::polar(1.0, -p.hbar * 4 * pi * pi * 10 * t / 2);
  double err = 0.0;
  const ComplexField w = plane_wave(g, 3, 1);
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(s.orbitals[0][i] - phase * w[i]));
  CHECK(err <= 1e-12);
}

TEST_CASE("mass is conserved per step") {
  const GridSpec g(2, 32);
  const PhysicalParams p{0.02, 0.2};
  MixedState s = random_state(g, 3, 3);
  HartreePropagator prop(g, p, 1e-3);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> before;
    for (const auto& o : s.orbitals) before.push_back(mass(o));
    prop.step(s);
    for (std::size_t m = 0; m < s.rank(); ++m) CHECK(std::abs(mass(s.orbitals[m]) - before[m]) <= 1e-12);
  }
}

TEST_CASE("energy drift is second order") {
  const GridSpec g(2, 32);
  const PhysicalParams p{0.05, 0.3};
  const MixedState s0 = random_state(g, 2, 11);
  const double e0 = total_energy(s0, p).total;
  auto drift = [&](double dt) {
    MixedState s = s0;
    HartreePropagator prop(g, p, dt);
    double worst = 0.0;
    for (int i = 0; i < int(std::lround(0.2 / dt)); ++i) {
      prop.step(s);
      worst = std::max(worst, std::abs(total_energy(s, p).total - e0));
    }
    return worst;
  };
  const double ratio = drift(2e-3) / drift(1e-3);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("total energy of simple states") {
  const GridSpec g(2, 16);
  const PhysicalParams p{0.03, 0.7};
  const EnergyParts e = total_energy(pure(plane_wave(g, 1, 2)), p);
  CHECK(e.kinetic == doctest::Approx(0.5 * p.hbar * p.hbar * 4 * pi * pi * 5).epsilon(1e-13));
  CHECK(std::abs(e.potential) <= 1e-16);

  ComplexField phi(g);
  for (std::size_t i = 0; i < g.size(); ++i) phi[i] = std::sqrt(1 + std::cos(2 * pi * g.coords(i)[0]));
  const EnergyParts e2 = total_energy(pure(phi), {0.03, 1.0});
  CHECK(e2.potential == doctest::Approx(1 / (16 * pi * pi)).epsilon(1e-12));
  CHECK(e2.total == e2.kinetic + e2.potential);
}

TEST_CASE("phase guard") {
  const GridSpec g(2, 16);
  ComplexField phi(g);
  for (std::size_t i = 0; i < g.size(); ++i) phi[i] = std::sqrt(1 + 0.9 * std::cos(2 * pi * g.coords(i)[0]));
  MixedState s = pure(phi);
  const PhysicalParams p{1e-3, 0.01};
  const double lim = phase_dt_limit(density(s), p);
  HartreePropagator bad(g, p, 2 * lim);
  CHECK_THROWS_AS(bad.step(s), Error);
  HartreePropagator ok(g, p, 0.5 * lim);
  CHECK_NOTHROW(ok.step(s));
}

TEST_CASE("state validation") {
  const GridSpec g(2, 16);
  MixedState s{{plane_wave(g, 0, 1)}, {0.5}};
  CHECK_THROWS_AS(s.validate(), Error);
  MixedState t{{}, {}};
  CHECK_THROWS_AS(t.validate(), Error);
  ComplexField big = plane_wave(g, 0, 1);
  for (auto& z : big.values) z *= 2.0;
  CHECK_THROWS_AS(pure(big).validate(), Error);
}

TEST_CASE("mixed states round trip through disk") {
  const GridSpec g(2, 16);
  const MixedState s = random_state(g, 2, 4);
  const PhysicalParams p{0.011, 0.33};
  const auto dir = std::filesystem::temp_directory_path() / "ell_state_rt";
  std::filesystem::remove_all(dir);
  write_mixed_state(dir, s, p);
  PhysicalParams q;
  const MixedState r = read_mixed_state(dir, &q);
  CHECK(q.hbar == p.hbar);
  CHECK(q.eps == p.eps);
  REQUIRE(r.rank() == 2);
  CHECK(r.weights == s.weights);
  CHECK(r.orbitals[1].values == s.orbitals[1].values);
  std::filesystem::remove_all(dir);
}

}
