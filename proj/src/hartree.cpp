#include "ell/hartree.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ell/coulomb.hpp"
#include "ell/error.hpp"
#include "ell/fft.hpp"
#include "ell/field_io.hpp"
#include "ell/parallel.hpp"
#include "ell/simd.hpp"
#include "ell/spectral.hpp"

namespace ell {

using std::numbers::pi;

void PhysicalParams::validate() const {
  if (!(std::isfinite(hbar) && hbar > 0.0)) throw Error(ErrorKind::InvalidConfiguration, "hbar must be positive");
  if (!(std::isfinite(eps) && eps > 0.0)) throw Error(ErrorKind::InvalidConfiguration, "eps must be positive");
}

void MixedState::validate() const {
  if (orbitals.empty()) throw Error(ErrorKind::InvalidState, "mixed state needs at least one orbital");
  if (weights.size() != orbitals.size()) throw Error(ErrorKind::InvalidState, "one weight per orbital required");
  double sum = 0.0;
  for (std::size_t m = 0; m < rank(); ++m) {
    if (orbitals[m].grid != grid()) throw Error(ErrorKind::InvalidState, "orbital grids differ");
    if (!(weights[m] >= 0.0)) throw Error(ErrorKind::InvalidState, "negative weight");
    sum += weights[m];
    const double norm = l2_norm(orbitals[m]);
    if (std::abs(norm - 1.0) > 1e-10)
      throw Error(ErrorKind::InvalidState, "orbital " + std::to_string(m) + " has norm " + std::to_string(norm));
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidState, "weights do not sum to 1");
}

RealField density(const MixedState& s) {
  RealField rho(s.grid());
  for (std::size_t m = 0; m < s.rank(); ++m) simd::accumulate_abs2(rho.span(), s.orbitals[m].span(), s.weights[m]);
  return rho;
}

VectorField current(const MixedState& s, const PhysicalParams& p) {
  const GridSpec& g = s.grid();
  VectorField J(g);
  for (std::size_t m = 0; m < s.rank(); ++m) {
    const auto grad = gradient(s.orbitals[m]);
    const double w = s.weights[m] * p.hbar;
    for (int a = 0; a < g.dim(); ++a)
      for (std::size_t i = 0; i < g.size(); ++i)
        J[a][i] += w * (std::conj(s.orbitals[m][i]) * grad[std::size_t(a)][i]).imag();
  }
  return J;
}

RealField hartree_potential(const RealField& rho, const PhysicalParams& p) {
  require_probability_density(rho);
  return (1.0 / (p.eps * p.eps)) * convolve_kernel(rho);
}

double phase_dt_limit(const RealField& rho, const PhysicalParams& p) {
  const double vmax = max_abs(convolve_kernel(rho));
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return pi * p.hbar * p.eps * p.eps / vmax;
}

namespace {

AlignedVector<double> kinetic_symbol(const GridSpec& g) {
  return multiplier(g, [](int k1, int k2, int k3) { return 4.0 * pi * pi * double(k1 * k1 + k2 * k2 + k3 * k3); });
}

}  // namespace

EnergyParts total_energy(const MixedState& s, const PhysicalParams& p) {
  const GridSpec& g = s.grid();
  const auto k2 = kinetic_symbol(g);
  std::vector<double> per(s.rank());
  parallel_for(s.rank(), [&](std::size_t m) {
    const SpectralCoeffs c = transform(s.orbitals[m]);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) e += k2[i] * std::norm(c[i]);
    per[m] = e;
  });
  EnergyParts out;
  for (std::size_t m = 0; m < s.rank(); ++m) out.kinetic += s.weights[m] * 0.5 * p.hbar * p.hbar * per[m];
  out.potential = hminus1_sq(transform(density(s))) / (2.0 * p.eps * p.eps);
  out.total = out.kinetic + out.potential;
  return out;
}

HartreePropagator::HartreePropagator(const GridSpec& g, const PhysicalParams& p, double dt, bool with_potential)
    : grid_(g), params_(p), dt_(dt), with_potential_(with_potential) {
  p.validate();
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "Hartree step needs dt > 0");
  const auto k2 = kinetic_symbol(g);
  kinetic_.resize(g.size());
  // The forward transform is normalized and the backward one is not, so no
  // extra scaling is needed here.
  for (std::size_t i = 0; i < g.size(); ++i) kinetic_[i] = std::polar(1.0, -0.5 * p.hbar * k2[i] * dt);
}

void HartreePropagator::apply_potential(MixedState& s, const RealField& rho) {
  const RealField v = convolve_kernel(rho);
  const double phase = max_abs(v) * dt_ / (params_.hbar * params_.eps * params_.eps);
  if (phase > pi)
    throw Error(ErrorKind::PhaseResolution,
                "potential phase per step " + std::to_string(phase) + " exceeds pi; reduce dt");
  const double scale = -0.5 * dt_ / (params_.hbar * params_.eps * params_.eps);
  AlignedVector<cplx> ph(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) ph[i] = std::polar(1.0, scale * v[i]);
  const std::span<const cplx> phs(ph.data(), ph.size());
  parallel_for(s.rank(), [&](std::size_t m) { simd::cmul(s.orbitals[m].span(), phs); });
}

void HartreePropagator::step(MixedState& s) {
  if (s.grid() != grid_) throw Error(ErrorKind::GridMismatch, "state grid differs from propagator grid");
  if (with_potential_) {
    if (!have_rho_ || last_ != &s) rho_ = density(s);
    apply_potential(s, rho_);
  }
  const std::span<const cplx> kin(kinetic_.data(), kinetic_.size());
  parallel_for(s.rank(), [&](std::size_t m) {
    ComplexField& phi = s.orbitals[m];
    fft::forward(grid_, phi.data(), phi.data());
    simd::cmul(phi.span(), kin);
    fft::backward(grid_, phi.data(), phi.data());
  });
  if (with_potential_) {
    rho_ = density(s);
    apply_potential(s, rho_);
    have_rho_ = true;
    last_ = &s;
  }
}

MixedState strang_step(const MixedState& s, const PhysicalParams& p, double dt, bool with_potential) {
  MixedState out = s;
  HartreePropagator(s.grid(), p, dt, with_potential).step(out);
  return out;
}

void write_mixed_state(const std::filesystem::path& dir, const MixedState& s, const PhysicalParams& p) {
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["rank"] = s.rank();
  j["weights"] = s.weights;
  j["hbar"] = p.hbar;
  j["eps"] = p.eps;
  j["d"] = s.grid().dim();
  j["n"] = s.grid().n();
  std::vector<std::string> files;
  for (std::size_t m = 0; m < s.rank(); ++m) {
    std::ostringstream name;
    name << "orbital_" << std::setw(5) << std::setfill('0') << m << ".ell";
    write_field(dir / name.str(), s.orbitals[m]);
    files.push_back(name.str());
  }
  j["orbitals"] = files;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error(ErrorKind::Io, "cannot write manifest in " + dir.string());
  out << std::setprecision(17) << j.dump(2) << '\n';
}

MixedState read_mixed_state(const std::filesystem::path& dir, PhysicalParams* p) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error(ErrorKind::Io, "no manifest in " + dir.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Io, std::string("bad manifest: ") + e.what());
  }
  MixedState s;
  s.weights = j.at("weights").get<std::vector<double>>();
  for (const auto& f : j.at("orbitals")) s.orbitals.push_back(read_complex_field(dir / f.get<std::string>()));
  if (p) {
    p->hbar = j.at("hbar").get<double>();
    p->eps = j.at("eps").get<double>();
  }
  s.validate();
  return s;
}

}  // namespace ell
