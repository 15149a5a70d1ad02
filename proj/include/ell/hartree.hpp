#pragma once

#include <filesystem>
#include <vector>

#include "ell/field.hpp"

namespace ell {

struct PhysicalParams {
  double hbar = 1e-2;
  double eps = 0.2;
  /// Throws InvalidConfiguration unless both are finite and positive.
  void validate() const;
};

/// Finite-rank density matrix sum_m w_m |phi_m><phi_m|.
struct MixedState {
  std::vector<ComplexField> orbitals;
  std::vector<double> weights;

  std::size_t rank() const { return orbitals.size(); }
  const GridSpec& grid() const { return orbitals.front().grid; }
  /// Throws InvalidState: M >= 1, matching grids, w >= 0, sum w = 1 to 1e-12,
  /// unit orbital norms to 1e-10.
  void validate() const;
};

/// rho = sum_m w_m |phi_m|^2
RealField density(const MixedState& s);
/// J = sum_m w_m hbar Im(conj(phi_m) grad phi_m)
VectorField current(const MixedState& s, const PhysicalParams& p);
/// eps^{-2} (V * rho). Throws MeanNotOne.
RealField hartree_potential(const RealField& rho, const PhysicalParams& p);
/// Largest dt allowed by the phase guard max|V*rho| dt / (hbar eps^2) <= pi.
double phase_dt_limit(const RealField& rho, const PhysicalParams& p);

struct EnergyParts {
  double kinetic = 0.0;    // sum_m w_m (hbar^2 / 2) |grad phi_m|^2
  double potential = 0.0;  // (1 / (2 eps^2)) int (V * rho) rho
  double total = 0.0;
};
EnergyParts total_energy(const MixedState& s, const PhysicalParams& p);

/// Strang splitting potential(dt/2) - kinetic(dt) - potential(dt/2). Keeps the
/// density between steps, so repeated stepping costs one density per step.
class HartreePropagator {
public:
  /// with_potential = false freezes rho = 1 (free Schrodinger flow).
  HartreePropagator(const GridSpec& g, const PhysicalParams& p, double dt, bool with_potential = true);

  /// In place. Throws PhaseResolution when the guard fails.
  void step(MixedState& s);
  double dt() const { return dt_; }

private:
  void apply_potential(MixedState& s, const RealField& rho);

  GridSpec grid_;
  PhysicalParams params_;
  double dt_;
  bool with_potential_;
  AlignedVector<cplx> kinetic_;
  RealField rho_;
  bool have_rho_ = false;
  const MixedState* last_ = nullptr;
};

MixedState strang_step(const MixedState& s, const PhysicalParams& p, double dt, bool with_potential = true);

/// Directory with manifest.json (rank, weights, params, grid) and one field
/// container per orbital.
void write_mixed_state(const std::filesystem::path& dir, const MixedState& s, const PhysicalParams& p);
MixedState read_mixed_state(const std::filesystem::path& dir, PhysicalParams* p = nullptr);

}  // namespace ell
