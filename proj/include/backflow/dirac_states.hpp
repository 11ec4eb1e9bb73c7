#pragma once

// Free-particle plane-wave solutions of the Dirac equation with momentum
// along z, in the Pauli-Dirac representation.

#include "backflow/spinor_algebra.hpp"

namespace backflow {

/// Physical constants. Defaults are natural units hbar = c = m = 1.
struct PhysicalParams {
  double hbar = 1.0;
  double c = 1.0;
  double mass = 1.0;

  /// Throws Error(invalid_argument) unless hbar > 0, c > 0, mass >= 0, all finite.
  void validate() const;

  [[nodiscard]] double rest_energy() const noexcept { return mass * c * c; }

  friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

enum class EnergySign : int { positive = 1, negative = -1 };
enum class Helicity : int { up = 1, down = -1 };

[[nodiscard]] constexpr int value(EnergySign s) noexcept { return static_cast<int>(s); }
[[nodiscard]] constexpr int value(Helicity h) noexcept { return static_cast<int>(h); }
[[nodiscard]] constexpr EnergySign flip(EnergySign s) noexcept {
  return s == EnergySign::positive ? EnergySign::negative : EnergySign::positive;
}
[[nodiscard]] constexpr Helicity flip(Helicity h) noexcept {
  return h == Helicity::up ? Helicity::down : Helicity::up;
}

/// Labels one plane-wave solution. k may be zero or negative; the helicity
/// label is the Sigma_z eigenvalue of the upper two-spinor.
struct PlaneWaveMode {
  EnergySign energy_sign = EnergySign::positive;
  double k = 0.0;
  Helicity helicity = Helicity::up;

  friend bool operator==(const PlaneWaveMode&, const PlaneWaveMode&) = default;
};

struct SpinorPlaneWave {
  PlaneWaveMode mode;
  Spinor4 spinor;  // unit norm, without the e^{ikz} factor
  double energy = 0.0;
};

/// E = sign * sqrt(c^2 hbar^2 k^2 + m^2 c^4).
[[nodiscard]] double dispersion(double k, EnergySign sign, const PhysicalParams& params);

/// |E| / (m c^2). Infinite for a massless particle.
[[nodiscard]] double lorentz_factor(double k, const PhysicalParams& params);

/// Constant spinor factor of the plane wave. Positive energy:
/// N [phi; lambda c hbar k/(|E|+mc^2) phi], negative energy:
/// N [-lambda c hbar k/(|E|+mc^2) phi; phi], with N = (2|E|/(|E|+mc^2))^{-1/2}.
[[nodiscard]] SpinorPlaneWave plane_wave_spinor(const PlaneWaveMode& mode,
                                                const PhysicalParams& params);

/// H(k) = c alpha_z hbar k + beta m c^2.
[[nodiscard]] Matrix4 hamiltonian(double k, const PhysicalParams& params);

/// Sigma_z * sign(k); Sigma_z itself at k = 0 (spin along z at rest).
[[nodiscard]] Matrix4 helicity_operator(double k);

}  // namespace backflow
