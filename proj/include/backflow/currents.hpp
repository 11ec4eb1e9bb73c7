#pragma once

// Wavefunctions of plane-wave superpositions along z, and the quantities
// derived from them: density, Dirac current, Bohmian velocity. Also the
// one-dimensional nonrelativistic two-wave velocity and quantum potential.

#include <optional>
#include <vector>

#include "backflow/dirac_states.hpp"

namespace backflow {

inline constexpr double kDefaultDensityFloor = 1e-12;

struct Term {
  Complex coefficient;
  PlaneWaveMode mode;
};

/// Sum_i c_i u_i exp(i(k_i z - E_i t / hbar)) over unit-norm plane-wave spinors u_i.
class SuperpositionState {
 public:
  /// Terms sharing a mode are merged. With `normalize`, coefficients are
  /// rescaled so that sum |c_i|^2 = 1.
  SuperpositionState(std::vector<Term> terms, PhysicalParams params = {}, bool normalize = false);

  [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
  [[nodiscard]] const std::vector<SpinorPlaneWave>& waves() const noexcept { return waves_; }
  [[nodiscard]] const PhysicalParams& params() const noexcept { return params_; }

  [[nodiscard]] Spinor4 evaluate(double z, double t = 0.0) const;

  /// Same state with every coefficient multiplied by `factor`.
  [[nodiscard]] SuperpositionState scaled(Complex factor) const;

  /// Largest |k_i - k_j| over term pairs; zero for a single distinct wavenumber.
  [[nodiscard]] double max_wavenumber_gap() const noexcept;

 private:
  std::vector<Term> terms_;
  std::vector<SpinorPlaneWave> waves_;
  PhysicalParams params_;
};

[[nodiscard]] Spinor4 evaluate_state(const SuperpositionState& state, double z, double t = 0.0);

/// rho = Psi^dagger Psi.
[[nodiscard]] double density(const Spinor4& psi);

/// j_i = c Re(Psi^dagger alpha_i Psi).
[[nodiscard]] Vec3 current(const Spinor4& psi, const PhysicalParams& params);

struct CurrentSample {
  double z = 0.0;
  double t = 0.0;
  double rho = 0.0;
  Vec3 j{};
  std::optional<Vec3> v;  // empty at a near-node (rho <= density floor)

  [[nodiscard]] bool near_node() const noexcept { return !v.has_value(); }
};

[[nodiscard]] CurrentSample sample_current(const SuperpositionState& state, double z, double t = 0.0,
                                           double density_floor = kDefaultDensityFloor);

/// v = j / rho. Throws Error(node_density_too_small) when rho <= density_floor.
[[nodiscard]] Vec3 bohm_velocity(const CurrentSample& sample,
                                 double density_floor = kDefaultDensityFloor);

[[nodiscard]] double magnitude(const Vec3& v) noexcept;

// Nonrelativistic psi(x) = 1 + a e^{i(kx + phi)}, i.e. waves k1 = 0 and k2 = k
// with relative amplitude a. Both functions throw Error(node_singular) where
// |psi|^2 <= node_floor.

inline constexpr double kDefaultNodeFloor = 1e-12;

/// v = (a hbar k / m) (a + cos th) / (1 + a^2 + 2a cos th), th = kx + phi.
[[nodiscard]] double nr_velocity(double a, double k, double x, double phi, const PhysicalParams& params,
                                 double node_floor = kDefaultNodeFloor);

/// Q = (a hbar^2 k^2 / 2m) (1 + a cos th)(a + cos th) / (1 + a^2 + 2a cos th)^2.
[[nodiscard]] double quantum_potential(double a, double k, double x, double phi,
                                       const PhysicalParams& params,
                                       double node_floor = kDefaultNodeFloor);

}  // namespace backflow
