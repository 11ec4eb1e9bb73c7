#include "backflow/dirac_states.hpp"

#include <cmath>
#include <limits>

#include "backflow/error.hpp"

namespace backflow {

void PhysicalParams::validate() const {
  if (!(std::isfinite(hbar) && hbar > 0.0))
    throw Error(Errc::invalid_argument, "hbar must be finite and positive");
  if (!(std::isfinite(c) && c > 0.0))
    throw Error(Errc::invalid_argument, "c must be finite and positive");
  if (!(std::isfinite(mass) && mass >= 0.0))
    throw Error(Errc::invalid_argument, "mass must be finite and non-negative");
}

double dispersion(double k, EnergySign sign, const PhysicalParams& params) {
  const double pc = params.c * params.hbar * k;
  return value(sign) * std::hypot(pc, params.rest_energy());
}

double lorentz_factor(double k, const PhysicalParams& params) {
  const double rest = params.rest_energy();
  if (rest == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(dispersion(k, EnergySign::positive, params)) / rest;
}

SpinorPlaneWave plane_wave_spinor(const PlaneWaveMode& mode, const PhysicalParams& params) {
  const double energy = dispersion(mode.k, mode.energy_sign, params);
  const double abs_e = std::abs(energy);
  const double rest = params.rest_energy();
  const double lambda = value(mode.helicity);

  // m = 0, k = 0 has no rest frame; use the k -> 0+ limit of the massless spinor.
  double ratio = 1.0;
  double norm = std::sqrt(0.5);
  if (abs_e > 0.0) {
    ratio = params.c * params.hbar * mode.k / (abs_e + rest);
    norm = std::sqrt((abs_e + rest) / (2.0 * abs_e));
  }

  const Spinor2 phi = mode.helicity == Helicity::up ? Spinor2{1.0, 0.0} : Spinor2{0.0, 1.0};
  Spinor4 s = mode.energy_sign == EnergySign::positive
                  ? stack(phi, Complex{lambda * ratio} * phi)
                  : stack(Complex{-lambda * ratio} * phi, phi);
  s *= norm;
  return SpinorPlaneWave{mode, s, energy};
}

Matrix4 hamiltonian(double k, const PhysicalParams& params) {
  const auto d = dirac_matrices();
  return Complex{params.c * params.hbar * k} * d.alpha[2] + Complex{params.rest_energy()} * d.beta;
}

Matrix4 helicity_operator(double k) {
  const auto d = dirac_matrices();
  return k < 0.0 ? Complex{-1.0} * d.spin[2] : d.spin[2];
}

}  // namespace backflow
