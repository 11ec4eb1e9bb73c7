#include "backflow/currents.hpp"

#include <algorithm>
#include <cmath>

#include "backflow/error.hpp"

namespace backflow {

SuperpositionState::SuperpositionState(std::vector<Term> terms, PhysicalParams params, bool normalize)
    : params_(params) {
  params_.validate();
  if (terms.empty()) throw Error(Errc::invalid_argument, "superposition needs at least one term");

  for (const auto& term : terms) {
    if (!is_finite(term.coefficient) || !std::isfinite(term.mode.k))
      throw Error(Errc::invalid_argument, "non-finite coefficient or wavenumber");
    auto same = std::find_if(terms_.begin(), terms_.end(),
                             [&](const Term& t) { return t.mode == term.mode; });
    if (same != terms_.end())
      same->coefficient += term.coefficient;
    else
      terms_.push_back(term);
  }

  if (normalize) {
    double norm2 = 0.0;
    for (const auto& t : terms_) norm2 += std::norm(t.coefficient);
    if (norm2 <= 0.0) throw Error(Errc::invalid_argument, "cannot normalize a zero superposition");
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& t : terms_) t.coefficient *= scale;
  }

  waves_.reserve(terms_.size());
  for (const auto& t : terms_) waves_.push_back(plane_wave_spinor(t.mode, params_));
}

Spinor4 SuperpositionState::evaluate(double z, double t) const {
  Spinor4 psi;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const double phase = waves_[i].mode.k * z - waves_[i].energy * t / params_.hbar;
    psi += (terms_[i].coefficient * std::polar(1.0, phase)) * waves_[i].spinor;
  }
  return psi;
}

SuperpositionState SuperpositionState::scaled(Complex factor) const {
  SuperpositionState out = *this;
  for (auto& t : out.terms_) t.coefficient *= factor;
  return out;
}

double SuperpositionState::max_wavenumber_gap() const noexcept {
  double gap = 0.0;
  for (const auto& a : terms_)
    for (const auto& b : terms_) gap = std::max(gap, std::abs(a.mode.k - b.mode.k));
  return gap;
}

Spinor4 evaluate_state(const SuperpositionState& state, double z, double t) {
  return state.evaluate(z, t);
}

double density(const Spinor4& psi) { return psi.norm2(); }

Vec3 current(const Spinor4& psi, const PhysicalParams& params) {
  static const DiracMatrices dirac = dirac_matrices();
  Vec3 j{};
  for (std::size_t i = 0; i < 3; ++i) j[i] = params.c * expectation(dirac.alpha[i], psi).real();
  return j;
}

CurrentSample sample_current(const SuperpositionState& state, double z, double t, double density_floor) {
  const Spinor4 psi = state.evaluate(z, t);
  CurrentSample s;
  s.z = z;
  s.t = t;
  s.rho = density(psi);
  s.j = current(psi, state.params());
  if (s.rho > density_floor) s.v = Vec3{s.j[0] / s.rho, s.j[1] / s.rho, s.j[2] / s.rho};
  return s;
}

Vec3 bohm_velocity(const CurrentSample& sample, double density_floor) {
  if (!(sample.rho > density_floor))
    throw Error(Errc::node_density_too_small, "density " + std::to_string(sample.rho) +
                                                  " at z=" + std::to_string(sample.z) +
                                                  " is below the node floor");
  return Vec3{sample.j[0] / sample.rho, sample.j[1] / sample.rho, sample.j[2] / sample.rho};
}

double magnitude(const Vec3& v) noexcept { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

namespace {

double nr_denominator(double a, double cos_theta, double x, double node_floor) {
  const double den = 1.0 + a * a + 2.0 * a * cos_theta;
  if (!(den > node_floor))
    throw Error(Errc::node_singular, "wavefunction node at x=" + std::to_string(x) +
                                         " (a=" + std::to_string(a) + ")");
  return den;
}

}  // namespace

double nr_velocity(double a, double k, double x, double phi, const PhysicalParams& params,
                   double node_floor) {
  params.validate();
  if (params.mass <= 0.0) throw Error(Errc::invalid_argument, "nonrelativistic velocity needs m > 0");
  const double cs = std::cos(k * x + phi);
  const double den = nr_denominator(a, cs, x, node_floor);
  return a * params.hbar * k / params.mass * (a + cs) / den;
}

double quantum_potential(double a, double k, double x, double phi, const PhysicalParams& params,
                         double node_floor) {
  params.validate();
  if (params.mass <= 0.0) throw Error(Errc::invalid_argument, "quantum potential needs m > 0");
  const double cs = std::cos(k * x + phi);
  const double den = nr_denominator(a, cs, x, node_floor);
  const double scale = a * params.hbar * params.hbar * k * k / (2.0 * params.mass);
  return scale * (1.0 + a * cs) * (a + cs) / (den * den);
}

}  // namespace backflow
