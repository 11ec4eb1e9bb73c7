#include "backflow/fock_toy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "backflow/error.hpp"

namespace backflow {

FockLattice::FockLattice(int modes, double cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || modes > kMaxFockModes)
    throw Error(Errc::mode_count_out_of_range,
                "mode count " + std::to_string(modes) + " is not in 1.." + std::to_string(kMaxFockModes));
}

int FockLattice::slot(Species species, int mode) const {
  if (mode < 0 || mode >= modes_)
    throw Error(Errc::index_out_of_range,
                "mode index " + std::to_string(mode) + " outside [0, " + std::to_string(modes_) + ")");
  return species == Species::particle ? mode : modes_ + mode;
}

FockLattice build_lattice(int modes, double cutoff) { return FockLattice(modes, cutoff); }

FockOperator ladder(const FockLattice& lattice, Species species, int mode, bool dagger) {
  const int j = lattice.slot(species, mode);
  const std::uint32_t bit = std::uint32_t{1} << j;
  const std::uint32_t below = bit - 1;
  const auto dim = static_cast<std::uint32_t>(lattice.dim());

  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(dim / 2);
  for (std::uint32_t n = 0; n < dim; ++n) {
    const bool occupied = (n & bit) != 0;
    if (occupied == dagger) continue;  // creator needs an empty slot, annihilator a full one
    const double sign = (std::popcount(n & below) % 2 == 0) ? 1.0 : -1.0;
    entries.emplace_back(static_cast<int>(n ^ bit), static_cast<int>(n), sign);
  }
  FockOperator op(dim, dim);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

FockOperator identity(const FockLattice& lattice) {
  const auto dim = static_cast<Eigen::Index>(lattice.dim());
  FockOperator op(dim, dim);
  op.setIdentity();
  return op;
}

RestSpinors rest_spinors() {
  const double s = 1.0 / std::sqrt(2.0);
  return RestSpinors{
      Spinor4{s, 0.0, s, 0.0},
      Spinor4{0.0, s, 0.0, s},
      Spinor4{0.0, s, 0.0, -s},
      Spinor4{-s, 0.0, s, 0.0},
  };
}

CurrentCoefficients current_coefficients(Spin spin) {
  const Matrix4 gamma_z = dirac_matrices().alpha[2];
  const RestSpinors rs = rest_spinors();
  const Spinor4& u = rs.u(spin);
  const Spinor4& v = rs.v(spin);
  return CurrentCoefficients{
      inner(u, gamma_z * u),
      inner(u, gamma_z * v),
      inner(v, gamma_z * u),
      inner(v, gamma_z * v),
  };
}

FockOperator current_operator_z(const FockLattice& lattice, Spin spin, double K) {
  if (!std::isfinite(K) || K <= 0.0) throw Error(Errc::invalid_argument, "K must be finite and positive");
  const CurrentCoefficients coef = current_coefficients(spin);
  const auto dim = static_cast<Eigen::Index>(lattice.dim());
  FockOperator jz(dim, dim);
  for (int p = 0; p < lattice.modes(); ++p) {
    const FockOperator a = ladder(lattice, Species::particle, p, false);
    const FockOperator a_dag = ladder(lattice, Species::particle, p, true);
    const FockOperator b = ladder(lattice, Species::antiparticle, p, false);
    const FockOperator b_dag = ladder(lattice, Species::antiparticle, p, true);
    FockOperator term = coef.adag_a * (a_dag * a);
    term += coef.adag_bdag * (a_dag * b_dag);
    term += coef.b_a * (b * a);
    term += coef.b_bdag * (b * b_dag);
    jz += term;
  }
  jz *= Complex{K};
  jz.prune(Complex{0.0});
  return jz;
}

FockOperator charge_operator(const FockLattice& lattice) {
  const auto dim = static_cast<Eigen::Index>(lattice.dim());
  FockOperator n(dim, dim);
  for (int p = 0; p < lattice.modes(); ++p) {
    const FockOperator a = ladder(lattice, Species::particle, p, false);
    const FockOperator b = ladder(lattice, Species::antiparticle, p, false);
    n += FockOperator(a.adjoint()) * a;
    n -= FockOperator(b.adjoint()) * b;
  }
  n.prune(Complex{0.0});
  return n;
}

Complex vacuum_expectation(const FockOperator& op) { return op.coeff(0, 0); }

double max_entry_deviation(const FockOperator& a, const FockOperator& b) {
  const FockOperator diff = a - b;
  double dev = 0.0;
  for (int col = 0; col < diff.outerSize(); ++col)
    for (FockOperator::InnerIterator it(diff, col); it; ++it) dev = std::max(dev, std::abs(it.value()));
  return dev;
}

namespace {

constexpr double kProportionalityTol = 1e-12;

}  // namespace

FockOperator physical_current(const FockLattice& lattice, Spin spin, double K) {
  FockOperator jz = current_operator_z(lattice, spin, K);
  const Complex vac = vacuum_expectation(jz);
  FockOperator out = jz - vac * identity(lattice);
  out.prune(Complex{0.0});

  const double kappa = current_coefficients(spin).adag_a.real();
  const FockOperator expected = Complex{kappa * K} * charge_operator(lattice);
  const double dev = max_entry_deviation(out, expected);
  if (!(dev < kProportionalityTol * std::max(1.0, K)))
    throw Error(Errc::proportionality_broken,
                "vacuum-subtracted current deviates from " + std::to_string(kappa * K) +
                    " N by " + std::to_string(dev));
  return out;
}

std::vector<double> spectrum(const FockOperator& op) {
  bool diagonal = true;
  for (int col = 0; col < op.outerSize() && diagonal; ++col)
    for (FockOperator::InnerIterator it(op, col); it; ++it)
      if (it.row() != it.col() && it.value() != Complex{}) {
        diagonal = false;
        break;
      }

  std::vector<double> eig;
  if (diagonal) {
    eig.resize(static_cast<std::size_t>(op.rows()));
    for (Eigen::Index i = 0; i < op.rows(); ++i) eig[static_cast<std::size_t>(i)] = op.coeff(i, i).real();
  } else {
    const Eigen::MatrixXcd dense(op);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense, Eigen::EigenvaluesOnly);
    const auto& vals = solver.eigenvalues();
    eig.assign(vals.data(), vals.data() + vals.size());
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<EigenvalueCount> count_eigenvalues(const std::vector<double>& sorted, double tol) {
  std::vector<EigenvalueCount> out;
  for (double e : sorted) {
    if (!out.empty() && std::abs(e - out.back().value) <= tol)
      ++out.back().multiplicity;
    else
      out.push_back({e, 1});
  }
  // Snap near-integers so reports print cleanly.
  for (auto& c : out)
    if (std::abs(c.value - std::round(c.value)) <= tol) c.value = std::round(c.value);
  return out;
}

ChargeIdentityReport verify_charge_identity(int modes, Spin spin, double K) {
  const FockLattice lattice(modes);
  ChargeIdentityReport r;
  r.modes = modes;
  r.spin = spin;
  r.K = K;
  r.coefficients = current_coefficients(spin);
  r.vacuum_current = vacuum_expectation(current_operator_z(lattice, spin, K)).real();

  const FockOperator physical = physical_current(lattice, spin, K);
  const FockOperator charge = charge_operator(lattice);
  r.proportionality = r.coefficients.adag_a.real() * K;
  r.max_entry_deviation = max_entry_deviation(physical, Complex{K} * charge);
  r.identity_holds = r.max_entry_deviation < kProportionalityTol * std::max(1.0, K);

  r.spectrum_charge = count_eigenvalues(spectrum(charge));
  FockOperator scaled = physical / Complex{K};
  r.spectrum_physical_current = count_eigenvalues(spectrum(scaled));
  return r;
}

}  // namespace backflow
