#pragma once

// A finite fermionic Fock space over M momentum modes near p = 0. Each mode
// has a particle slot a_p and an antiparticle slot b_p; slots are ordered
// [a_1 .. a_M, b_1 .. b_M] and slot j is bit j of the basis index, so the
// vacuum is index 0.
//
// The current operator is built from the field Psi_p = a_p u + b_p^dagger v
// as sum_p Psi_p^dagger alpha_z Psi_p, keeping one term per mode, times a
// positive constant K. Subtracting its vacuum expectation leaves an operator
// proportional to the charge N = sum_p (a_p^dagger a_p - b_p^dagger b_p).

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "backflow/spinor_algebra.hpp"

namespace backflow {

using FockOperator = Eigen::SparseMatrix<Complex>;

inline constexpr int kMaxFockModes = 6;

enum class Spin { up, down };  // +1/2, -1/2
enum class Species { particle, antiparticle };

[[nodiscard]] constexpr double spin_value(Spin s) noexcept { return s == Spin::up ? 0.5 : -0.5; }

class FockLattice {
 public:
  /// Throws Error(mode_count_out_of_range) unless 1 <= modes <= kMaxFockModes.
  explicit FockLattice(int modes, double cutoff = 0.0);

  [[nodiscard]] int modes() const noexcept { return modes_; }
  [[nodiscard]] int slots() const noexcept { return 2 * modes_; }
  [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << slots(); }
  /// Momentum cutoff label; bookkeeping only.
  [[nodiscard]] double cutoff() const noexcept { return cutoff_; }
  /// Throws Error(index_out_of_range) for mode outside [0, modes).
  [[nodiscard]] int slot(Species species, int mode) const;

 private:
  int modes_;
  double cutoff_;
};

[[nodiscard]] FockLattice build_lattice(int modes, double cutoff = 0.0);

/// Jordan-Wigner annihilator (or creator when `dagger`) for one slot.
[[nodiscard]] FockOperator ladder(const FockLattice& lattice, Species species, int mode, bool dagger);

[[nodiscard]] FockOperator identity(const FockLattice& lattice);

struct RestSpinors {
  Spinor4 u_up;    // u(0, +1/2)
  Spinor4 u_down;  // u(0, -1/2)
  Spinor4 v_up;    // v(0, +1/2)
  Spinor4 v_down;  // v(0, -1/2)

  [[nodiscard]] const Spinor4& u(Spin s) const noexcept { return s == Spin::up ? u_up : u_down; }
  [[nodiscard]] const Spinor4& v(Spin s) const noexcept { return s == Spin::up ? v_up : v_down; }
};

[[nodiscard]] RestSpinors rest_spinors();

/// Scalars multiplying each operator pair in Psi^dagger alpha_z Psi.
struct CurrentCoefficients {
  Complex adag_a;     // u^dagger alpha_z u
  Complex adag_bdag;  // u^dagger alpha_z v
  Complex b_a;        // v^dagger alpha_z u
  Complex b_bdag;     // v^dagger alpha_z v
};

[[nodiscard]] CurrentCoefficients current_coefficients(Spin spin);

/// K sum_p [c_aa a^dag a + c_ab a^dag b^dag + c_ba b a + c_bb b b^dag].
/// Throws Error(invalid_argument) unless K is finite and positive.
[[nodiscard]] FockOperator current_operator_z(const FockLattice& lattice, Spin spin, double K = 1.0);

[[nodiscard]] FockOperator charge_operator(const FockLattice& lattice);

[[nodiscard]] Complex vacuum_expectation(const FockOperator& op);

/// j_z minus its vacuum expectation. Throws Error(proportionality_broken) if
/// the result is not kappa K N, kappa = u^dagger alpha_z u.
[[nodiscard]] FockOperator physical_current(const FockLattice& lattice, Spin spin, double K = 1.0);

[[nodiscard]] double max_entry_deviation(const FockOperator& a, const FockOperator& b);

/// Sorted eigenvalues of a Hermitian operator.
[[nodiscard]] std::vector<double> spectrum(const FockOperator& op);

struct EigenvalueCount {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

/// Groups sorted eigenvalues that agree to `tol`.
[[nodiscard]] std::vector<EigenvalueCount> count_eigenvalues(const std::vector<double>& sorted,
                                                             double tol = 1e-9);

struct ChargeIdentityReport {
  int modes = 0;
  Spin spin = Spin::up;
  double K = 1.0;
  bool identity_holds = false;          // physical_current == K N
  double max_entry_deviation = 0.0;     // max |physical_current - K N|
  double proportionality = 0.0;         // kappa K with physical_current == kappa K N
  double vacuum_current = 0.0;          // <0| j_z |0>
  CurrentCoefficients coefficients{};
  std::vector<EigenvalueCount> spectrum_charge;
  std::vector<EigenvalueCount> spectrum_physical_current;
};

[[nodiscard]] ChargeIdentityReport verify_charge_identity(int modes, Spin spin, double K = 1.0);

}  // namespace backflow
