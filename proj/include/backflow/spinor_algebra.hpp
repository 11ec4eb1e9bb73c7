#pragma once

// Fixed-size complex spinors and square matrices. Everything in this library
// lives in at most four dimensions, so shapes are template parameters and a
// mismatched product does not compile.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace backflow {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr Complex kI{0.0, 1.0};

[[nodiscard]] inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <std::size_t N>
class Spinor {
 public:
  constexpr Spinor() = default;
  constexpr Spinor(std::initializer_list<Complex> init) {
    std::size_t i = 0;
    for (auto it = init.begin(); it != init.end() && i < N; ++it) c_[i++] = *it;
  }
  explicit constexpr Spinor(const std::array<Complex, N>& c) : c_(c) {}

  [[nodiscard]] static constexpr std::size_t size() noexcept { return N; }

  constexpr Complex& operator[](std::size_t i) { return c_[i]; }
  constexpr const Complex& operator[](std::size_t i) const { return c_[i]; }

  [[nodiscard]] const std::array<Complex, N>& components() const noexcept { return c_; }

  Spinor& operator+=(const Spinor& o) {
    for (std::size_t i = 0; i < N; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (std::size_t i = 0; i < N; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Spinor& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator*(Complex s, Spinor a) { return a *= s; }
  friend Spinor operator*(Spinor a, Complex s) { return a *= s; }
  friend bool operator==(const Spinor&, const Spinor&) = default;

  /// Sum of squared moduli.
  [[nodiscard]] double norm2() const noexcept {
    double acc = 0.0;
    for (const auto& x : c_) acc += std::norm(x);
    return acc;
  }
  [[nodiscard]] double norm() const noexcept { return std::sqrt(norm2()); }

  [[nodiscard]] bool all_finite() const noexcept {
    for (const auto& x : c_)
      if (!is_finite(x)) return false;
    return true;
  }

 private:
  std::array<Complex, N> c_{};
};

using Spinor2 = Spinor<2>;
using Spinor4 = Spinor<4>;

/// Row-major N x N complex matrix.
template <std::size_t N>
class SquareMatrix {
 public:
  constexpr SquareMatrix() = default;
  constexpr SquareMatrix(std::initializer_list<Complex> row_major) {
    std::size_t i = 0;
    for (auto it = row_major.begin(); it != row_major.end() && i < N * N; ++it) e_[i++] = *it;
  }

  [[nodiscard]] static constexpr std::size_t rows() noexcept { return N; }

  [[nodiscard]] static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  [[nodiscard]] static SquareMatrix zero() { return {}; }
  [[nodiscard]] static SquareMatrix diagonal(const std::array<Complex, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] += o.e_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) e_[i] -= o.e_[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend Spinor<N> operator*(const SquareMatrix& m, const Spinor<N>& s) {
    Spinor<N> out;
    for (std::size_t r = 0; r < N; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < N; ++c) acc += m(r, c) * s[c];
      out[r] = acc;
    }
    return out;
  }

  [[nodiscard]] SquareMatrix adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  /// Largest entrywise modulus.
  [[nodiscard]] double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& x : e_) m = std::max(m, std::abs(x));
    return m;
  }

  [[nodiscard]] bool is_hermitian(double tol = 0.0) const {
    return (*this - adjoint()).max_abs() <= tol;
  }

 private:
  std::array<Complex, N * N> e_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

template <std::size_t N>
[[nodiscard]] Spinor<N> matvec(const SquareMatrix<N>& m, const Spinor<N>& s) {
  return m * s;
}

/// Conjugate-linear in the first argument.
template <std::size_t N>
[[nodiscard]] Complex inner(const Spinor<N>& a, const Spinor<N>& b) {
  Complex acc{};
  for (std::size_t i = 0; i < N; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

template <std::size_t N>
[[nodiscard]] SquareMatrix<N> dagger(const SquareMatrix<N>& m) {
  return m.adjoint();
}

template <std::size_t N>
[[nodiscard]] SquareMatrix<N> anticommutator(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b + b * a;
}

template <std::size_t N>
[[nodiscard]] SquareMatrix<N> commutator(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  return a * b - b * a;
}

/// Expectation value s^dagger A s.
template <std::size_t N>
[[nodiscard]] Complex expectation(const SquareMatrix<N>& a, const Spinor<N>& s) {
  return inner(s, a * s);
}

[[nodiscard]] inline Spinor4 stack(const Spinor2& upper, const Spinor2& lower) {
  return Spinor4{upper[0], upper[1], lower[0], lower[1]};
}
[[nodiscard]] inline Spinor2 upper(const Spinor4& s) { return Spinor2{s[0], s[1]}; }
[[nodiscard]] inline Spinor2 lower(const Spinor4& s) { return Spinor2{s[2], s[3]}; }

/// Assemble [[tl, tr], [bl, br]] from 2x2 blocks.
[[nodiscard]] inline Matrix4 block(const Matrix2& tl, const Matrix2& tr, const Matrix2& bl,
                                   const Matrix2& br) {
  Matrix4 m;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      m(r, c) = tl(r, c);
      m(r, c + 2) = tr(r, c);
      m(r + 2, c) = bl(r, c);
      m(r + 2, c + 2) = br(r, c);
    }
  return m;
}

struct PauliMatrices {
  Matrix2 x;
  Matrix2 y;
  Matrix2 z;

  [[nodiscard]] const Matrix2& operator[](std::size_t i) const {
    return i == 0 ? x : (i == 1 ? y : z);
  }
};

[[nodiscard]] inline PauliMatrices pauli_matrices() {
  return PauliMatrices{
      Matrix2{0.0, 1.0, 1.0, 0.0},
      Matrix2{0.0, -kI, kI, 0.0},
      Matrix2{1.0, 0.0, 0.0, -1.0},
  };
}

/// Pauli-Dirac representation: alpha_i = offdiag(sigma_i), beta = diag(1,1,-1,-1),
/// Sigma_i = diag(sigma_i, sigma_i).
struct DiracMatrices {
  std::array<Matrix4, 3> alpha;
  Matrix4 beta;
  std::array<Matrix4, 3> spin;
};

[[nodiscard]] inline DiracMatrices dirac_matrices() {
  const auto sigma = pauli_matrices();
  const Matrix2 one = Matrix2::identity();
  const Matrix2 nil = Matrix2::zero();
  DiracMatrices d;
  for (std::size_t i = 0; i < 3; ++i) {
    d.alpha[i] = block(nil, sigma[i], sigma[i], nil);
    d.spin[i] = block(sigma[i], nil, nil, sigma[i]);
  }
  d.beta = block(one, nil, nil, -1.0 * one);
  return d;
}

}  // namespace backflow
