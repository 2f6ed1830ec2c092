#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace dmtherm {

using Complex = std::complex<double>;

template <std::size_t N>
using ComplexVector = std::array<Complex, N>;

// Dense row-major N x N complex matrix. Only N = 2 and N = 4 are used.
template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr SquareMatrix() = default;

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  // |v><v|
  static constexpr SquareMatrix projector(const ComplexVector<N>& v) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  constexpr SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  constexpr SquareMatrix conjugate() const {
    SquareMatrix m;
    for (std::size_t k = 0; k < N * N; ++k) m.data_[k] = std::conj(data_[k]);
    return m;
  }

  constexpr Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  constexpr SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  constexpr SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  constexpr SquareMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend constexpr SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend constexpr SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend constexpr SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend constexpr SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  friend constexpr SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend constexpr ComplexVector<N> operator*(const SquareMatrix& a, const ComplexVector<N>& v) {
    ComplexVector<N> out{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  std::span<const Complex, N * N> entries() const { return data_; }

 private:
  std::array<Complex, N * N> data_{};
};

using ComplexMatrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// max |m - m^dagger| entry
template <std::size_t N>
double hermiticity_error(const SquareMatrix<N>& m) {
  return max_abs_diff(m, m.adjoint());
}

ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b);

ComplexMatrix2 pauli_x();
ComplexMatrix2 pauli_y();
ComplexMatrix2 pauli_z();

// sigma_y (x) sigma_y, the two-qubit spin flip
ComplexMatrix4 spin_flip();

template <std::size_t N>
struct SpectralDecomposition {
  std::array<double, N> eigenvalues{};           // ascending
  std::array<ComplexVector<N>, N> eigenvectors{};  // eigenvectors[i] pairs with eigenvalues[i]

  SquareMatrix<N> reconstruct() const;
};

using SpectralDecomposition4 = SpectralDecomposition<4>;

// Tolerance on max |m - m^dagger| accepted by hermitian_eig.
inline constexpr double kHermitianTolerance = 1e-10;
// Tolerance used when validating density matrices.
inline constexpr double kDensityTolerance = 1e-9;
// Below this temperature the Gibbs state is the normalized ground-space projector.
inline constexpr double kMinTemperature = 1e-9;

// Cyclic complex Jacobi diagonalization. Eigenvalues ascending.
template <std::size_t N>
SpectralDecomposition<N> hermitian_eig(const SquareMatrix<N>& m);

// Singular values, descending, by one-sided (Hestenes) Jacobi on the columns.
template <std::size_t N>
std::array<double, N> singular_values(const SquareMatrix<N>& m);

// Normalized Boltzmann weights exp(-(E_i - E_min)/t) / sum. For t below
// kMinTemperature the ground manifold is weighted uniformly.
std::array<double, 4> boltzmann_weights(const std::array<double, 4>& energies, double t);

// Same weights before normalization; returns the normalizer through `sum`.
std::array<double, 4> shifted_boltzmann_factors(const std::array<double, 4>& energies, double t, double& sum);

ComplexMatrix4 gibbs_from_spectrum(const SpectralDecomposition4& s, double t);

// Throws InvalidDensityMatrix unless m is Hermitian, unit-trace and PSD within tol.
template <std::size_t N>
void validate_density_matrix(const SquareMatrix<N>& m, double tol = kDensityTolerance);

// -x log2 x with 0 log 0 = 0; negative round-off below 1e-15 maps to 0.
double neg_xlog2x(double x);

double shannon_entropy_bits(std::span<const double> probabilities);

template <std::size_t N>
double von_neumann_entropy(const SquareMatrix<N>& rho);

enum class Subsystem { A, B };

// Reduced state of the kept qubit; qubit A is the left tensor factor.
ComplexMatrix2 partial_trace(const ComplexMatrix4& rho, Subsystem keep);

// Roots of L^3 - a1 L^2 + a2 L - a3 = 0, descending. Throws
// ComplexRootsDetected when an imaginary part exceeds 1e-9.
std::array<double, 3> solve_cubic_real(double a1, double a2, double a3);

}  // namespace dmtherm
