#include "dmtherm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "dmtherm/errors.hpp"

namespace dmtherm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 64;

// Unitary U acting on the (p, q) plane that zeroes the Hermitian entry a_pq:
//   U = [[c, s], [-s conj(g), c conj(g)]],  g = a_pq / |a_pq|.
// The phase g first makes the pivot real; what remains is the classic real
// Jacobi rotation with t = tan of the rotation angle.
struct PlaneRotation {
  double c = 1.0;
  double s = 0.0;
  Complex g = 1.0;
};

PlaneRotation make_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  PlaneRotation r;
  r.g = apq / mag;
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  return r;
}

// M <- M U on columns p, q.
template <std::size_t N>
void rotate_columns(SquareMatrix<N>& m, std::size_t p, std::size_t q, const PlaneRotation& r) {
  const Complex gc = std::conj(r.g);
  for (std::size_t k = 0; k < N; ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = r.c * mp - r.s * gc * mq;
    m(k, q) = r.s * mp + r.c * gc * mq;
  }
}

// M <- U^H M on rows p, q.
template <std::size_t N>
void rotate_rows(SquareMatrix<N>& m, std::size_t p, std::size_t q, const PlaneRotation& r) {
  for (std::size_t k = 0; k < N; ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = r.c * mp - r.s * r.g * mq;
    m(q, k) = r.s * mp + r.c * r.g * mq;
  }
}

template <std::size_t N>
double off_diagonal_norm2(const SquareMatrix<N>& a) {
  double off = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) off += std::norm(a(i, j));
  return off;
}

template <std::size_t N>
double frobenius_norm2(const SquareMatrix<N>& a) {
  double f = 0.0;
  for (const Complex& z : a.entries()) f += std::norm(z);
  return f;
}

// Guarded Newton steps on L^3 - a1 L^2 + a2 L - a3; a step is kept only if
// it lowers the residual.
double polish_cubic_root(double r, double a1, double a2, double a3) {
  for (int it = 0; it < 4; ++it) {
    const double f = ((r - a1) * r + a2) * r - a3;
    const double df = (3.0 * r - 2.0 * a1) * r + a2;
    if (f == 0.0 || df == 0.0) break;
    const double next = r - f / df;
    const double fn = ((next - a1) * next + a2) * next - a3;
    if (!(std::abs(fn) < std::abs(f))) break;
    r = next;
  }
  return r;
}

bool all_finite(std::span<const Complex> values) {
  return std::all_of(values.begin(), values.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace

ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

ComplexMatrix2 pauli_x() {
  ComplexMatrix2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix2 pauli_y() {
  ComplexMatrix2 m;
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

ComplexMatrix2 pauli_z() {
  ComplexMatrix2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix4 spin_flip() {
  // antidiag(-1, 1, 1, -1), written out so no rounding enters
  ComplexMatrix4 m;
  m(0, 3) = -1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 0) = -1.0;
  return m;
}

template <std::size_t N>
SquareMatrix<N> SpectralDecomposition<N>::reconstruct() const {
  SquareMatrix<N> m;
  for (std::size_t i = 0; i < N; ++i) m += SquareMatrix<N>::projector(eigenvectors[i]) * Complex(eigenvalues[i]);
  return m;
}

template <std::size_t N>
SpectralDecomposition<N> hermitian_eig(const SquareMatrix<N>& m) {
  if (!all_finite(m.entries())) throw Error(ErrorKind::NonHermitianInput, "matrix has non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > kHermitianTolerance)
    throw Error(ErrorKind::NonHermitianInput, "max |m - m^dagger| = " + std::to_string(herr));

  // Work on the exactly Hermitian part so round-off in the input cannot bias the result.
  SquareMatrix<N> a = (m + m.adjoint()) * Complex(0.5);
  SquareMatrix<N> v = SquareMatrix<N>::identity();

  const double scale = std::max(1.0, std::sqrt(frobenius_norm2(a)));
  const double target = 1e-14 * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) < target * target) break;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) <= kEps * kEps * scale) continue;
        const PlaneRotation r = make_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t col = order[k];
    out.eigenvalues[k] = a(col, col).real();
    for (std::size_t i = 0; i < N; ++i) out.eigenvectors[k][i] = v(i, col);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> singular_values(const SquareMatrix<N>& m) {
  if (!all_finite(m.entries())) throw Error(ErrorKind::InvalidDensityMatrix, "matrix has non-finite entries");
  SquareMatrix<N> w = m;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        // columns already orthogonal to working precision
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta) || std::abs(gamma) == 0.0) continue;
        rotate_columns(w, p, q, make_rotation(alpha, beta, gamma));
        rotated = true;
      }
    }
    if (!rotated) break;
  }

  std::array<double, N> sv{};
  for (std::size_t j = 0; j < N; ++j) {
    double n2 = 0.0;
    for (std::size_t k = 0; k < N; ++k) n2 += std::norm(w(k, j));
    sv[j] = std::sqrt(n2);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::array<double, 4> shifted_boltzmann_factors(const std::array<double, 4>& energies, double t, double& sum) {
  if (!(t > 0.0)) throw Error(ErrorKind::NonPositiveTemperature, "temperature must be positive, got " + std::to_string(t));
  const double emin = *std::min_element(energies.begin(), energies.end());
  std::array<double, 4> f{};
  if (t < kMinTemperature) {
    // ground manifold only; degeneracy judged relative to the energy scale
    double scale = 1.0;
    for (double e : energies) scale = std::max(scale, std::abs(e));
    for (std::size_t i = 0; i < 4; ++i) f[i] = (energies[i] - emin <= 1e-12 * scale) ? 1.0 : 0.0;
  } else {
    for (std::size_t i = 0; i < 4; ++i) f[i] = std::exp(-(energies[i] - emin) / t);
  }
  sum = f[0] + f[1] + f[2] + f[3];
  return f;
}

std::array<double, 4> boltzmann_weights(const std::array<double, 4>& energies, double t) {
  double sum = 0.0;
  auto w = shifted_boltzmann_factors(energies, t, sum);
  for (double& x : w) x /= sum;
  return w;
}

ComplexMatrix4 gibbs_from_spectrum(const SpectralDecomposition4& s, double t) {
  const auto w = boltzmann_weights(s.eigenvalues, t);
  ComplexMatrix4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    if (w[i] != 0.0) rho += ComplexMatrix4::projector(s.eigenvectors[i]) * Complex(w[i]);
  return (rho + rho.adjoint()) * Complex(0.5);
}

template <std::size_t N>
void validate_density_matrix(const SquareMatrix<N>& m, double tol) {
  if (!all_finite(m.entries())) throw Error(ErrorKind::InvalidDensityMatrix, "non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > tol) throw Error(ErrorKind::InvalidDensityMatrix, "not Hermitian: " + std::to_string(herr));
  const double tr_dev = std::abs(m.trace() - 1.0);
  if (tr_dev > tol) throw Error(ErrorKind::InvalidDensityMatrix, "trace deviates from 1 by " + std::to_string(tr_dev));
  const double lmin = hermitian_eig(m).eigenvalues[0];
  if (lmin < -tol) throw Error(ErrorKind::InvalidDensityMatrix, "negative eigenvalue " + std::to_string(lmin));
}

double neg_xlog2x(double x) {
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

double shannon_entropy_bits(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) h += neg_xlog2x(p);
  return h;
}

template <std::size_t N>
double von_neumann_entropy(const SquareMatrix<N>& rho) {
  validate_density_matrix(rho);
  const auto s = hermitian_eig(rho);
  double h = shannon_entropy_bits(s.eigenvalues);
  return std::clamp(h, 0.0, std::log2(static_cast<double>(N)));
}

ComplexMatrix2 partial_trace(const ComplexMatrix4& rho, Subsystem keep) {
  validate_density_matrix(rho);
  ComplexMatrix2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          out(i, j) += rho(2 * i + k, 2 * j + k);
        else
          out(i, j) += rho(2 * k + i, 2 * k + j);
      }
  return out;
}

std::array<double, 3> solve_cubic_real(double a1, double a2, double a3) {
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3))
    throw Error(ErrorKind::ComplexRootsDetected, "non-finite cubic coefficients");

  // L = x + a1/3 gives x^3 + p x + q = 0
  const double shift = a1 / 3.0;
  const double p = a2 - a1 * a1 / 3.0;
  const double q = -2.0 * a1 * a1 * a1 / 27.0 + a1 * a2 / 3.0 - a3;
  double disc = q * q / 4.0 + p * p * p / 27.0;

  // Rounding in p and q alone can push a (near-)multiple real root into a
  // tiny positive discriminant; clusters then split by eps^(1/3), far above
  // any sensible imaginary-part tolerance. Treat such disc as zero.
  const double ep = kEps * (std::abs(a2) + a1 * a1 / 3.0);
  const double eq = kEps * (2.0 * std::abs(a1 * a1 * a1) / 27.0 + std::abs(a1 * a2) / 3.0 + std::abs(a3));
  const double disc_err = 64.0 * (std::abs(q) * eq / 2.0 + p * p * ep / 9.0 + kEps * (q * q / 4.0 + std::abs(p * p * p) / 27.0));
  // The same bound flags a cluster: a complex pair out of the deflation is
  // then rounding noise of size eps^(1/3), not a genuine imaginary part.
  const bool clustered = std::abs(disc) <= disc_err;
  if (disc > 0.0 && disc <= disc_err) disc = 0.0;

  // Only the dominant root is taken from the trigonometric/Cardano formulas;
  // they are accurate to eps * scale, which is useless for roots many orders
  // below the largest. The other two come from the deflated quadratic with
  // product a3/r1 and sum (a2 - a3/r1)/r1, both relatively accurate.
  double r1 = 0.0;
  if (disc <= 0.0 && p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double r = m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift;
      if (std::abs(r) > std::abs(r1)) r1 = r;
    }
  } else {
    const double sq = std::sqrt(std::max(disc, 0.0));
    r1 = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) + shift;
  }
  r1 = polish_cubic_root(r1, a1, a2, a3);
  if (r1 == 0.0) return {0.0, 0.0, 0.0};

  const double prod = a3 / r1;
  const double sum_direct = a1 - r1;
  const double sum = std::abs(sum_direct) < 0.5 * std::abs(r1) ? (a2 - prod) / r1 : sum_direct;
  const double qdisc = sum * sum - 4.0 * prod;

  double r2 = 0.5 * sum;
  double r3 = 0.5 * sum;
  if (qdisc >= 0.0) {
    r2 = 0.5 * (sum + std::copysign(std::sqrt(qdisc), sum));
    r3 = r2 != 0.0 ? prod / r2 : 0.0;
  } else {
    const double imag = 0.5 * std::sqrt(-qdisc);
    const double scale = std::max({1.0, std::abs(a1), std::abs(a2), std::abs(a3)});
    if (!clustered && imag > 1e-9 * scale) throw Error(ErrorKind::ComplexRootsDetected, "imaginary part " + std::to_string(imag));
  }

  std::array<double, 3> roots = {r1, polish_cubic_root(r2, a1, a2, a3), polish_cubic_root(r3, a1, a2, a3)};
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

template struct SpectralDecomposition<2>;
template struct SpectralDecomposition<4>;
template SpectralDecomposition<2> hermitian_eig<2>(const SquareMatrix<2>&);
template SpectralDecomposition<4> hermitian_eig<4>(const SquareMatrix<4>&);
template std::array<double, 2> singular_values<2>(const SquareMatrix<2>&);
template std::array<double, 4> singular_values<4>(const SquareMatrix<4>&);
template void validate_density_matrix<2>(const SquareMatrix<2>&, double);
template void validate_density_matrix<4>(const SquareMatrix<4>&, double);
template double von_neumann_entropy<2>(const SquareMatrix<2>&);
template double von_neumann_entropy<4>(const SquareMatrix<4>&);

}  // namespace dmtherm
